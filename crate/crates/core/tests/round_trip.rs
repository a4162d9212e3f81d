use borda_range::oracle::{enumerate_range, EnumerationMode};
use borda_range::{classify, plan_for, realize, LevelPattern, Verdict};

/// Every sequence of 2s and 4s summing to at most `max_total`.
fn two_four_sequences(max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(seq) = stack.pop() {
        let total: usize = seq.iter().sum();
        for s in [2, 4] {
            if total + s <= max_total {
                let mut next = seq.clone();
                next.push(s);
                stack.push(next);
            }
        }
        if !seq.is_empty() {
            out.push(seq);
        }
    }
    out
}

#[test]
fn every_even_twos_pattern_up_to_28_round_trips() {
    let mut count = 0;
    for sizes in two_four_sequences(28) {
        let twos = sizes.iter().filter(|&&s| s == 2).count();
        if twos < 2 || twos % 2 == 1 {
            continue;
        }
        let p = LevelPattern::new(sizes).unwrap();
        let u = realize(&p, 3).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert_eq!(u.pattern(), p);
        count += 1;
    }
    assert!(count > 900, "{count}");
}

#[test]
fn odd_twos_patterns_are_refused() {
    for sizes in two_four_sequences(16) {
        let twos = sizes.iter().filter(|&&s| s == 2).count();
        if twos % 2 == 0 {
            continue;
        }
        let p = LevelPattern::new(sizes).unwrap();
        assert_eq!(classify(&p).unwrap().verdict, Verdict::NotInRange, "{p}");
        assert!(realize(&p, 3).is_err(), "{p}");
    }
}

#[test]
fn level_sets_agree_across_n() {
    for s in ["2,4,4,2", "4,2,2,4", "4,4,2,4,2,4,4,4", "2,2,2,2,4"] {
        let p: LevelPattern = s.parse().unwrap();
        let base = realize(&p, 3).unwrap();
        for n in [5, 7] {
            let u = realize(&p, n).unwrap();
            assert_eq!(
                u.weak_order().levels(),
                base.weak_order().levels(),
                "{p} n={n}"
            );
            let shift = (u.m() as u64 + 1) * (n as u64 - 3) / 2;
            for (a, b) in base.scores().as_slice().iter().zip(u.scores().as_slice()) {
                assert_eq!(a + shift, *b);
            }
        }
    }
}

#[test]
fn realized_patterns_appear_in_the_exhaustive_atlas() {
    // m = 6 is the largest size enumerated exhaustively at n = 3
    let atlas = enumerate_range(6, 3, EnumerationMode::Exhaustive).unwrap();
    for p in LevelPattern::compositions(6) {
        if let Ok(u) = realize(&p, 3) {
            assert_eq!(u.pattern(), p);
            assert!(atlas.contains(&p), "{p}");
        }
        if plan_for(&p).is_ok() {
            assert!(atlas.contains(&p), "{p}");
        }
    }
}
