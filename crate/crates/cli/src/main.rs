use borda_range::oracle::{
    cross_check, enumerate_range, search_witness, EnumerationMode, Provenance, SearchConfig,
    WitnessCache, CACHE_ENV_VAR,
};
use borda_range::{classify, realize_with, Error, LevelPattern, Profile, Verdict};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Realizability of weak-order level patterns under Borda's rule.
#[derive(Parser)]
#[command(name = "borda-range", version)]
struct Cli {
    /// Witness cache file.
    #[arg(long, global = true, env = CACHE_ENV_VAR)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a level pattern such as 2,4,4,2.
    Classify { pattern: LevelPattern },
    /// Build a verified witness profile.
    Construct {
        pattern: LevelPattern,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a profile JSON file (`-` reads stdin).
    Verify {
        file: PathBuf,
        #[arg(long)]
        expect: Option<LevelPattern>,
    },
    /// List every pattern reached at fixed m and n.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Random profiles drawn in sampled mode.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the atlas as CSV (`.csv`) or JSON (anything else).
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Compare the classifier with exhaustive enumeration.
    CrossCheck {
        #[arg(long)]
        max_m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Search for a witness of one pattern.
    Search {
        pattern: LevelPattern,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Number of local-search restarts.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotInRange(_) | Error::UnsupportedConstruction { .. } | Error::NotFound { .. } => {
            NEGATIVE
        }
        Error::Construction { .. } => INTERNAL,
        _ => USAGE,
    }
}

fn open_cache(path: Option<&Path>) -> borda_range::Result<WitnessCache> {
    match path {
        Some(p) => WitnessCache::open(p),
        None => Ok(WitnessCache::in_memory()),
    }
}

fn run(cli: Cli) -> borda_range::Result<u8> {
    match cli.command {
        Command::Classify { pattern } => {
            let c = classify(&pattern)?;
            let n = match c.verdict {
                Verdict::InRange => "all odd ≥ 3",
                Verdict::NotInRange => "none",
                Verdict::Unknown => "unknown",
            };
            println!("{} rule={} n={n}", c.verdict, c.rule);
            Ok(if c.verdict == Verdict::InRange {
                0
            } else {
                NEGATIVE
            })
        }
        Command::Construct {
            pattern,
            n,
            format,
            out,
        } => {
            let cache = open_cache(cli.cache.as_deref())?;
            let u = match realize_with(&pattern, n, &cache) {
                Ok(u) => u,
                Err(Error::NotInRange(_)) => {
                    eprintln!("NOT_IN_RANGE (Theorem 3)");
                    return Ok(NEGATIVE);
                }
                Err(e) => return Err(e),
            };
            let json = u.to_json();
            let reread = Profile::from_json(&json)?;
            if reread.pattern() != pattern || reread.n() != n {
                return Err(Error::Construction {
                    target: pattern,
                    produced: reread.pattern(),
                });
            }
            let text = match format {
                Format::Json => format!("{json}\n"),
                Format::Text => describe(&u),
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Verify { file, expect } => {
            let text = if file.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(&file)?
            };
            let u = Profile::from_json(&text)?;
            print!("{}", describe_scores(&u));
            match expect {
                Some(p) if p != u.pattern() => {
                    println!("MISMATCH expected {p}");
                    Ok(NEGATIVE)
                }
                Some(_) => {
                    println!("OK");
                    Ok(0)
                }
                None => Ok(0),
            }
        }
        Command::Enumerate {
            m,
            n,
            mode,
            trials,
            seed,
            export,
        } => {
            let mode = match mode {
                Mode::Exhaustive => EnumerationMode::Exhaustive,
                Mode::Sampled => EnumerationMode::Sampled { trials, seed },
            };
            let atlas = enumerate_range(m, n, mode)?;
            println!(
                "m={m} n={n} {}: {} patterns",
                if atlas.is_exhaustive() {
                    "exhaustive"
                } else {
                    "sampled"
                },
                atlas.len()
            );
            for (p, e) in &atlas.entries {
                println!("{p}\t{}", e.count);
            }
            if let Some(path) = export {
                let file = std::fs::File::create(&path)?;
                if path
                    .extension()
                    .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
                {
                    atlas.write_csv(file)?;
                } else {
                    let mut file = file;
                    writeln!(file, "{}", atlas.to_json())?;
                }
            }
            Ok(0)
        }
        Command::CrossCheck { max_m, n } => {
            let report = cross_check(max_m, n)?;
            print!("{report}");
            Ok(if report.is_consistent() { 0 } else { NEGATIVE })
        }
        Command::Search {
            pattern,
            n,
            budget,
            seed,
        } => {
            let cache = open_cache(cli.cache.as_deref())?;
            if let Some(hit) = cache.get(&pattern, n) {
                println!("{}", hit.profile.to_json());
                return Ok(0);
            }
            let mut config = SearchConfig {
                seed,
                ..SearchConfig::default()
            };
            if let Some(b) = budget {
                config.restarts = b;
            }
            match search_witness(&pattern, n, &config) {
                Ok(u) => {
                    cache.insert(&pattern, n, u.clone(), Provenance::Searched)?;
                    println!("{}", u.to_json());
                    Ok(0)
                }
                Err(Error::NotFound { exhaustive, .. }) => {
                    if exhaustive {
                        eprintln!("NOT_FOUND (exhaustive: no witness exists at n={n})");
                    } else {
                        eprintln!("NOT_FOUND (budget exhausted)");
                    }
                    Ok(NEGATIVE)
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn describe(u: &Profile) -> String {
    let mut s = format!("m={} n={}\n", u.m(), u.n());
    for (i, r) in u.rankings().iter().enumerate() {
        s.push_str(&format!("voter {}: {r}\n", i + 1));
    }
    s.push_str(&describe_scores(u));
    s
}

fn describe_scores(u: &Profile) -> String {
    let scores: Vec<String> = u.scores().as_slice().iter().map(u64::to_string).collect();
    let w = u.weak_order();
    let mut s = format!("scores ({})\npattern {}\n", scores.join(","), u.pattern());
    for (level, score) in w.levels().iter().zip(w.level_scores()) {
        let names: Vec<String> = level.iter().map(usize::to_string).collect();
        s.push_str(&format!("  {score}: {{{}}}\n", names.join(",")));
    }
    s
}
