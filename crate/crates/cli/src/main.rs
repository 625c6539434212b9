mod dot;

use std::fmt::Write as _;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use antisat::{
    bounds_report, bundle_of_full_chains, full_chain_cover, gap_report, is_k_saturated,
    level_profile, max_antichain, min_saturated_size, parse_family, render_family,
    six_saturated_family, Family, GroundSize, SearchConfig, SubsetMask,
};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "asat", version, about = "Antichain saturation in the Boolean lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a family is k-antichain saturated
    Check {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
        /// Exit with status 1 unless the family is saturated
        #[arg(long)]
        assert_saturated: bool,
    },
    /// Print a known saturated construction as a family file
    Gen {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Largest antichain in a family
    Maxac {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Cover a family by full chains lying inside it
    Cover {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        chains: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for the smallest saturated family
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        /// Stop after this many search nodes
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long)]
        json: bool,
    },
    /// Number of members at each level
    Profile {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Table of bounds over a range of ground sizes
    Table {
        #[arg(long)]
        k: usize,
        /// Inclusive range such as 5..8
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Hasse diagram of a family in DOT
    Dot {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Bundle,
    Six,
    Five,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u32 = a.parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn read_family(path: &Path) -> Result<Family> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_family(&text).with_context(|| format!("parsing {}", path.display()))
}

fn join_sets(sets: impl IntoIterator<Item = SubsetMask>) -> String {
    sets.into_iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn workers_from_env() -> Option<usize> {
    let raw = std::env::var("ASAT_THREADS").ok()?;
    match raw.trim().parse::<usize>() {
        Ok(w) if w > 0 => Some(w),
        _ => usage_error(
            ErrorKind::InvalidValue,
            format!("ASAT_THREADS must be a positive integer, got {raw:?}"),
        ),
    }
}

/// Output text and whether the command succeeded.
fn run(command: Command) -> Result<(String, bool)> {
    let mut out = String::new();
    match command {
        Command::Check { file, k, json, assert_saturated } => {
            let family = read_family(&file)?;
            let report = is_k_saturated(&family, k)?;
            if json {
                out = to_json(&report);
            } else {
                writeln!(out, "k: {}", report.k)?;
                writeln!(out, "free: {}", report.free)?;
                writeln!(out, "saturated: {}", report.saturated)?;
                if let Some(w) = &report.witness_antichain {
                    writeln!(out, "antichain: {}", join_sets(w.iter().copied()))?;
                } else if !report.addable.is_empty() {
                    writeln!(out, "addable: {}", join_sets(report.addable.iter().copied()))?;
                }
            }
            if assert_saturated && !report.saturated {
                eprintln!("error: family is not {k}-antichain saturated");
                return Ok((out, false));
            }
        }
        Command::Gen { construction, n, k } => {
            let ground = GroundSize::new(n)?;
            let family = match construction {
                Construction::Bundle => {
                    let Some(k) = k else {
                        usage_error(ErrorKind::MissingRequiredArgument, "--k is required for bundle")
                    };
                    bundle_of_full_chains(ground, k)?
                }
                Construction::Five => {
                    if k.is_some_and(|k| k != 5) {
                        usage_error(ErrorKind::ArgumentConflict, "construction five has k = 5");
                    }
                    bundle_of_full_chains(ground, 5)?
                }
                Construction::Six => {
                    if k.is_some_and(|k| k != 6) {
                        usage_error(ErrorKind::ArgumentConflict, "construction six has k = 6");
                    }
                    six_saturated_family(ground)?
                }
            };
            out = render_family(&family);
        }
        Command::Maxac { file, json } => {
            let family = read_family(&file)?;
            let witness = max_antichain(&family);
            if json {
                out = to_json(&json!({ "size": witness.len(), "witness": witness }));
            } else {
                writeln!(out, "size: {}", witness.len())?;
                writeln!(out, "witness: {}", join_sets(witness))?;
            }
        }
        Command::Cover { file, chains, json } => {
            let family = read_family(&file)?;
            let cover = full_chain_cover(&family, chains);
            if json {
                out = to_json(&cover);
            } else {
                match &cover {
                    Some(cover) => {
                        for chain in cover.chains() {
                            writeln!(out, "{}", join_sets(chain.sets()))?;
                        }
                    }
                    None => writeln!(out, "no cover by {chains} full chains")?,
                }
            }
        }
        Command::Search { n, k, budget, no_symmetry, json } => {
            let mut cfg = SearchConfig::new(n, k).with_symmetry(!no_symmetry);
            if let Some(b) = budget {
                cfg = cfg.with_budget(b);
            }
            if let Some(w) = workers_from_env() {
                cfg = cfg.with_workers(w);
            }
            let result = min_saturated_size(&cfg)?;
            if json {
                out = to_json(&result);
            } else {
                let size = result.min_size.map_or("none".to_string(), |m| m.to_string());
                writeln!(out, "n: {} k: {}", result.n, result.k)?;
                writeln!(out, "min_size: {size}")?;
                writeln!(out, "exhaustive: {}", result.exhaustive)?;
                writeln!(out, "nodes_explored: {}", result.nodes_explored)?;
                writeln!(out, "witnesses: {}", result.witnesses.len())?;
                for w in &result.witnesses {
                    writeln!(out)?;
                    out.push_str(&render_family(w));
                }
            }
        }
        Command::Profile { file, json } => {
            let family = read_family(&file)?;
            let profile = level_profile(&family);
            if json {
                out = to_json(&json!({
                    "n": family.ground().get(),
                    "size": family.len(),
                    "levels": profile,
                }));
            } else {
                let counts: Vec<String> = profile.counts().iter().map(|c| c.to_string()).collect();
                writeln!(out, "size: {}", family.len())?;
                writeln!(out, "levels: {}", counts.join(" "))?;
            }
        }
        Command::Table { k, n, json } => {
            let rows = n
                .clone()
                .map(|n| bounds_report(GroundSize::new(n)?, k))
                .collect::<antisat::Result<Vec<_>>>()?;
            if json {
                out = to_json(&rows);
            } else {
                let gaps = gap_report(n, k).ok();
                writeln!(out, "n\tk\tlower_3n\tlower_msw\tupper_bundle\texact\tgap")?;
                let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
                for (i, r) in rows.iter().enumerate() {
                    let gap = gaps.as_ref().map(|g| g[i].gap.to_string());
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        r.n,
                        r.k,
                        opt(r.lower_3n.map(|v| v.to_string())),
                        opt(r.lower_msw.map(|v| format!("{v:.3}"))),
                        r.upper_bundle,
                        opt(r.exact.map(|v| v.to_string())),
                        opt(gap),
                    )?;
                }
            }
        }
        Command::Dot { file } => {
            out = dot::emit_dot(&read_family(&file)?);
        }
    }
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
