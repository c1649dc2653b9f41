use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use klein_jacobian::torus::{canonical_real_part, required_lattice_bound, RealPartMatrix, ScanParams};
use klein_jacobian::Parity;
use serde_json::json;

mod report;
mod suite;

use report::ReportDocument;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "kleinjac", version, about = "Exact checks for real structures on Jacobians of Klein-surface double covers")]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology action of σ, the symplectic change of basis, and the block form.
    SigmaAction {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        genus: u32,
    },
    /// Connected components of the fixed locus on the Jacobian torus.
    Components {
        /// Use the canonical real part for this genus.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..), required_unless_present = "re2", conflicts_with = "re2")]
        genus: Option<u32>,
        /// JSON file {"genus": g, "parity": "...", "re2": [[..]]} holding 2·Re P.
        #[arg(long, value_name = "FILE")]
        re2: Option<PathBuf>,
        /// Cross-check with the numerical scan, e.g. `grid=8` or `grid=8,bound=2,tol=1e-9`.
        #[arg(long, value_parser = parse_oracle)]
        oracle: Option<OracleOpts>,
    },
    /// Torsion census and divisor-level checks on the genus-one model.
    DivisorSuite {
        /// Even torsion order N (2..=16).
        #[arg(long, default_value_t = 4, value_parser = parse_torsion)]
        torsion: i64,
        /// Largest support size of enumerated divisors (cost grows fast beyond 2).
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=3))]
        max_support: u32,
    },
    /// Run every acceptance check.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inclusive genus range, e.g. `1..6`.
        #[arg(long, default_value = "1..6", value_parser = parse_genus_range)]
        genus_range: GenusRange,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct OracleOpts {
    grid: usize,
    bound: Option<i64>,
    tol: f64,
}

fn parse_oracle(s: &str) -> Result<OracleOpts, String> {
    let mut opts = OracleOpts { grid: 0, bound: None, tol: ScanParams::default().tol };
    for part in s.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        match key.trim() {
            "grid" => opts.grid = value.trim().parse().map_err(|e| format!("grid: {e}"))?,
            "bound" => opts.bound = Some(value.trim().parse().map_err(|e| format!("bound: {e}"))?),
            "tol" => opts.tol = value.trim().parse().map_err(|e| format!("tol: {e}"))?,
            other => return Err(format!("unknown oracle key {other:?}")),
        }
    }
    if opts.grid < 4 || opts.grid % 2 != 0 {
        return Err(format!("grid must be even and at least 4, got {}", opts.grid));
    }
    if !(opts.tol > 0.0) {
        return Err("tol must be positive".into());
    }
    if opts.bound.is_some_and(|b| b < 1) {
        return Err("bound must be positive".into());
    }
    Ok(opts)
}

fn parse_torsion(s: &str) -> Result<i64, String> {
    let n: i64 = s.parse().map_err(|e| format!("{e}"))?;
    if n < 2 || n > 16 || n % 2 != 0 {
        return Err(format!("torsion order must be even and in 2..=16, got {n}"));
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq)]
struct GenusRange(RangeInclusive<usize>);

fn parse_genus_range(s: &str) -> Result<GenusRange, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo == 0 || hi < lo || hi > 64 {
        return Err(format!("genus range must satisfy 1 <= LO <= HI <= 64, got {lo}..{hi}"));
    }
    Ok(GenusRange(lo..=hi))
}

fn load_re2(path: &Path) -> Result<RealPartMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(command: Command) -> Result<ReportDocument, String> {
    let doc = match command {
        Command::SigmaAction { genus } => {
            let mut doc = ReportDocument::new("sigma-action").arg("genus", genus);
            doc.extend(suite::sigma_action_checks(genus as usize));
            doc
        }
        Command::Components { genus, re2, oracle } => {
            let (rp, expected, mut doc) = match (genus, re2) {
                (Some(g), _) => {
                    let g = g as usize;
                    let p = Parity::of(g);
                    let rp = canonical_real_part(g, p).map_err(|e| e.to_string())?;
                    let expected = if p == Parity::Even { 1 } else { 2 };
                    (rp, Some(expected), ReportDocument::new("components").arg("genus", g))
                }
                (None, Some(path)) => {
                    let rp = load_re2(&path)?;
                    let doc = ReportDocument::new("components").arg("re2", json!(rp));
                    (rp, None, doc)
                }
                (None, None) => unreachable!("clap requires one of --genus / --re2"),
            };
            let params = oracle.map(|o| ScanParams {
                grid: o.grid,
                lattice_bound: o.bound.unwrap_or_else(|| required_lattice_bound(&rp)),
                tol: o.tol,
            });
            if let Some(p) = params {
                doc = doc.arg("oracle", json!(p));
            }
            doc.extend(suite::component_checks(&rp, expected, params));
            doc
        }
        Command::DivisorSuite { torsion, max_support } => {
            let mut doc = ReportDocument::new("divisor-suite")
                .arg("torsion", torsion)
                .arg("max_support", max_support);
            doc.extend(suite::divisor_checks(torsion, max_support as usize).map_err(|e| e.to_string())?);
            doc
        }
        Command::Verify { seed, genus_range } => {
            let range = genus_range.0;
            let mut doc = ReportDocument::new("verify")
                .arg("seed", seed)
                .arg("genus_range", format!("{}..{}", range.start(), range.end()));
            doc.extend(suite::verify_checks(seed, range));
            doc
        }
    };
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let doc = match run(cli.command) {
        Ok(doc) => doc,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let json = doc.to_json();
    print!("{json}");
    eprint!("{}", doc.summary());
    if let Some(path) = cli.json {
        if let Err(e) = fs::write(&path, &json) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(EXIT_FAIL);
        }
    }
    if doc.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
