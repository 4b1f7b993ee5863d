//! Batch runner: one verification suite per invocation, configured from a TOML
//! file, writing `summary.json` plus suite-specific CSV artifacts.

mod config;
mod suites;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::blades::convention_table;
use crate::error::{Error, Result};

pub use config::{
    AlgebraConfig, DecomposeConfig, EquivalenceConfig, GhjeConfig, GhjeFieldKind, GridConfig, RunConfig, SolitonConfig,
    WorldlineConfig,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Decompose,
    Equivalence,
    Ghje,
    Soliton,
    Worldline,
}

#[derive(Debug, Parser)]
#[command(name = "stalab", version, about = "Spacetime-algebra verification suites")]
pub struct Args {
    pub suite: Suite,
    /// TOML run configuration; built-in defaults when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory for summary.json and CSV artifacts.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Use the literal ∂(ln β) reading in the ghje suite instead of the derived ∂β.
    #[arg(long)]
    pub strict_paper: bool,
    /// Overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// One residual compared against its bound: pass iff lower ≤ value ≤ upper.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    pub upper: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: &str, value: f64, upper: f64) -> Self {
        Check { name: name.into(), value, lower: None, upper, pass: value <= upper }
    }

    pub fn within(name: &str, value: f64, lower: f64, upper: f64) -> Self {
        Check { name: name.into(), value, lower: Some(lower), upper, pass: (lower..=upper).contains(&value) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub suite: Suite,
    /// SHA-256 of the blade ordering, metric and product table.
    pub conventions_hash: String,
    pub seed: u64,
    pub strict_paper: bool,
    pub parameters: serde_json::Value,
    pub checks: Vec<Check>,
    pub details: serde_json::Value,
    pub artifacts: Vec<String>,
    pub pass: bool,
}

pub fn conventions_hash() -> String {
    let digest = Sha256::digest(convention_table().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// What a suite hands back before the summary is assembled.
pub(crate) struct SuiteOutcome {
    pub parameters: serde_json::Value,
    pub checks: Vec<Check>,
    pub details: serde_json::Value,
    pub artifacts: Vec<String>,
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("serializable")
}

/// Runs one suite and writes its artifacts; the returned summary is already on disk.
pub fn run_suite(suite: Suite, config: &RunConfig, out: &Path) -> Result<Summary> {
    fs::create_dir_all(out)?;
    let outcome = match suite {
        Suite::Algebra => suites::algebra(config)?,
        Suite::Decompose => suites::decompose(config)?,
        Suite::Equivalence => suites::equivalence(config, out)?,
        Suite::Ghje => suites::ghje(config, out)?,
        Suite::Soliton => suites::soliton(config, out)?,
        Suite::Worldline => suites::worldline(config, out)?,
    };
    let pass = outcome.checks.iter().all(|c| c.pass);
    let summary = Summary {
        suite,
        conventions_hash: conventions_hash(),
        seed: config.seed,
        strict_paper: config.strict_paper,
        parameters: outcome.parameters,
        checks: outcome.checks,
        details: outcome.details,
        artifacts: outcome.artifacts,
        pass,
    };
    write_atomic(&out.join("summary.json"), &summary_bytes(&summary)?)?;
    Ok(summary)
}

pub fn summary_bytes(summary: &Summary) -> Result<Vec<u8>> {
    let mut text = serde_json::to_vec_pretty(summary).map_err(|e| Error::Io(e.to_string()))?;
    text.push(b'\n');
    Ok(text)
}

/// Writes to a sibling temporary file, then renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Parses arguments, runs the suite and maps the outcome to an exit code.
pub fn main_with_args(args: Args) -> i32 {
    let mut config = match &args.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("stalab: {}: {e}", path.display());
                return EXIT_CONFIG;
            }
        },
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    config.strict_paper |= args.strict_paper;
    match run_suite(args.suite, &config, &args.out) {
        Ok(summary) => {
            for c in &summary.checks {
                let status = if c.pass { "ok  " } else { "FAIL" };
                let bound = match c.lower {
                    Some(lo) => format!("[{lo:.2}, {:.2}]", c.upper),
                    None => format!("≤ {:.1e}", c.upper),
                };
                println!("{status} {:<40} {:.3e} {bound}", c.name, c.value);
            }
            if summary.pass {
                EXIT_PASS
            } else {
                EXIT_TOLERANCE
            }
        }
        Err(e) => {
            eprintln!("stalab: {e}");
            EXIT_CONFIG
        }
    }
}
