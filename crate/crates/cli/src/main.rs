//! `liejet check <suite>`: run seeded property suites and emit a JSON
//! report plus a human-readable table.
//!
//! Exit codes: 0 all properties pass, 1 at least one property fails,
//! 2 usage or configuration error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use liejet::harness::{report_json, report_table, run_suite, SuiteConfig, SUITES};

#[derive(Parser)]
#[command(name = "liejet", version, about = "Property harness for jet, motion, field, form, and kernel laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite (or `all`).
    Check {
        /// Suite name: backends, jets, landau, motions, fields, forms,
        /// kernels, or all.
        suite: String,
        /// JSON config file; flags below override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// RNG seed; fully determines every random draw.
        #[arg(long)]
        seed: Option<u64>,
        /// Chart dimension for field/form/kernel properties.
        #[arg(long)]
        dim: Option<usize>,
        /// Jet length (number of coefficients).
        #[arg(long)]
        order: Option<usize>,
        /// Matrix backend size.
        #[arg(long)]
        matrix_size: Option<usize>,
        /// Random draws per property.
        #[arg(long)]
        samples: Option<usize>,
        /// Multiplier applied to residual tolerances.
        #[arg(long)]
        tol_scale: Option<f64>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn build_config(
    suite: String,
    config: Option<PathBuf>,
    seed: Option<u64>,
    dim: Option<usize>,
    order: Option<usize>,
    matrix_size: Option<usize>,
    samples: Option<usize>,
    tol_scale: Option<f64>,
) -> Result<SuiteConfig, String> {
    let mut cfg = match config {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            serde_json::from_str::<SuiteConfig>(&text)
                .map_err(|e| format!("invalid config {}: {e}", path.display()))?
        }
        None => SuiteConfig::default(),
    };
    cfg.suite = suite;
    if let Some(v) = seed {
        cfg.seed = v;
    }
    if let Some(v) = dim {
        cfg.dim = v;
    }
    if let Some(v) = order {
        cfg.order = v;
    }
    if let Some(v) = matrix_size {
        cfg.matrix_size = v;
    }
    if let Some(v) = samples {
        cfg.samples = v;
    }
    if let Some(v) = tol_scale {
        cfg.tol_scale = v;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Check {
        suite,
        config,
        seed,
        dim,
        order,
        matrix_size,
        samples,
        tol_scale,
        report,
    } = cli.command;

    let cfg = match build_config(
        suite, config, seed, dim, order, matrix_size, samples, tol_scale,
    ) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };

    let result = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("available suites: {}, all", SUITES.join(", "));
            return ExitCode::from(2);
        }
    };

    print!("{}", report_table(&result));
    if let Some(path) = report {
        if let Err(e) = fs::write(&path, report_json(&result)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if result.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
