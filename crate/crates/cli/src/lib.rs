//! Library surface of the radlab command-line driver, exposed so
//! integration tests can call commands in-process.

pub mod commands;
pub mod config;
pub mod repro;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "radlab",
    version,
    about = "Synthetic pulse/disk radius-estimation laboratory",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Worker threads for data generation, batching, and evaluation
    /// (default: all cores). Results do not depend on this value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a dataset (or train/val/test bundle) from a TOML config.
    Gen {
        #[arg(long)]
        config: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Train a network on a generated bundle.
    Train {
        #[arg(long)]
        config: std::path::PathBuf,
        /// Bundle directory containing train/ and val/ (from `gen`).
        #[arg(long)]
        data: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
        /// Override the config's init/shuffle seeds.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit a designed network (prop1 | two_layer | sigmoid | higher_order).
    Design {
        kind: String,
        #[arg(long, default_value_t = 256)]
        d: usize,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Evaluate a network snapshot on a dataset: RMSE report + scatter.
    Eval {
        #[arg(long)]
        net: std::path::PathBuf,
        #[arg(long)]
        data: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Dump intermediate representations for the first n samples.
    Dump {
        #[arg(long)]
        net: std::path::PathBuf,
        #[arg(long)]
        data: std::path::PathBuf,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Estimation manifolds, per-channel contributions, cut profiles.
    Sweep {
        #[arg(long)]
        net: std::path::PathBuf,
        /// fixed_intensity | fixed_radius
        #[arg(long)]
        mode: String,
        #[arg(long)]
        f: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Polarity mode the network was trained on (for region flags).
        #[arg(long, default_value = "both")]
        polarity: String,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Canned reproduction pipelines: table1 | table2 | table3 | figd.
    Repro {
        table: String,
        #[arg(long)]
        out: std::path::PathBuf,
        /// Exit with status 3 if any comparison fails.
        #[arg(long)]
        strict: bool,
    },
}

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_COMPARISON: i32 = 3;

/// Classify an error as usage (bad input) vs runtime.
pub fn exit_code_for(err: &radlab_core::Error) -> i32 {
    use radlab_core::Error::*;
    match err {
        Config(_) | UnknownName { .. } | Artifact { .. } | Shape(_) => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}
