use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "munorm",
    version,
    about = "μ-norms, entropy stages, ω tables and bistochastic checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// μ-norm of an operator; finite operators are checked against the
    /// partition infimum.
    MuNorm,
    /// KS and quantum entropy stages of a finite operator and a partition.
    Entropy,
    /// Coefficient table ω_{m,n}, its convergence, or the Fejér kernel.
    Omega,
    /// Bistochastic operator built from ω: nonnegativity, unit, mass and L¹ checks.
    Bistochastic,
    /// Full acceptance suite.
    Suite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Table,
    Convergence,
    Kernel,
    Report,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Operator spec file (JSON).
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "inline")]
    pub op: Option<PathBuf>,
    /// Operator spec given inline (JSON).
    #[arg(long, global = true, value_name = "JSON")]
    pub inline: Option<String>,
    /// Size J of the finite space when the operator spec leaves it out.
    #[arg(long = "J", global = true, value_parser = positive)]
    pub size: Option<usize>,
    /// Radius M of ω tables and torus kernels.
    #[arg(long = "M", global = true, value_parser = positive)]
    pub radius: Option<usize>,
    /// Band width for random periodic specs.
    #[arg(long, global = true, default_value_t = 1)]
    pub band: usize,
    /// Window lengths #I, comma separated.
    #[arg(long, global = true, value_delimiter = ',', value_parser = positive, default_value = "64,256,1024")]
    pub intervals: Vec<usize>,
    /// Sample grid size on the circle.
    #[arg(long, global = true, value_parser = positive)]
    pub grid: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Replaces every tolerance of the command.
    #[arg(long, global = true, value_parser = positive_f64)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Block label of every point, comma separated (entropy).
    #[arg(long, global = true, value_delimiter = ',')]
    pub partition: Option<Vec<usize>>,
    /// Number of entropy stages.
    #[arg(long = "n-max", global = true, value_parser = positive, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, global = true, value_enum)]
    pub emit: Option<Emit>,
    /// Worker threads for independent sweeps.
    #[arg(long, global = true, value_parser = positive, default_value_t = 1)]
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            op: None,
            inline: None,
            size: None,
            radius: None,
            band: 1,
            intervals: vec![64, 256, 1024],
            grid: None,
            seed: 0,
            tol: None,
            format: None,
            out: None,
            partition: None,
            n_max: 4,
            emit: None,
            jobs: 1,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(_) => Err("must be positive and finite".into()),
        Err(e) => Err(e.to_string()),
    }
}
