use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "vertex", version, about = "Framed topological vertex: compute, verify, and KP checks")]
pub struct Cli {
    /// Result cache directory (no caching when unset).
    #[arg(long, global = true, env = "VERTEX_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads; 0 picks the number of CPUs.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one vertex value and print its JSON record.
    Compute(ComputeArgs),
    /// Check that the selected pipelines agree on every key in a range.
    Verify(VerifyArgs),
    /// Check the Hirota bilinear identity for the vertex tau series.
    KpCheck(KpArgs),
    /// Tabulate all keys with |μ^i| ≤ N at one framing.
    Table(TableArgs),
    /// Manage the result cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Delete every cached entry.
    Clear,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, default_value = "[]")]
    pub mu1: String,
    #[arg(long, default_value = "[]")]
    pub mu2: String,
    #[arg(long, default_value = "[]")]
    pub mu3: String,
    /// Framing as a1,a2,a3.
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub framing: String,
    #[arg(long, default_value = "skew,detf,bog")]
    pub pipelines: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub max_size: u32,
    /// Framing range lo..hi applied to each leg.
    #[arg(long, default_value = "0..0", allow_hyphen_values = true)]
    pub framings: String,
    #[arg(long, default_value = "skew,detf,bog")]
    pub pipelines: String,
    /// Refuse --max-size above this.
    #[arg(long, default_value_t = 5)]
    pub hard_limit: u32,
    /// Test hook: add 1 to F^{ij}_{mn}, given as i,j,m,n.
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

#[derive(Debug, Args)]
pub struct KpArgs {
    #[arg(long, default_value_t = 1)]
    pub components: usize,
    /// Tau truncation N (total partition size); defaults to 6 or 4 by component count.
    #[arg(long)]
    pub cutoff: Option<u32>,
    /// Weighted degree of residue coefficients; defaults to 3 or 2.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Specialization of q^{1/2}, as p/q.
    #[arg(long, default_value = "2/3", allow_hyphen_values = true)]
    pub u0: String,
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub framing: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 2)]
    pub max_size: u32,
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub framing: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value = "skew,detf,bog")]
    pub pipelines: String,
    #[arg(long, default_value_t = 5)]
    pub hard_limit: u32,
}
