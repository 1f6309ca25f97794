use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "heisenberg",
    version,
    about = "Sub-Riemannian experiments on the Heisenberg group"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two points.
    Distance(DistanceArgs),
    /// Sample a closed-form geodesic.
    Geodesic(GeodesicArgs),
    /// Integrate the horizontal curve of a heading polynomial.
    Integrate(IntegrateArgs),
    /// Check the sixth-order term of the squared distance along a curve.
    VerifyTheorem(TheoremArgs),
    /// Fit the quartic term of the ε-Riemannian squared distance.
    VerifyRiemannian(RiemannianArgs),
    /// Match a constant-curvature projection with an Euler spiral.
    Spiral(SpiralArgs),
    /// Recover the isometry between two curves with the same profile.
    Isometry(IsometryArgs),
    /// Print exact series coefficients.
    SeriesDump(SeriesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format; trajectories default to CSV, everything else to JSON.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// Target point `x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    /// Start point `x,y,z` (default: origin).
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub omega: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub theta0: String,
    #[arg(long, default_value = "1")]
    pub t_end: String,
    /// Sample spacing.
    #[arg(long, default_value = "1e-2")]
    pub step: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    /// Heading polynomial coefficients `θ0,θ1,…`.
    #[arg(long, allow_hyphen_values = true)]
    pub jet: String,
    #[arg(long, default_value = "1")]
    pub t_end: String,
    #[arg(long, default_value = "1e-3")]
    pub step: String,
    /// Start point `x,y,z` (default: origin).
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TheoremArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[arg(long, allow_hyphen_values = true)]
    pub jet: String,
    /// Series truncation order (exact mode).
    #[arg(long, default_value_t = 8)]
    pub order: usize,
    /// Fit window `t_min,t_max` (numeric mode).
    #[arg(long, default_value = "0.05,0.5")]
    pub window: String,
    #[arg(long, default_value_t = 12)]
    pub samples: usize,
    #[arg(long, default_value = "1e-3")]
    pub step: String,
    /// Relative tolerance on the fitted coefficient (numeric mode).
    #[arg(long, default_value = "0.02")]
    pub tolerance: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RiemannianArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub jet: String,
    #[arg(long, default_value = "0.1")]
    pub eps: String,
    /// Fit window `t_min,t_max` (default: `ε/10,ε`).
    #[arg(long)]
    pub window: Option<String>,
    #[arg(long, default_value_t = 12)]
    pub samples: usize,
    #[arg(long, default_value = "1e-3")]
    pub step: String,
    #[arg(long, default_value = "0.05")]
    pub tolerance: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SpiralArgs {
    /// Heading polynomial of degree at most 2.
    #[arg(long, allow_hyphen_values = true)]
    pub jet: String,
    #[arg(long, default_value = "2")]
    pub t_end: String,
    #[arg(long, default_value = "1e-3")]
    pub step: String,
    #[arg(long, default_value = "1e-6")]
    pub tolerance: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct IsometryArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub jet: String,
    /// Seed for the random start and heading of the second curve.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "1")]
    pub t_end: String,
    #[arg(long, default_value = "1e-4")]
    pub step: String,
    #[arg(long, default_value = "1e-8")]
    pub tolerance: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    #[arg(long, default_value_t = 9)]
    pub order: usize,
    /// Optional heading polynomial (exact fractions) for the curve series.
    #[arg(long, allow_hyphen_values = true)]
    pub jet: Option<String>,
    #[command(flatten)]
    pub output: Output,
}
