use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use naw_core::io::{GenMode, DEFAULT_RANGE};

#[derive(Debug, Parser)]
#[command(name = "naw", version, about = "Sweep-hull convex hulls and Delaunay triangulations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Delaunay triangulation of the xy coordinates of a points file.
    Delaunay(BuildArgs),
    /// Closed 3D convex hull of a points file.
    Hull3d(BuildArgs),
    /// Write a random points file.
    Gen(GenArgs),
    /// Audit a triangles file against its points file.
    Verify(VerifyArgs),
    /// Visible-facet statistics per insertion, as CSV.
    Stats(StatsArgs),
    /// Median build timings, as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct Source {
    /// Points file ("<N> 3 points" header optional; 2-column rows are lifted).
    #[arg(required_unless_present = "gen", conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Generate N random points instead of reading a file.
    #[arg(long, value_name = "N")]
    pub gen: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// square2d, box3d or parabola.
    #[arg(long)]
    pub mode: Option<GenMode>,
    #[arg(long, default_value_t = DEFAULT_RANGE)]
    pub range: f64,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: Source,
    /// Triangles file to write; standard output if omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also plot the triangulation (delaunay only).
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Write the de-duplicated, sorted points the triangle ids refer to.
    #[arg(long, value_name = "PATH")]
    pub points_out: Option<PathBuf>,
    /// Print coordinates with six significant digits.
    #[arg(long)]
    pub compat_precision: bool,
    /// Exact-zero collinearity test and the reference's minimum point count.
    #[arg(long)]
    pub strict_compat: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = GenMode::Square2d)]
    pub mode: GenMode,
    #[arg(long, default_value_t = DEFAULT_RANGE)]
    pub range: f64,
    /// Points file to write; standard output if omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub compat_precision: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Hull,
    Delaunay,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub points: PathBuf,
    pub triangles: PathBuf,
    #[arg(long, value_enum, default_value_t = VerifyMode::Delaunay)]
    pub mode: VerifyMode,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1000, 10000, 100000])]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4, 5])]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = GenMode::Parabola)]
    pub mode: GenMode,
    #[arg(long, default_value_t = DEFAULT_RANGE)]
    pub range: f64,
    /// Write every insertion's statistics to this CSV file.
    #[arg(long, value_name = "PATH")]
    pub per_insertion: Option<PathBuf>,
    /// Run (size, seed) cells on a thread pool.
    #[arg(long)]
    pub parallel: bool,
    #[arg(long)]
    pub strict_compat: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [10000, 100000])]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [1])]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = GenMode::Square2d)]
    pub mode: GenMode,
    #[arg(long, default_value_t = DEFAULT_RANGE)]
    pub range: f64,
    /// CSV of other tools' timings (tool,n,wall_s) to print alongside;
    /// a wall_s of "<x" is an upper bound.
    #[arg(long, value_name = "CSV")]
    pub compare: Option<PathBuf>,
    #[arg(long)]
    pub parallel: bool,
    #[arg(long)]
    pub strict_compat: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
