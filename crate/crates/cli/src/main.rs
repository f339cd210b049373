//! `sacf`: command-line front end for the superapollonian library.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (git ", env!("SACF_GIT_REV"), ")");

#[derive(Parser, Debug)]
#[command(name = "sacf", version = VERSION, about = "Super-Apollonian continued fractions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand a Gaussian rational exactly or a complex point in floating point.
    Expand(ExpandArgs),
    /// Reduce a Lorentz or Descartes quadruple to its root.
    Reduce(ReduceArgs),
    /// Digit and substring frequency experiments.
    Stats {
        #[command(subcommand)]
        which: StatsCommand,
    },
    /// Draw the Farey partition as SVG.
    Render(RenderArgs),
    /// Sample the invariant density on a grid as CSV.
    Density(DensityArgs),
    /// Measures of the eight base regions of one side.
    Measure(MeasureArgs),
    /// Reflective Euclidean algorithm next to the comparison algorithm.
    Gcd(GcdArgs),
    /// Expansion and mediant convergents of a real number.
    Real(RealArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum SideArg {
    A,
    B,
}

impl From<SideArg> for superapollonian::planar::Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::A => superapollonian::planar::Side::A,
            SideArg::B => superapollonian::planar::Side::B,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ExpandArgs {
    /// Numerator and denominator as Gaussian integers, e.g. `1+2i 3`.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_hyphen_values = true, conflicts_with = "point", required_unless_present = "point")]
    pub rational: Option<Vec<String>>,
    /// Real and imaginary part of a floating point.
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pub point: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "b")]
    pub side: SideArg,
    /// Letters to compute; exact expansions stop at this cap.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Boundary tolerance for floating expansions.
    #[arg(long, default_value_t = superapollonian::planar::DEFAULT_EPSILON)]
    pub eps: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum ReduceKind {
    Lorentz,
    DescartesSwap,
    DescartesInvert,
    Height,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub kind: ReduceKind,
    #[arg(num_args = 4, value_names = ["A", "B", "C", "D"], required = true, allow_hyphen_values = true)]
    pub quadruple: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum StatsCommand {
    /// Expand every primitive Lorentz quadruple with 0 < a ≤ N.
    Quadruples {
        #[arg(long, default_value_t = 200)]
        max_a: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Expand seeded uniform points of the unit square.
    Random {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "b")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Closed-form predictions (conjectural: they assume ergodicity).
    Predict {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct RenderArgs {
    /// Longest normal-form word drawn.
    #[arg(long, default_value_t = 5)]
    pub depth: usize,
    #[arg(long, num_args = 4, value_names = ["X0", "Y0", "X1", "Y1"], default_values_t = [0.0, 0.0, 1.0, 1.0])]
    pub clip: Vec<f64>,
    #[arg(long, value_enum, default_value = "b")]
    pub side: SideArg,
    /// Width of the longer edge in pixels.
    #[arg(long, default_value_t = 800.0)]
    pub pixels: f64,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct DensityArgs {
    #[arg(long, value_enum, default_value = "b")]
    pub side: SideArg,
    #[arg(long, num_args = 2, value_names = ["NX", "NY"], default_values_t = [400, 400])]
    pub grid: Vec<usize>,
    #[arg(long, num_args = 4, value_names = ["X0", "Y0", "X1", "Y1"], default_values_t = [-0.5, -0.5, 1.5, 1.5])]
    pub clip: Vec<f64>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    #[arg(long, value_enum, default_value = "b")]
    pub side: SideArg,
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum GcdFormat {
    Json,
    Jsonl,
    Csv,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct GcdArgs {
    #[arg(allow_hyphen_values = true)]
    pub p: String,
    #[arg(allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GcdFormat,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct RealArgs {
    /// A decimal or a fraction p/q.
    #[arg(allow_hyphen_values = true)]
    pub x: String,
    /// Letters to keep; rationals run to their fixed point when omitted.
    #[arg(long)]
    pub steps: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let domain = e
                .downcast_ref::<superapollonian::Error>()
                .is_some_and(|e| matches!(e, superapollonian::Error::Domain(_)))
                || e.downcast_ref::<commands::UsageError>().is_some();
            ExitCode::from(if domain { 2 } else { 1 })
        }
    }
}
