//! `teichray`: asymptotic invariants of Teichmüller rays from the command
//! line. JSON and CSV go to stdout, diagnostics to stderr.
//!
//! Exit status is 1 for input that cannot be decoded, 2 for input that
//! decodes but is mathematically invalid, 0 otherwise.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "teichray", version, about = "Asymptotic invariants of Teichmüller rays")]
struct Cli {
    /// Do not print the version line on stderr.
    #[arg(long, global = true)]
    no_banner: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shrink and grow limits of a foliation along a ray.
    Limit {
        /// Ray decomposition JSON (`-` for stdin).
        ray: PathBuf,
        /// Foliation JSON: `{"basis": [..]}` or `{"intersections": [..], "certificates": [..]}`.
        foliation: PathBuf,
    },
    /// Limiting Teichmüller distance between two rays.
    Distance(PairArgs),
    /// Detour distance between the endpoints of two rays.
    Detour(PairArgs),
    /// Optimal shift of the second ray and the minimal limiting distance.
    Shift {
        #[command(flatten)]
        pair: PairArgs,
        /// Also scan sigma over `lo:hi:step`.
        #[arg(long, value_name = "LO:HI:STEP", allow_hyphen_values = true)]
        sigma_grid: Option<String>,
    },
    /// Asymptoticity and Busemann-equality verdicts.
    Equiv(PairArgs),
    /// Check the limit formulas on a flat torus against closed forms.
    TorusVerify {
        /// Torus parameter `x,y` with `y > 0`.
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        omega: String,
        /// Curve class `p,q`; repeatable. Defaults to all primitive classes with |p|,|q| <= 2.
        #[arg(long, value_name = "P,Q", allow_hyphen_values = true)]
        curve: Vec<String>,
        #[arg(long, value_name = "LO:HI:STEP", default_value = "0:8:1", allow_hyphen_values = true)]
        t_grid: String,
        /// Second torus for the Kerckhoff supremum.
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        other: Option<String>,
        /// Enumeration bound for the Kerckhoff supremum.
        #[arg(long, default_value_t = 200)]
        bound: u32,
    },
    /// Cylinders, moduli and core limits of a square-tiled surface.
    OrigamiAnalyze {
        /// Origami JSON `{"n":.., "r":[..], "u":[..]}` (`-` for stdin).
        origami: PathBuf,
        /// Second origami whose vertical ray is compared with the first.
        #[arg(long)]
        compare: Option<PathBuf>,
        /// Cylinder matching `i:j,...`, one-indexed. Defaults to the identity.
        #[arg(long, requires = "compare")]
        matching: Option<String>,
    },
    /// CSV trace of a quantity along a ray.
    Trace(TraceArgs),
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Pair JSON `{"ray1": .., "ray2": ..}` (`-` for stdin).
    pair: PathBuf,
    /// Exit with status 2 instead of reporting an infinite result.
    #[arg(long)]
    require_finite: bool,
}

#[derive(Debug, Args)]
struct TraceArgs {
    /// Torus parameter `x,y`.
    #[arg(long, value_name = "X,Y", conflicts_with = "origami", required_unless_present = "origami", allow_hyphen_values = true)]
    omega: Option<String>,
    /// Curve class `p,q` on the torus.
    #[arg(long, value_name = "P,Q", requires = "omega", allow_hyphen_values = true)]
    curve: Option<String>,
    #[arg(long, value_enum, default_value_t = Quantity::Shrink)]
    quantity: Quantity,
    /// Origami JSON; traces the bounds for a vertical cylinder core.
    #[arg(long)]
    origami: Option<PathBuf>,
    /// One-indexed vertical cylinder.
    #[arg(long, default_value_t = 1, requires = "origami")]
    cylinder: usize,
    #[arg(long, value_name = "LO:HI:STEP", default_value = "0:5:1", allow_hyphen_values = true)]
    t_grid: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    /// `e^{-2t} Ext`.
    Shrink,
    /// `e^{2t} Ext`.
    Grow,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if !cli.no_banner {
        eprintln!("teichray {}", env!("CARGO_PKG_VERSION"));
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
