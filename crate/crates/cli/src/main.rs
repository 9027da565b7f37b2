//! `markoff`: reduce points, scan class numbers, verify identities, list
//! parabolic lines, dump orbits and test equivalence.
//!
//! Exit codes: 0 success, 1 input or math error, 2 a search cap was hit.

mod cache;
mod commands;
mod error;
mod output;
mod parse;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "markoff",
    version,
    about = "Markoff-type descent on (1,1) and (0,4) character varieties"
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceType {
    #[value(name = "11")]
    Markoff,
    #[value(name = "04")]
    Cubic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gens {
    #[value(name = "gamma-prime", alias = "gamma_prime")]
    GammaPrime,
    #[value(name = "gamma-poly", alias = "gamma_poly")]
    GammaPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Greedy l_inf reduction for exact input, complex descent for --complex
    Auto,
    Compact,
    /// Complex descent to the smallest-coordinate bound
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AwayMode {
    RealAway2,
    ComplexAwayInterval,
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArgs {
    /// Surface type
    #[arg(long = "type", value_enum, default_value = "11")]
    pub kind: SurfaceType,

    /// Boundary trace: one value for type 11, four comma-separated for 04
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,

    /// Read traces and coordinates as complex literals like 1.5+0.25i
    #[arg(long)]
    pub complex: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    /// Skip points with l_inf above this height (default: the box bound, or 1000)
    #[arg(long)]
    pub cap_height: Option<u64>,

    /// Store at most this many points per search
    #[arg(long, default_value_t = 1_000_000)]
    pub cap_count: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a point and print the certificate word
    Reduce {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Point as x,y,z
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Excluded trace set for compact reduction of complex points
        #[arg(long, value_enum, default_value = "complex-away-interval")]
        away: AwayMode,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = markoff_core::DEFAULT_STEP_CAP)]
        step_cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Class numbers under both generator sets for each k
    Scan {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Inclusive range a..b of k values (type 11)
        #[arg(long, allow_hyphen_values = true, conflicts_with = "k")]
        k_range: Option<String>,
        /// Box bound on l_inf
        #[arg(long = "box", default_value_t = 100)]
        bound: u64,
        /// Generator set whose representatives are listed
        #[arg(long, value_enum, default_value = "gamma-prime")]
        gens: Gens,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Results cache file
        #[arg(long, env = "MARKOFF_CACHE")]
        cache: Option<PathBuf>,
    },
    /// Run the seeded identity suites
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random inputs per suite
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Corrupt one identity (negative control for the suite itself)
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Parabolic lines with a coordinate fixed at +-2 on the (1,1) surface
    Lines {
        /// Integer boundary trace
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Breadth-first orbit dump with a certificate word per point
    Orbit {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "gamma-prime")]
        gens: Gens,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Search for a word mapping one point to another
    Equiv {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, value_enum, default_value = "gamma-prime")]
        gens: Gens,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.cmd {
        Command::Reduce {
            surface,
            point,
            method,
            away,
            delta,
            step_cap,
            format,
        } => commands::reduce(&surface, &point, method, away, delta, step_cap, format),
        Command::Scan {
            surface,
            k_range,
            bound,
            gens,
            caps,
            format,
            cache,
        } => commands::scan(
            &surface,
            k_range.as_deref(),
            bound,
            gens,
            &caps,
            format,
            cache.as_deref(),
        ),
        Command::Verify {
            seed,
            trials,
            format,
            inject_fault,
        } => commands::verify(seed, trials, format, inject_fault),
        Command::Lines { k, format } => commands::lines(&k, format),
        Command::Orbit {
            surface,
            point,
            gens,
            caps,
            format,
        } => commands::orbit(&surface, &point, gens, &caps, format),
        Command::Equiv {
            surface,
            point,
            to,
            gens,
            caps,
            format,
        } => commands::equiv(&surface, &point, &to, gens, &caps, format),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
