//! `ellstab`: transforms, charges, patching solutions, verification suites
//! and wall scans from the command line.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellstab_core::lattice::{ChernClass, DivisorRF};
use ellstab_core::series::{parse_rational, Rational};

use crate::config::Config;
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "ellstab", version, about = "Stability conditions on Weierstraß elliptic surfaces")]
struct Cli {
    /// JSON config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn chern(text: &str) -> Result<ChernClass, String> {
    text.parse().map_err(|e: ellstab_core::lattice::LatticeError| e.to_string())
}

fn divisor(text: &str) -> Result<DivisorRF, String> {
    text.parse().map_err(|e: ellstab_core::lattice::LatticeError| e.to_string())
}

fn pair(text: &str) -> Result<(Rational, Rational), String> {
    let (a, b) = text.split_once(',').ok_or_else(|| format!("expected a,b, got {text}"))?;
    Ok((rational(a.trim())?, rational(b.trim())?))
}

#[derive(Args, Debug, Clone, Default)]
struct GeomArgs {
    /// e = −Θ².
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    e: Option<Rational>,
    /// Coefficient m of ω = u(Θ + mf) + vf.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    m: Option<Rational>,
    /// f-coefficient of K_X (defaults to e).
    #[arg(long = "kx-f", value_parser = rational, allow_hyphen_values = true)]
    kx_f: Option<Rational>,
}

#[derive(Args, Debug, Clone, Default)]
struct PatchArgs {
    #[command(flatten)]
    geom: GeomArgs,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    alpha: Option<Rational>,
}

#[derive(Args, Debug, Clone, Default)]
struct BFieldArgs {
    /// B = qf on the hyperbola side.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    q: Option<Rational>,
    /// B̄ = lf on the ray side; must equal e/2 + q when both are given.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    l: Option<Rational>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "omegaB")]
    OmegaB,
    #[value(name = "abB")]
    AbB,
    #[value(name = "abB-prime")]
    AbBPrime,
    Ray,
    Hyperbola,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum WallKind {
    Ray,
    Hyperbola,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Commutation,
    Gepner,
    Curve,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Apply Φ (or Φ̂ with --inverse) to a Chern class.
    Transform {
        #[arg(long, value_parser = chern, allow_hyphen_values = true)]
        chern: ChernClass,
        #[command(flatten)]
        geom: GeomArgs,
        #[arg(long)]
        inverse: bool,
    },
    /// Central charge and phase limit of a class.
    Charge {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_parser = chern, allow_hyphen_values = true)]
        chern: ChernClass,
        #[command(flatten)]
        patch: PatchArgs,
        /// ω = pΘ + qf, as p,q.
        #[arg(long, value_parser = divisor, allow_hyphen_values = true)]
        omega: Option<DivisorRF>,
        /// B-field as p,q.
        #[arg(long = "B", value_parser = divisor, allow_hyphen_values = true)]
        b_field: Option<DivisorRF>,
        #[arg(long, value_parser = rational)]
        a: Option<Rational>,
        #[arg(long, value_parser = rational)]
        b: Option<Rational>,
        #[arg(long, value_parser = rational)]
        beta: Option<Rational>,
        #[arg(long, value_parser = rational)]
        u: Option<Rational>,
        #[arg(long, value_parser = rational)]
        v: Option<Rational>,
        /// Phase branch (a, b] with quarter-integer endpoints, as a,b.
        #[arg(long, allow_hyphen_values = true)]
        branch: Option<String>,
        /// Evaluate as series in w = 1/v (ray and hyperbola take β(v), u(v)).
        #[arg(long)]
        series: bool,
        #[arg(long = "series-order")]
        series_order: Option<i64>,
    },
    /// Solve the (u, β) relations at a value of v, as series, or at the Gepner point.
    Solve {
        #[command(flatten)]
        patch: PatchArgs,
        #[arg(long, value_parser = rational, conflicts_with_all = ["series_order", "gepner"])]
        v: Option<Rational>,
        #[arg(long = "series-order", conflicts_with = "gepner")]
        series_order: Option<i64>,
        #[arg(long)]
        gepner: bool,
    },
    /// Run a verification suite; exits 2 when it fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        patch: PatchArgs,
        #[command(flatten)]
        fields: BFieldArgs,
        #[arg(long, conflicts_with = "series_order")]
        v: Option<f64>,
        #[arg(long = "series-order")]
        series_order: Option<i64>,
        /// Number of random sample classes.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Mini-walls of a class along the ray or hyperbola family.
    Walls {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Gepner point u = √(A/(m + α − e/2)), β = v = αu.
    Gepner {
        #[command(flatten)]
        patch: PatchArgs,
    },
    /// CSV of Z(γ) and S(γ′; γ) for every candidate along a grid.
    PlotData {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct ScanArgs {
    #[arg(long, value_parser = chern, allow_hyphen_values = true)]
    chern: ChernClass,
    #[arg(long, value_enum)]
    family: WallKind,
    #[command(flatten)]
    patch: PatchArgs,
    #[command(flatten)]
    fields: BFieldArgs,
    /// Parameter interval a,b (β on the ray, v on the hyperbola).
    #[arg(long, value_parser = pair)]
    interval: (Rational, Rational),
    /// Candidate box radius.
    #[arg(long, default_value_t = 5)]
    bounds: i64,
    /// v at which the hyperbola candidate filter is evaluated (default: interval start).
    #[arg(long = "sample-v", value_parser = rational)]
    sample_v: Option<Rational>,
}

fn run(cli: Cli) -> Result<String, CliError> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    commands::dispatch(cli.command, &cfg)
}

fn main() -> ExitCode {
    // clap exits with 2 on bad arguments, which is reserved for failed suites here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(report)) => {
            print!("{report}");
            eprintln!("error: verification failed");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
