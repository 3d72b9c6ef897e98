use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::Value;
use toric_t2::complex::DEFAULT_SCAN_BOUND;
use toric_t2::Toric;
use toric_t2_cli::io::{parse_cone_file, parse_degree, parse_polygon_file, InputError};
use toric_t2_cli::report::{InputEcho, RunReport};
use toric_t2_cli::{acceptance, commands};

/// Deformation spaces of affine toric singularities.
#[derive(Parser)]
#[command(name = "toric-t2", version)]
struct Cli {
    /// Single-line JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON instead of a single line.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Facets and Hilbert basis of the dual cone.
    Hilbert {
        #[arg(long)]
        cone: PathBuf,
    },
    /// Graded piece T1(-R).
    T1 {
        #[arg(long)]
        cone: PathBuf,
        /// Comma separated, e.g. "0,0,1".
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Graded piece T2(-R).
    T2 {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Nonzero graded pieces of T1 and T2 in a box of degrees.
    Scan {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SCAN_BOUND)]
        bound: i64,
    },
    /// Cup products T1(-R) x T1(-S) -> T2(-R-S) of basis elements.
    Cup {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long = "degR", allow_hyphen_values = true)]
        deg_r: String,
        /// Defaults to R.
        #[arg(long = "degS", allow_hyphen_values = true)]
        deg_s: Option<String>,
        /// Basis index in T1(-R); all pairs when omitted.
        #[arg(long, requires = "psi_index")]
        phi_index: Option<usize>,
        /// Basis index in T1(-S).
        #[arg(long, requires = "phi_index")]
        psi_index: Option<usize>,
    },
    /// Closed formulas for the cone over a lattice polygon.
    Gorenstein {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long, default_value_t = 4)]
        kmax: i64,
        /// Compare with the general machinery.
        #[arg(long)]
        verify: bool,
        /// Accept edges with interior lattice points (non-isolated singularity).
        #[arg(long)]
        allow_nonprimitive_edges: bool,
    },
    /// Run the acceptance suite on the built-in fixtures.
    VerifyAll,
}

enum Failure {
    Input(InputError),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<toric_t2::Error> for Failure {
    fn from(e: toric_t2::Error) -> Self {
        Failure::Input(InputError::Invalid(e))
    }
}

fn load_cone(path: &Path) -> Result<(InputEcho, Toric), Failure> {
    let (spec, cone) = parse_cone_file(path)?;
    Ok((InputEcho::new("cone", &spec), Toric::new(cone)?))
}

fn run(command: Command) -> Result<(String, Option<InputEcho>, Value, Option<bool>), Failure> {
    Ok(match command {
        Command::Hilbert { cone } => {
            let (echo, t) = load_cone(&cone)?;
            ("hilbert".into(), Some(echo), commands::hilbert(&t), None)
        }
        Command::T1 { cone, degree } => {
            let (echo, t) = load_cone(&cone)?;
            ("t1".into(), Some(echo), commands::t1(&t, &parse_degree(&degree)?)?, None)
        }
        Command::T2 { cone, degree } => {
            let (echo, t) = load_cone(&cone)?;
            ("t2".into(), Some(echo), commands::t2(&t, &parse_degree(&degree)?)?, None)
        }
        Command::Scan { cone, bound } => {
            let (echo, t) = load_cone(&cone)?;
            ("scan".into(), Some(echo), commands::scan(&t, bound)?, None)
        }
        Command::Cup { cone, deg_r, deg_s, phi_index, psi_index } => {
            let (echo, t) = load_cone(&cone)?;
            let r = parse_degree(&deg_r)?;
            let s = match deg_s {
                Some(d) => parse_degree(&d)?,
                None => r.clone(),
            };
            let only = phi_index.zip(psi_index);
            ("cup".into(), Some(echo), commands::cup_table(&t, &r, &s, only)?, None)
        }
        Command::Gorenstein { polygon, kmax, verify, allow_nonprimitive_edges } => {
            let (spec, p) = parse_polygon_file(&polygon, allow_nonprimitive_edges)?;
            let (result, verified) = commands::gorenstein(&p, kmax, verify)?;
            ("gorenstein".into(), Some(InputEcho::new("polygon", &spec)), result, verified)
        }
        Command::VerifyAll => {
            let all = acceptance::run_all();
            for c in &all {
                eprintln!("{}", c.line());
            }
            let ok = all.iter().all(|c| c.passed);
            ("verify-all".into(), None, acceptance::summary_json(&all), Some(ok))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(cli.command) {
        Ok((name, input, result, verified)) => {
            let report = RunReport::new(&name, input, result, verified, started);
            println!("{}", report.to_json(cli.pretty));
            if verified == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
