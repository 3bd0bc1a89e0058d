use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use poncelet::billiard::{launch_tangent, simulate, symmetry, to_csv, to_svg};
use poncelet::cayley::{find_caustics_with, Flavor, ScanOptions, Source};
use poncelet::rotation::rotation_number;
use poncelet::{CausticKind, ConfocalFamily};
use poncelet_cli::{run_verify, to_json, Suite, VerifyOptions};

#[derive(Parser)]
#[command(name = "poncelet", version, about = "Periodic billiard trajectories in an ellipse")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Periodic,
    EllipticA,
    EllipticB,
    EllipticC,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Periodic => Flavor::Periodic,
            FlavorArg::EllipticA => Flavor::EllipticA,
            FlavorArg::EllipticB => Flavor::EllipticB,
            FlavorArg::EllipticC => Flavor::EllipticC,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Caustics of period n for the table x²/a + y²/b = 1.
    FindCaustics {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "periodic")]
        flavor: FlavorArg,
        #[arg(long, default_value_t = 10_000)]
        grid_density: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Trajectory launched tangent to the caustic λ₀.
    Simulate {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        lambda0: f64,
        #[arg(long, default_value_t = 0.37)]
        phase: f64,
        #[arg(long, default_value_t = 100)]
        bounces: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Rotation number of the caustic λ₀.
    Rotation {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        lambda0: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run verification suites over the fixture table.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = poncelet::exactalg::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct CausticEntry {
    lambda0: f64,
    kind: CausticKind,
    winding: [usize; 2],
    signature: [usize; 2],
    source: Source,
}

#[derive(Serialize)]
struct CausticsOut {
    n: usize,
    caustics: Vec<CausticEntry>,
}

#[derive(Serialize)]
struct SimulateOut {
    m0: usize,
    m1: usize,
    closed: bool,
    closure_residual: f64,
    symmetry: poncelet::billiard::Symmetry,
    vertices: Vec<[f64; 2]>,
    segment_caustics: Vec<f64>,
}

enum Failure {
    Invalid(String),
    Empty(String),
    Checks(String),
}

fn family(a: f64, b: f64) -> Result<ConfocalFamily, Failure> {
    ConfocalFamily::new(a, b).map_err(|e| Failure::Invalid(e.to_string()))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::FindCaustics {
            a,
            b,
            n,
            flavor,
            grid_density,
            output,
        } => {
            let fam = family(a, b)?;
            if grid_density < 100 {
                return Err(Failure::Invalid(format!("grid density {grid_density} below 100")));
            }
            let opts = ScanOptions {
                grid_density,
                ..ScanOptions::default()
            };
            let found =
                find_caustics_with(&fam, n, flavor.into(), &opts).map_err(|e| Failure::Invalid(e.to_string()))?;
            let caustics: Vec<CausticEntry> = found
                .iter()
                .map(|c| {
                    let (t1, t2) = c.signature();
                    CausticEntry {
                        lambda0: c.lambda0.lambda0,
                        kind: c.lambda0.kind,
                        winding: [c.winding.0, c.winding.1],
                        signature: [t1, t2],
                        source: c.source,
                    }
                })
                .collect();
            let empty = caustics.is_empty();
            emit(&to_json(&CausticsOut { n, caustics }), &output)?;
            if empty {
                return Err(Failure::Empty(format!("no caustics of period {n}")));
            }
            Ok(())
        }
        Command::Simulate {
            a,
            b,
            lambda0,
            phase,
            bounces,
            format,
            output,
        } => {
            let fam = family(a, b)?;
            let caustic = fam.caustic(lambda0);
            let invalid = |e: poncelet::Error| Failure::Invalid(e.to_string());
            let (start, dir) = launch_tangent(&fam, &caustic, phase).map_err(invalid)?;
            let traj = simulate(&fam, &start, &dir, bounces).map_err(invalid)?;
            let text = match format {
                Format::Csv => to_csv(&traj),
                Format::Svg => to_svg(&fam, &caustic, &traj),
                Format::Json => to_json(&SimulateOut {
                    m0: traj.m0,
                    m1: traj.m1,
                    closed: traj.closed,
                    closure_residual: traj.closure_residual,
                    symmetry: symmetry(&traj.vertices, 1e-7),
                    vertices: traj.vertices.iter().map(|p| [p.x, p.y]).collect(),
                    segment_caustics: traj.segment_caustics.clone(),
                }),
            };
            emit(&text, &output)
        }
        Command::Rotation { a, b, lambda0, output } => {
            let fam = family(a, b)?;
            let r = rotation_number(&fam, lambda0).map_err(|e| Failure::Invalid(e.to_string()))?;
            emit(&to_json(&r), &output)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            output,
        } => {
            if trials == 0 {
                return Err(Failure::Invalid("trials must be positive".into()));
            }
            let report = run_verify(suite, &VerifyOptions { trials, seed });
            emit(&to_json(&report), &output)?;
            if !report.passed {
                return Err(Failure::Checks(format!(
                    "{} of {} checks failed",
                    report.failed, report.total
                )));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(t) = std::env::var("PONCELET_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Empty(m)) => {
            eprintln!("{m}");
            ExitCode::from(2)
        }
        Err(Failure::Checks(m)) => {
            eprintln!("{m}");
            ExitCode::from(3)
        }
    }
}
