//! `poisson-forge`: Jacobi checks, Casimirs, Poisson cohomology, formal
//! linearization, jet prolongation and numerical symplectic realizations.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Report;

#[derive(Parser)]
#[command(name = "poisson-forge", version, about = "Computations with polynomial Poisson structures")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Source {
    /// JSON file holding a multivector field ("terms") or Lie algebra table ("C").
    input: Option<PathBuf>,
    /// Built-in Lie algebra instead of a file: so3, su2, sl2, su3.
    #[arg(long)]
    preset: Option<String>,
}

impl Source {
    fn load(&self) -> anyhow::Result<input::Input> {
        input::load(self.input.as_deref(), self.preset.as_deref())
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Test the Jacobi identity [π,π] = 0.
    Check {
        #[command(flatten)]
        source: Source,
    },
    /// Polynomial Casimir functions up to a degree.
    Casimirs {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
    /// Poisson cohomology dimensions of a homogeneous piece.
    Cohomology {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        grade: u32,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
    /// Formal gauge to the linear part, up to a truncation grade.
    Linearize {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        truncate: u32,
        #[arg(long, default_value_t = 8)]
        base_degree_cap: u32,
    },
    /// Try to extend a partial Poisson jet by one grade.
    Prolong {
        #[command(flatten)]
        source: Source,
        /// Comma-separated variable weights (0 = base, 1 = fibre).
        #[arg(long)]
        weights: Option<String>,
        /// Grade to kill; defaults to the lowest grade of [π,π].
        #[arg(long)]
        grade: Option<u32>,
        #[arg(long, default_value_t = 8)]
        base_degree_cap: u32,
    },
    /// Verify the symplectic realization built from the Poisson spray.
    Realize {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0.1)]
        radius: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
    },
    /// su(3) invariants: Weyl circle, image inequality, outer automorphism.
    Su3 {
        /// Evaluate p1, p2 at one 8-vector instead of the sampled checks.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Symplectic area of the leaf through the sphere of a radius
    /// (so(3)* unless an input is given).
    Area {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Step for the derivative of the area in r.
        #[arg(long, default_value_t = 1e-5)]
        h: f64,
    },
}

fn run(verb: &Verb) -> anyhow::Result<Report> {
    match verb {
        Verb::Check { source } => commands::check(&source.load()?),
        Verb::Casimirs { source, max_degree } => commands::casimirs(&source.load()?, *max_degree),
        Verb::Cohomology { source, grade, kmax } => commands::cohomology(&source.load()?, *grade, *kmax),
        Verb::Linearize { source, truncate, base_degree_cap } => {
            commands::linearize(&source.load()?, *truncate, *base_degree_cap)
        }
        Verb::Prolong { source, weights, grade, base_degree_cap } => {
            let weights = weights.as_deref().map(input::parse_weights).transpose()?;
            commands::prolong(&source.load()?, weights, *grade, *base_degree_cap)
        }
        Verb::Realize { source, samples, radius, seed, steps } => {
            commands::realize(&source.load()?, *samples, *radius, *seed, *steps)
        }
        Verb::Su3 { point, samples, seed } => commands::su3(point.clone(), *samples, *seed),
        Verb::Area { input, radius, h } => {
            let loaded = input.as_deref().map(input::parse_input).transpose()?;
            commands::area(loaded.as_ref(), *radius, *h)
        }
    }
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("POISSON_FORGE_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("POISSON_FORGE_THREADS must be a positive integer"))?;
        if n == 0 {
            anyhow::bail!("POISSON_FORGE_THREADS must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| run(&cli.verb));
    match result {
        Ok(report) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"))
                }
                Format::Text => print!("{}", report.text),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
