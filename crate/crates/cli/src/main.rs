//! Command-line front end: JSON instances in, JSON results on stdout.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde_json::json;

use multicut_core::fixtures::{grid_instance, GridKind};
use multicut_core::solver::{epsilon_from_str, skeleta_report, trace};
use multicut_core::{exact_multicut, random_planar_instance, solve, validate_multicut, Error, GenConfig, Instance, SolverConfig};

#[derive(Parser, Debug)]
#[command(name = "multicut", version, about = "Near-optimal multicuts on surface-embedded graphs")]
struct Cli {
    /// Seed for commands that draw random choices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Log level on stderr (error, warn, info, debug).
    #[arg(long, global = true, default_value = "warn")]
    log: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Approximation parameter, as a decimal or fraction.
    #[arg(long, default_value = "0.5")]
    epsilon: String,
    #[arg(long, default_value_t = 2)]
    kappa_init: usize,
    #[arg(long, default_value_t = 8)]
    kappa_cap: usize,
    /// Largest edge count for the exact fallback.
    #[arg(long, default_value_t = multicut_core::oracle::DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Include the drawn multicut dual in the output.
    #[arg(long)]
    certificate: bool,
    /// Instance file; stdin when absent or `-`.
    instance: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SurfaceKind {
    Planar,
    Torus,
    Klein,
    Projective,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Approximate minimum multicut.
    Solve(SolveArgs),
    /// Exact minimum multicut by branch and bound.
    Exact {
        #[arg(long, default_value_t = multicut_core::oracle::DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        instance: Option<PathBuf>,
    },
    /// Checks that a set of edges separates every pair.
    Validate {
        /// Comma-separated edge ids.
        #[arg(long, conflicts_with = "result")]
        edges: Option<String>,
        /// A `solve` or `exact` output whose `cut_edges` are checked.
        #[arg(long)]
        result: Option<PathBuf>,
        instance: Option<PathBuf>,
    },
    /// Generates a random instance.
    Gen {
        #[arg(long, value_enum, default_value = "planar")]
        surface: SurfaceKind,
        /// Vertices of a planar instance.
        #[arg(long, default_value_t = 8)]
        vertices: usize,
        /// Grid size of a non-planar instance.
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 3)]
        cols: usize,
        #[arg(long, default_value_t = 3)]
        terminals: usize,
        #[arg(long, default_value_t = 0.7)]
        pair_density: f64,
        #[arg(long, default_value_t = 1)]
        weight_min: i64,
        #[arg(long, default_value_t = 16)]
        weight_max: i64,
        /// Edge budget of a planar instance.
        #[arg(long, default_value_t = 20)]
        max_edges: usize,
    },
    /// Dumps the skeleta and portals of the initial multiplier.
    Skeleta(SolveArgs),
    /// Solves and reports statistics of every stage.
    Trace(SolveArgs),
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoCandidate(_) | Error::AboveCap { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn read_text(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| invalid(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load(path: Option<&PathBuf>) -> Result<Instance, Failure> {
    Ok(Instance::from_json(&read_text(path)?)?)
}

fn config(a: &SolveArgs, jobs: usize) -> Result<SolverConfig, Failure> {
    Ok(SolverConfig {
        epsilon: epsilon_from_str(&a.epsilon)?,
        kappa_init: a.kappa_init,
        kappa_cap: a.kappa_cap,
        oracle_cap: a.oracle_cap,
        jobs,
        certificate: a.certificate,
        ..SolverConfig::default()
    })
}

fn run(cli: Cli) -> Result<serde_json::Value, Failure> {
    let jobs = cli.jobs;
    let out = match cli.command {
        Command::Solve(a) => {
            let cfg = config(&a, jobs)?;
            let inst = load(a.instance.as_ref())?;
            let s = solve(&inst, &cfg)?;
            info!("kappa {} stats {:?}", s.kappa, s.stats);
            serde_json::to_value(&s).expect("solution serializes")
        }
        Command::Exact { oracle_cap, instance } => {
            let inst = load(instance.as_ref())?;
            serde_json::to_value(exact_multicut(&inst, oracle_cap)?).expect("result serializes")
        }
        Command::Validate { edges, result, instance } => {
            let inst = load(instance.as_ref())?;
            let cut: Vec<String> = match (edges, result) {
                (Some(list), _) => list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect(),
                (None, Some(path)) => {
                    let v: serde_json::Value = serde_json::from_str(&read_text(Some(&path))?).map_err(|e| invalid(e.to_string()))?;
                    serde_json::from_value(v["cut_edges"].clone()).map_err(|_| invalid("result has no cut_edges list"))?
                }
                (None, None) => return Err(invalid("give --edges or --result")),
            };
            json!({ "valid": validate_multicut(&inst, &cut)? })
        }
        Command::Gen { surface, vertices, rows, cols, terminals, pair_density, weight_min, weight_max, max_edges } => {
            let spec = match surface {
                SurfaceKind::Planar => {
                    let cfg = GenConfig { vertices, terminals, pair_density, weight_min, weight_max, max_edges: Some(max_edges) };
                    random_planar_instance(cli.seed, &cfg)?
                }
                SurfaceKind::Torus | SurfaceKind::Klein | SurfaceKind::Projective => {
                    let kind = match surface {
                        SurfaceKind::Torus => GridKind::Torus,
                        SurfaceKind::Klein => GridKind::Klein,
                        _ => GridKind::Projective,
                    };
                    if weight_min != 1 {
                        return Err(invalid("grid weights start at 1"));
                    }
                    grid_instance(cli.seed, rows, cols, kind, terminals, pair_density, weight_max)?
                }
            };
            serde_json::to_value(&spec).expect("instance serializes")
        }
        Command::Skeleta(a) => {
            let cfg = config(&a, jobs)?;
            skeleta_report(&load(a.instance.as_ref())?, &cfg)?
        }
        Command::Trace(a) => {
            let cfg = config(&a, jobs)?;
            serde_json::to_value(trace(&load(a.instance.as_ref())?, &cfg)?).expect("trace serializes")
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::new().parse_filters(&cli.log).target(env_logger::Target::Stderr).init();
    match run(cli) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json prints"));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
