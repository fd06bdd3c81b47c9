//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a solver fails or times out, 2 for usage,
//! I/O and parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::bp::{bp_solve, BpError, BpLimits};
use crate::genio::{
    build_instance, generate_synthetic, parse_pdb, read_instance, read_realization,
    write_instance, write_realization, GenioError,
};
use crate::geometry::Realization;
use crate::instance::DmdgpInstance;
use crate::sbbu::{sbbu_solve, SbbuOptions, SbbuSolution};

/// Extension of instance files picked up by `bench`.
pub const INSTANCE_EXTENSION: &str = "dmdgp";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: GenioError,
    },
    #[error("{0}")]
    Solver(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(_) => 1,
            _ => 2,
        }
    }
}

/// Mean relative deviation `(1/|E|) sum |‖x_i - x_j‖ - d_ij| / d_ij`.
pub fn mde(x: &Realization, instance: &DmdgpInstance) -> Result<f64, CliError> {
    if x.len() < instance.n() || x.dim() != instance.dim() {
        return Err(CliError::Usage(format!(
            "realization has {} points in dimension {}, instance needs {} in dimension {}",
            x.len(),
            x.dim(),
            instance.n(),
            instance.dim()
        )));
    }
    let m = instance.edge_count();
    if m == 0 {
        return Ok(0.0);
    }
    let sum: f64 = instance
        .edges()
        .map(|(e, d)| (x.distance(e.i, e.j) - d).abs() / d)
        .sum();
    Ok(sum / m as f64)
}

/// One line of the benchmark report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub id: String,
    #[serde(rename = "V")]
    pub vertices: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    pub bp_time: Option<f64>,
    pub bp_mde: Option<f64>,
    pub sbbu_time: Option<f64>,
    pub sbbu_mde: Option<f64>,
    #[serde(rename = "W_bar")]
    pub w_bar: Option<u128>,
    #[serde(rename = "W")]
    pub w: Option<u128>,
    pub speedup: Option<f64>,
}

#[derive(Debug, Serialize)]
struct HistogramRow<'a> {
    id: &'a str,
    span: usize,
    distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Bp,
    Sbbu,
}

#[derive(Debug, Parser)]
#[command(name = "dmdgp", version, about = "Discretizable distance geometry solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a random chain and write its instance.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        cutoff: f64,
        #[arg(long, env = "DMDGP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the sampled realization here.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Build a K=3 instance from the backbone of a PDB file.
    Convert {
        #[arg(long)]
        pdb: PathBuf,
        #[arg(long, default_value_t = 6.0)]
        cutoff: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve an instance and report time and MDE.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Sbbu)]
        algo: Algo,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        /// Print the per-edge trace.
        #[arg(long)]
        trace: bool,
        /// Write the realization here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the MDE of a realization file against an instance.
    Verify { file: PathBuf, realization: PathBuf },
    /// Run both solvers on every instance file in a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Seconds allowed per BP run.
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        /// Dump `span,distance` per edge for every instance.
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_instance(path: &Path) -> Result<DmdgpInstance, CliError> {
    read_instance(&read_text(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn limit(seconds: Option<f64>) -> Result<BpLimits, CliError> {
    match seconds {
        None => Ok(BpLimits::none()),
        Some(s) if s >= 0.0 && s.is_finite() => Ok(BpLimits::time(Duration::from_secs_f64(s))),
        Some(s) => Err(CliError::Usage(format!("invalid time limit {s}"))),
    }
}

pub fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        (values[m - 1] + values[m]) / 2.0
    }
}

/// Times `f` around the solve call only and returns the last result with the
/// median wall time.
fn timed<T, E>(
    repeats: usize,
    mut f: impl FnMut() -> Result<T, E>,
) -> Result<(T, f64), E> {
    let mut times = Vec::with_capacity(repeats.max(1));
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let out = f()?;
        times.push(start.elapsed().as_secs_f64());
        last = Some(out);
    }
    Ok((last.expect("at least one repeat"), median(times)))
}

fn run_bp(
    instance: &DmdgpInstance,
    tol: f64,
    limits: BpLimits,
    repeats: usize,
) -> Result<(Realization, f64), CliError> {
    timed(repeats, || bp_solve(instance, tol, limits))
        .map(|(s, t)| (s.realization, t))
        .map_err(|e| match e {
            BpError::Timeout { stats } => CliError::Solver(format!(
                "BP timeout after {:.3} s ({} nodes expanded)",
                stats.wall_time.as_secs_f64(),
                stats.nodes_expanded
            )),
            other => CliError::Solver(format!("BP failed: {other}")),
        })
}

fn run_sbbu(
    instance: &DmdgpInstance,
    tol: f64,
    repeats: usize,
) -> Result<(SbbuSolution, f64), CliError> {
    let options = SbbuOptions::with_tolerance(tol);
    timed(repeats, || sbbu_solve(instance, &options))
        .map_err(|e| CliError::Solver(format!("SBBU failed: {e}")))
}

fn cmd_solve(
    file: &Path,
    algo: Algo,
    tol: f64,
    time_limit: Option<f64>,
    repeats: usize,
    trace: bool,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let instance = load_instance(file)?;
    let limits = limit(time_limit)?;
    let realization = match algo {
        Algo::Bp => {
            let (x, t) = run_bp(&instance, tol, limits, repeats)?;
            println!("time_s {t:.6e}");
            x
        }
        Algo::Sbbu => {
            let (sol, t) = run_sbbu(&instance, tol, repeats)?;
            println!("time_s {t:.6e}");
            println!("W {}", sol.work.total());
            println!("W_bar {}", sol.work.max());
            if trace {
                println!("# edge skipped symmetry candidates best_residual");
                for e in &sol.trace {
                    println!(
                        "{} {} {} {} {:.3e}",
                        e.edge,
                        e.skipped,
                        e.symmetry_count(),
                        e.candidates_tested,
                        e.best_residual
                    );
                }
            }
            sol.realization
        }
    };
    println!("mde {:.6e}", mde(&realization, &instance)?);
    if let Some(path) = output {
        write_text(path, &write_realization(&realization))?;
    }
    Ok(())
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == INSTANCE_EXTENSION))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Usage(format!(
            "no *.{INSTANCE_EXTENSION} files in {}",
            dir.display()
        )));
    }
    Ok(files)
}

/// Benchmarks one instance; solver failures leave their columns empty.
pub fn bench_instance(
    id: &str,
    instance: &DmdgpInstance,
    tol: f64,
    repeats: usize,
    bp_limit: Duration,
) -> BenchRow {
    let bp = run_bp(instance, tol, BpLimits::time(bp_limit), repeats);
    if let Err(e) = &bp {
        log::warn!("{id}: {e}");
    }
    let sbbu = run_sbbu(instance, tol, repeats);
    if let Err(e) = &sbbu {
        log::warn!("{id}: {e}");
    }
    let bp = bp.ok();
    let sbbu = sbbu.ok();
    let bp_time = bp.as_ref().map(|b| b.1);
    let sbbu_time = sbbu.as_ref().map(|s| s.1);
    BenchRow {
        id: id.to_string(),
        vertices: instance.n(),
        edges: instance.edge_count(),
        bp_time,
        bp_mde: bp.as_ref().and_then(|(x, _)| mde(x, instance).ok()),
        sbbu_time,
        sbbu_mde: sbbu.as_ref().and_then(|(s, _)| mde(&s.realization, instance).ok()),
        w_bar: sbbu.as_ref().map(|(s, _)| s.work.max()),
        w: sbbu.as_ref().map(|(s, _)| s.work.total()),
        speedup: match (bp_time, sbbu_time) {
            (Some(b), Some(s)) if s > 0.0 => Some(b / s),
            _ => None,
        },
    }
}

fn cmd_bench(
    dir: &Path,
    tol: f64,
    output: &Path,
    repeats: usize,
    time_limit: f64,
    histogram: Option<&Path>,
) -> Result<(), CliError> {
    let bp_limit = match limit(Some(time_limit))?.time_limit {
        Some(d) => d,
        None => unreachable!("time limit was given"),
    };
    let mut report = csv::Writer::from_path(output)?;
    let mut hist = histogram.map(csv::Writer::from_path).transpose()?;
    for path in instance_files(dir)? {
        let instance = load_instance(&path)?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let row = bench_instance(&id, &instance, tol, repeats, bp_limit);
        println!(
            "{id}: bp {:?} s, sbbu {:?} s, W {:?}",
            row.bp_time, row.sbbu_time, row.w
        );
        report.serialize(&row)?;
        if let Some(h) = hist.as_mut() {
            for (e, d) in instance.edges() {
                h.serialize(HistogramRow {
                    id: &id,
                    span: e.span(),
                    distance: d,
                })?;
            }
        }
    }
    report.flush().map_err(|source| CliError::Io {
        path: output.to_path_buf(),
        source,
    })?;
    if let (Some(h), Some(path)) = (hist.as_mut(), histogram) {
        h.flush().map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate {
            n,
            k,
            cutoff,
            seed,
            output,
            truth,
        } => {
            let s = generate_synthetic(n, k, cutoff, seed).map_err(|e| CliError::Usage(e.to_string()))?;
            write_text(&output, &write_instance(&s.instance))?;
            if let Some(path) = truth {
                write_text(&path, &write_realization(&s.ground_truth))?;
            }
            println!(
                "wrote {} (n={}, |E|={}, pruning={})",
                output.display(),
                s.instance.n(),
                s.instance.edge_count(),
                s.instance.pruning_count()
            );
            Ok(())
        }
        Command::Convert {
            pdb,
            cutoff,
            output,
        } => {
            let structure = parse_pdb(&read_text(&pdb)?).map_err(|source| CliError::Parse {
                path: pdb.clone(),
                source,
            })?;
            let built = build_instance(&structure, cutoff).map_err(|source| CliError::Parse {
                path: pdb.clone(),
                source,
            })?;
            write_text(&output, &write_instance(&built.instance))?;
            println!(
                "wrote {} (|V|={}, |E|={}, degenerate windows={})",
                output.display(),
                built.instance.n(),
                built.instance.edge_count(),
                built.warnings.len()
            );
            Ok(())
        }
        Command::Solve {
            file,
            algo,
            tol,
            time_limit,
            repeats,
            trace,
            output,
        } => cmd_solve(&file, algo, tol, time_limit, repeats, trace, output.as_deref()),
        Command::Verify { file, realization } => {
            let instance = load_instance(&file)?;
            let x = read_realization(&read_text(&realization)?).map_err(|source| {
                CliError::Parse {
                    path: realization.clone(),
                    source,
                }
            })?;
            println!("mde {:.6e}", mde(&x, &instance)?);
            Ok(())
        }
        Command::Bench {
            dir,
            tol,
            output,
            repeats,
            time_limit,
            histogram,
        } => cmd_bench(&dir, tol, &output, repeats, time_limit, histogram.as_deref()),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mde_by_hand() {
        let inst = DmdgpInstance::new(2, 1, vec![((1, 2), 2.0)]).unwrap();
        let x = Realization::from_points(1, &[[0.0], [1.0]]).unwrap();
        assert_eq!(mde(&x, &inst).unwrap(), 0.5);
        let short = Realization::from_points(1, &[[0.0]]).unwrap();
        assert!(mde(&short, &inst).is_err());
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["dmdgp", "frobnicate"]), 2);
        assert_eq!(run(["dmdgp", "solve"]), 2);
        assert_eq!(run(["dmdgp", "--help"]), 0);
    }
}
