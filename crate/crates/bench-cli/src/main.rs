use std::path::{Path, PathBuf};
use std::process::ExitCode;

use circumsphere::oracle::RESIDUAL_TOLERANCE;
use circumsphere::{verify_vertices, Coords, VecN};
use clap::{Parser, Subcommand};
use serde::Serialize;

use circumsphere_bench::dispatch::{compute, error_kind};
use circumsphere_bench::input::read_input;
use circumsphere_bench::{emit_report, run_suite, sqrt_share, Family, HarnessError, Method, OutputFormat};

const EXIT_RESIDUAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ALL_DEGENERATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "circumsphere",
    version,
    about = "Circumscribed spheres: compute, verify and benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the circumsphere of every simplex in a file.
    Compute {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Report the radius instead of its square.
        #[arg(long)]
        radius: bool,
        #[arg(long, value_enum, default_value = "csv")]
        output: OutputFormat,
    },
    /// Time one or more methods on a generated batch.
    Bench {
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        method: Vec<Method>,
        #[arg(long, value_enum, default_value = "uniform")]
        family: Family,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also time the path that takes the square root.
        #[arg(long)]
        radius: bool,
        #[arg(long, value_enum, default_value = "csv")]
        output: OutputFormat,
    },
    /// Run every applicable method and oracle on each simplex in a file.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Compute {
            method,
            input,
            dim,
            radius,
            output,
        } => run_compute(method, &input, dim, radius, output),
        Command::Bench {
            method,
            family,
            count,
            dim,
            seed,
            radius,
            output,
        } => run_bench(&method, family, count, dim, seed, radius, output),
        Command::Verify { input, dim } => run_verify(&input, dim),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[derive(Serialize)]
struct ComputeResult {
    index: usize,
    line: usize,
    status: String,
    value: Option<f64>,
    center: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct ComputeOutput<'a> {
    method: &'a str,
    dim: usize,
    quantity: &'a str,
    results: Vec<ComputeResult>,
}

fn run_compute(
    method: Method,
    path: &Path,
    dim: usize,
    radius: bool,
    output: OutputFormat,
) -> Result<u8, HarnessError> {
    if let Some(d) = method.fixed_dim() {
        if d != dim {
            return Err(HarnessError::Usage(format!("method {method} requires --dim {d}")));
        }
    }
    let file = read_input(path, dim)?;
    let mut results = Vec::with_capacity(file.simplices.len());
    for (i, (coords, line)) in file.simplices.iter().zip(&file.lines).enumerate() {
        results.push(match compute(method, coords, dim) {
            Ok(s) => ComputeResult {
                index: i,
                line: *line,
                status: "ok".into(),
                value: Some(if radius { s.radius() } else { s.radius_sq }),
                center: Some(s.center.as_slice().to_vec()),
            },
            Err(e) if e.is_degenerate() => ComputeResult {
                index: i,
                line: *line,
                status: error_kind(&e).into(),
                value: None,
                center: None,
            },
            Err(e) => {
                return Err(HarnessError::Parse {
                    line: *line,
                    message: e.to_string(),
                })
            }
        });
    }
    let quantity = if radius { "radius" } else { "radius_sq" };
    match output {
        OutputFormat::Json => {
            let out = ComputeOutput {
                method: method.name(),
                dim,
                quantity,
                results,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&out).map_err(|e| HarnessError::Report(e.to_string()))?
            );
            return Ok(exit_for_compute(&out.results));
        }
        OutputFormat::Csv => {
            let mut header = vec!["index".to_string(), "line".into(), "status".into(), quantity.into()];
            header.extend((0..dim).map(|j| format!("center_{j}")));
            println!("{}", header.join(","));
            for r in &results {
                let mut fields = vec![r.index.to_string(), r.line.to_string(), r.status.clone()];
                fields.push(r.value.map(|v| format!("{v:.16e}")).unwrap_or_default());
                match &r.center {
                    Some(c) => fields.extend(c.iter().map(|x| format!("{x:.16e}"))),
                    None => fields.extend((0..dim).map(|_| String::new())),
                }
                println!("{}", fields.join(","));
            }
        }
    }
    Ok(exit_for_compute(&results))
}

fn exit_for_compute(results: &[ComputeResult]) -> u8 {
    if !results.is_empty() && results.iter().all(|r| r.value.is_none()) {
        EXIT_ALL_DEGENERATE
    } else {
        0
    }
}

#[allow(clippy::too_many_arguments)]
fn run_bench(
    methods: &[Method],
    family: Family,
    count: usize,
    dim: usize,
    seed: u64,
    radius: bool,
    output: OutputFormat,
) -> Result<u8, HarnessError> {
    let (report, runs) = run_suite(methods, family, count, dim, seed, radius)?;
    print!("{}", emit_report(&report, output)?);
    if output == OutputFormat::Json {
        println!();
    }
    for (m, run) in methods.iter().zip(&runs) {
        if run.rejected > 0 {
            eprintln!(
                "{m}: {} uniform draws rejected by the conditioning filter",
                run.rejected
            );
        }
        for (kind, n) in &run.failure_kinds {
            eprintln!("{m}: {n} failed with {kind}");
        }
        let family = family.name();
        if let Some(row) = report.row(m.name(), family) {
            if let Some(s) = row.speedup_vs_standard {
                eprintln!("{m}: speedup vs standard {s:.3}x");
            }
        }
        if let Some(share) = sqrt_share(&report, m.name(), family) {
            eprintln!("{m}: square root share of r path {:.1}%", 100.0 * share);
        }
    }
    let main_rows = report.rows.iter().filter(|r| !r.family.contains(':'));
    if main_rows.clone().all(|r| r.failures == r.count) {
        return Ok(EXIT_ALL_DEGENERATE);
    }
    if family == Family::Uniform && main_rows.filter_map(|r| r.max_resid).any(|r| r > RESIDUAL_TOLERANCE) {
        return Ok(EXIT_RESIDUAL);
    }
    Ok(0)
}

fn run_verify(path: &Path, dim: usize) -> Result<u8, HarnessError> {
    let file = read_input(path, dim)?;
    let (mut breaches, mut degenerate) = (0, 0);
    println!("line\tstatus\tworst\tequidistance\toracle_radius\tcayley_menger\thull");
    for (coords, line) in file.simplices.iter().zip(&file.lines) {
        let vertices = coords
            .chunks_exact(dim)
            .map(|c| VecN::new(c.to_vec()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| HarnessError::Parse {
                line: *line,
                message: e.to_string(),
            })?;
        match verify_vertices(&vertices) {
            Ok(r) => {
                let ok = r.passes(RESIDUAL_TOLERANCE);
                breaches += usize::from(!ok);
                let cm = r
                    .cayley_menger_rel
                    .map(|c| format!("{c:.3e}"))
                    .unwrap_or_else(|| "-".into());
                println!(
                    "{line}\t{}\t{:.3e}\t{:.3e}\t{:.3e}\t{cm}\t{:.3e}",
                    if ok { "ok" } else { "BREACH" },
                    r.worst(),
                    r.max_equidistance_rel,
                    r.oracle_radius_rel_err,
                    r.center_hull_residual
                );
            }
            Err(e) if e.is_degenerate() => {
                degenerate += 1;
                println!("{line}\t{}\t-\t-\t-\t-\t-", error_kind(&e));
            }
            Err(e) => {
                return Err(HarnessError::Parse {
                    line: *line,
                    message: e.to_string(),
                })
            }
        }
    }
    let total = file.simplices.len();
    eprintln!(
        "{total} simplices: {} passed, {breaches} breached, {degenerate} degenerate",
        total - breaches - degenerate
    );
    Ok(if breaches > 0 {
        EXIT_RESIDUAL
    } else if total > 0 && degenerate == total {
        EXIT_ALL_DEGENERATE
    } else {
        0
    })
}
