use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use reallin::bench::{
    generate_problem, oracle_solve, parse_list, run_benchmark, write_metrics, ApproachId,
    BenchConfig, Dims, SolverKind, DEFAULT_LAMBDA,
};
use reallin::vector::norm;

const VALIDATE_THRESHOLD: f64 = 1e-4;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Scale {
    Paper,
    Desk,
    Custom,
}

/// Compare lifted and complex-native least-squares solvers on a random
/// conjugate-symmetric regularized problem.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Scale::Desk)]
    scale: Scale,
    /// N,M1,M2,P; required with --scale custom
    #[arg(long)]
    dims: Option<String>,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    lambda: f64,
    #[arg(long, default_value = "landweber,cg,lsqr")]
    solvers: String,
    #[arg(long, default_value = "real-matrix,complex-matrix,real-funcall,complex-funcall")]
    approaches: String,
    #[arg(long, default_value_t = 50)]
    iters_landweber: usize,
    #[arg(long, default_value_t = 15)]
    iters_krylov: usize,
    #[arg(long, default_value_t = 3)]
    timing_repeats: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare final iterates against a dense solve; CG and LSQR must be within 1e-4
    #[arg(long)]
    validate: bool,
}

fn run(args: Args) -> Result<bool, Box<dyn std::error::Error>> {
    let dims = match (args.scale, args.dims.as_deref()) {
        (Scale::Custom, Some(d)) => d.parse::<Dims>()?,
        (Scale::Custom, None) => return Err("--scale custom requires --dims N,M1,M2,P".into()),
        (_, Some(_)) => return Err("--dims is only valid with --scale custom".into()),
        (Scale::Paper, None) => Dims::PAPER,
        (Scale::Desk, None) => Dims::DESK,
    };
    let config = BenchConfig {
        solvers: parse_list::<SolverKind>(&args.solvers)?,
        approaches: parse_list::<ApproachId>(&args.approaches)?,
        iters_landweber: args.iters_landweber,
        iters_krylov: args.iters_krylov,
        timing_repeats: args.timing_repeats,
        step_size: None,
    };
    let problem = generate_problem(args.seed, dims, args.lambda)?;
    let report = run_benchmark(&problem, &config)?;

    println!("approach         solver     iters  real_mults        cost                   seconds    max_rel_diff");
    for run in &report.runs {
        let rows: Vec<_> = report
            .rows
            .iter()
            .filter(|r| r.approach == run.approach && r.solver == run.solver)
            .collect();
        let last = rows.last().expect("every run has an initial record");
        let max_rel = rows.iter().map(|r| r.rel_diff).fold(0.0, f64::max);
        println!(
            "{:<16} {:<10} {:>5}  {:>16}  {:<22.15e} {:<10.4} {:.3e}",
            run.approach.as_str(),
            run.solver.as_str(),
            last.iteration,
            last.cum_real_mults,
            last.cost,
            last.elapsed_seconds,
            max_rel
        );
    }

    if let Some(path) = &args.out {
        write_metrics(&report.rows, path)?;
        println!("wrote {} rows to {}", report.rows.len(), path.display());
    }

    let mut ok = true;
    if args.validate {
        let oracle = oracle_solve(&problem)?;
        let scale = norm(&oracle);
        for run in &report.runs {
            let x = run.trace.final_iterate();
            let dev = x.iter().zip(&oracle).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt() / scale;
            let gated = run.solver != SolverKind::Landweber;
            let pass = !gated || dev <= VALIDATE_THRESHOLD;
            ok &= pass;
            println!(
                "validate {:<16} {:<10} deviation {:.3e}{}",
                run.approach.as_str(),
                run.solver.as_str(),
                dev,
                match (gated, pass) {
                    (false, _) => "",
                    (true, true) => " ok",
                    (true, false) => " FAIL",
                }
            );
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: validation exceeded relative deviation {VALIDATE_THRESHOLD:e}");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
