//! Four-way comparison on a small random problem, with a dense oracle check.

use reallin::bench::{generate_problem, oracle_solve, run_benchmark, write_metrics, BenchConfig, Dims};
use reallin::rel_diff;

fn main() -> reallin::Result<()> {
    let dims = Dims { n: 20, m1: 400, m2: 600, p: 40 };
    let problem = generate_problem(1, dims, 1e-3)?;
    let report = run_benchmark(&problem, &BenchConfig { timing_repeats: 1, ..BenchConfig::default() })?;
    let oracle = oracle_solve(&problem)?;
    for run in &report.runs {
        let last = run.trace.final_record();
        println!(
            "{:<16} {:<10} mults {:>10}  cost {:.10e}  vs oracle {:.1e}",
            run.approach.as_str(),
            run.solver.as_str(),
            last.cum_real_mults,
            last.cost,
            rel_diff(&last.iterate, &oracle)?
        );
    }
    let path = std::env::temp_dir().join("reallin-benchmark.csv");
    write_metrics(&report.rows, &path)?;
    println!("wrote {}", path.display());
    Ok(())
}
