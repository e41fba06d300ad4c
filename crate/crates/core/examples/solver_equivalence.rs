//! Lifted and complex-native solvers produce the same iterates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use reallin::solvers::{cg_complex, cg_real, landweber_complex, landweber_real, lsqr_complex, lsqr_real, SolverConfig};
use reallin::{lift_vector, rel_diff, CMatrix, LiftedMatrix, MatrixFormOp, MultCounter, RealLinearOp, C64};

fn main() -> reallin::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut draw = || C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng));
    let (m, n) = (40, 12);
    let form = MatrixFormOp::new(CMatrix::from_fn(m, n, |_, _| draw()), CMatrix::from_fn(m, n, |_, _| draw()))?;
    let b: Vec<C64> = (0..m).map(|_| draw()).collect();
    let op = RealLinearOp::matrix(form.clone());
    let lifted = LiftedMatrix::from_matrix_form(&form);
    let (x0, x0l) = (vec![C64::new(0., 0.); n], vec![0.0; 2 * n]);
    let bl = lift_vector(&b);

    let cfg = SolverConfig::with_iters(20);
    let runs = [
        ("landweber", landweber_complex(&op, &b, &x0, &cfg, &MultCounter::new())?, landweber_real(&lifted, &bl, &x0l, &cfg, &MultCounter::new())?),
        ("cg", cg_complex(&op, &b, &x0, &cfg, &MultCounter::new())?, cg_real(&lifted, &bl, &x0l, &cfg, &MultCounter::new())?),
        ("lsqr", lsqr_complex(&op, &b, &x0, &cfg, &MultCounter::new())?, lsqr_real(&lifted, &bl, &x0l, &cfg, &MultCounter::new())?),
    ];
    for (name, complex, real) in runs {
        let worst = complex
            .records
            .iter()
            .zip(&real.records)
            .map(|(p, q)| rel_diff(&p.iterate, &q.iterate))
            .collect::<reallin::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!(
            "{name:<10} final cost {:.10e}  mults complex {:>9} lifted {:>9}  max rel_diff {worst:.1e}",
            complex.final_record().cost,
            complex.final_record().cum_real_mults,
            real.final_record().cum_real_mults,
        );
    }
    Ok(())
}
