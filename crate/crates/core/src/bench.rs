//! Four-way benchmark on the conjugate-symmetric regularized system
//! `min ‖A·x − b‖² + λ‖C·x − D·conj(E·x)‖²`.
//!
//! The same operator is evaluated four ways:
//!
//! | approach | representation |
//! |---|---|
//! | `real-matrix` | dense lifted matrix `Ã` |
//! | `complex-matrix` | `F = [A; √λC]`, `G = [0; −√λ·conj(D)E]` |
//! | `real-funcall` | lifted operator built from naive re/im calls to the constituent products |
//! | `complex-funcall` | the operator algebra over the constituent products |

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::builtins::conjugate_symmetric_from_blackboxes;
use crate::counter::MultCounter;
use crate::dense::CMatrix;
use crate::error::{check_len, Error, Result};
use crate::funcall::FuncallLiftedOp;
use crate::lift::{conjugate_symmetric_lifted, lift_vector, unlift_vector, LiftedMatrix, LiftedOperator};
use crate::operator::{BlackboxOp, MatrixFormOp, RealLinearOp};
use crate::solvers::{
    cg_complex, cg_real, estimate_step_size, landweber_complex, landweber_real, lsqr_complex,
    lsqr_real, SolverConfig, SolverTrace,
};
use crate::vector::{self, rel_diff};
use crate::C64;

/// Problem sizes: `A` is `m1×n`, `C` is `m2×n`, `D` is `m2×p`, `E` is `p×n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub n: usize,
    pub m1: usize,
    pub m2: usize,
    pub p: usize,
}

impl Dims {
    pub const PAPER: Dims = Dims {
        n: 1000,
        m1: 20000,
        m2: 30000,
        p: 2000,
    };
    pub const DESK: Dims = Dims {
        n: 100,
        m1: 2000,
        m2: 3000,
        p: 200,
    };
}

impl FromStr for Dims {
    type Err = Error;

    /// Parses `N,M1,M2,P`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidParameter(format!("dims `{s}`: {e}")))?;
        match parts[..] {
            [n, m1, m2, p] => Ok(Dims { n, m1, m2, p }),
            _ => Err(Error::InvalidParameter(format!(
                "dims `{s}`: expected four comma-separated values N,M1,M2,P"
            ))),
        }
    }
}

pub const DEFAULT_LAMBDA: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct BenchProblem {
    pub a: CMatrix,
    pub c: CMatrix,
    pub d: CMatrix,
    pub e: CMatrix,
    pub x_true: Vec<C64>,
    pub noise: Vec<C64>,
    /// `A·x_true + noise`
    pub b: Vec<C64>,
    pub lambda: f64,
    pub seed: u64,
}

/// Draws every entry with i.i.d. standard Gaussian real and imaginary parts.
///
/// Draw order is `x_true`, `A`, `C`, `D`, `E`, noise, each row-major with the
/// real part first.
pub fn generate_problem(seed: u64, dims: Dims, lambda: f64) -> Result<BenchProblem> {
    let Dims { n, m1, m2, p } = dims;
    if n == 0 || m1 == 0 || m2 == 0 || p == 0 {
        return Err(Error::InvalidParameter(format!(
            "problem dimensions must be positive, got N={n}, M1={m1}, M2={m2}, P={p}"
        )));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "regularization weight must be positive and finite, got {lambda}"
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut draw = move || C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng));
    let x_true: Vec<C64> = (0..n).map(|_| draw()).collect();
    let a = CMatrix::from_fn(m1, n, |_, _| draw());
    let c = CMatrix::from_fn(m2, n, |_, _| draw());
    let d = CMatrix::from_fn(m2, p, |_, _| draw());
    let e = CMatrix::from_fn(p, n, |_, _| draw());
    let noise: Vec<C64> = (0..m1).map(|_| draw()).collect();
    let mut b = a.matvec(&x_true);
    vector::add_assign(&mut b, &noise);
    Ok(BenchProblem {
        a,
        c,
        d,
        e,
        x_true,
        noise,
        b,
        lambda,
        seed,
    })
}

impl BenchProblem {
    pub fn dims(&self) -> Dims {
        Dims {
            n: self.a.cols(),
            m1: self.a.rows(),
            m2: self.c.rows(),
            p: self.e.rows(),
        }
    }

    /// Right-hand side of the stacked system, `[b; 0]`.
    pub fn stacked_data(&self) -> Vec<C64> {
        let mut y = self.b.clone();
        y.resize(self.b.len() + self.c.rows(), C64::new(0.0, 0.0));
        y
    }

    /// `F = [A; √λC]`, `G = [0; −√λ·conj(D)·E]`.
    pub fn matrix_form(&self) -> Result<MatrixFormOp> {
        let s = self.lambda.sqrt();
        let f = CMatrix::vstack(&[&self.a, &self.c.scale(C64::new(s, 0.0))])?;
        let g_lower = self.d.conj().matmul(&self.e)?.scale(C64::new(-s, 0.0));
        let g = CMatrix::vstack(&[&CMatrix::zeros(self.a.rows(), self.a.cols()), &g_lower])?;
        MatrixFormOp::new(f, g)
    }

    /// Dense lifted matrix of the stacked system.
    pub fn lifted_matrix(&self) -> Result<LiftedMatrix> {
        conjugate_symmetric_lifted(&self.a, &self.c, &self.d, &self.e, self.lambda)
    }

    fn blackboxes(&self) -> [BlackboxOp; 4] {
        [&self.a, &self.c, &self.d, &self.e].map(|m| BlackboxOp::from_matrix(m.clone()))
    }

    pub fn build(&self, approach: ApproachId) -> Result<BuiltOperator> {
        Ok(match approach {
            ApproachId::RealMatrix => BuiltOperator::Lifted(Box::new(self.lifted_matrix()?)),
            ApproachId::ComplexMatrix => BuiltOperator::Complex(RealLinearOp::matrix(self.matrix_form()?)),
            ApproachId::RealFuncall => {
                let [a, c, d, e] = self.blackboxes();
                BuiltOperator::Lifted(Box::new(FuncallLiftedOp::conjugate_symmetric(
                    &a,
                    &c,
                    &d,
                    &e,
                    self.lambda,
                )?))
            }
            ApproachId::ComplexFuncall => {
                let [a, c, d, e] = self.blackboxes();
                BuiltOperator::Complex(conjugate_symmetric_from_blackboxes(&a, &c, &d, &e, self.lambda)?)
            }
        })
    }
}

/// One of the four representations of the benchmark operator.
pub enum BuiltOperator {
    Lifted(Box<dyn LiftedOperator + Send + Sync>),
    Complex(RealLinearOp),
}

impl BuiltOperator {
    /// Runs `solver` from `x₀ = 0` against the complex data `y`.
    pub fn solve(
        &self,
        solver: SolverKind,
        y: &[C64],
        config: &SolverConfig,
        counter: &MultCounter,
    ) -> Result<SolverTrace> {
        match self {
            BuiltOperator::Lifted(op) => {
                let b = lift_vector(y);
                let x0 = vec![0.0; op.cols()];
                let op = op.as_ref();
                match solver {
                    SolverKind::Landweber => landweber_real(op, &b, &x0, config, counter),
                    SolverKind::Cg => cg_real(op, &b, &x0, config, counter),
                    SolverKind::Lsqr => lsqr_real(op, &b, &x0, config, counter),
                }
            }
            BuiltOperator::Complex(op) => {
                let x0 = vec![C64::new(0.0, 0.0); op.cols()];
                match solver {
                    SolverKind::Landweber => landweber_complex(op, y, &x0, config, counter),
                    SolverKind::Cg => cg_complex(op, y, &x0, config, counter),
                    SolverKind::Lsqr => lsqr_complex(op, y, &x0, config, counter),
                }
            }
        }
    }
}

macro_rules! named_enum {
    ($(#[$m:meta])* $name:ident, $kind:literal, { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.trim() {
                    $($text => Ok($name::$variant),)+
                    other => Err(Error::Unknown { kind: $kind, name: other.to_string() }),
                }
            }
        }
    };
}

named_enum!(ApproachId, "approach", {
    RealMatrix => "real-matrix",
    ComplexMatrix => "complex-matrix",
    RealFuncall => "real-funcall",
    ComplexFuncall => "complex-funcall",
});

named_enum!(SolverKind, "solver", {
    Landweber => "landweber",
    Cg => "cg",
    Lsqr => "lsqr",
});

/// Parses a comma-separated list such as `cg,lsqr`, keeping first occurrences.
pub fn parse_list<T: FromStr<Err = Error> + PartialEq>(s: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for item in s.split(',').filter(|t| !t.trim().is_empty()) {
        let v = item.parse()?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub solvers: Vec<SolverKind>,
    pub approaches: Vec<ApproachId>,
    pub iters_landweber: usize,
    pub iters_krylov: usize,
    /// Timed reruns per (approach, solver). Zero skips timing and reports NaN.
    pub timing_repeats: usize,
    /// Landweber step; `None` estimates it once from the complex-matrix form.
    pub step_size: Option<f64>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            solvers: SolverKind::ALL.to_vec(),
            approaches: ApproachId::ALL.to_vec(),
            iters_landweber: 50,
            iters_krylov: 15,
            timing_repeats: 3,
            step_size: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRow {
    pub approach: ApproachId,
    pub solver: SolverKind,
    pub iteration: usize,
    pub cum_real_mults: u64,
    pub cost: f64,
    pub elapsed_seconds: f64,
    /// Against the `real-matrix` iterate at the same iteration.
    pub rel_diff: f64,
}

#[derive(Clone, Debug)]
pub struct BenchRun {
    pub approach: ApproachId,
    pub solver: SolverKind,
    pub trace: SolverTrace,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub rows: Vec<MetricsRow>,
    pub runs: Vec<BenchRun>,
    /// Landweber step shared by all approaches.
    pub step_size: Option<f64>,
}

impl BenchReport {
    pub fn run(&self, approach: ApproachId, solver: SolverKind) -> Option<&BenchRun> {
        self.runs
            .iter()
            .find(|r| r.approach == approach && r.solver == solver)
    }
}

/// Runs each requested (approach, solver) pair.
///
/// A first untimed pass runs all pairs concurrently and supplies iterates,
/// costs and multiplication counts. Timings come from serial reruns and are
/// averaged per iteration.
pub fn run_benchmark(problem: &BenchProblem, config: &BenchConfig) -> Result<BenchReport> {
    let y = problem.stacked_data();
    let solvers = config.solvers.clone();
    let step_size = match (solvers.contains(&SolverKind::Landweber), config.step_size) {
        (false, _) => None,
        (true, Some(a)) => Some(a),
        (true, None) => Some(estimate_step_size(&RealLinearOp::matrix(problem.matrix_form()?))?.alpha),
    };
    let solver_config = |s: SolverKind| match s {
        SolverKind::Landweber => {
            let c = SolverConfig::with_iters(config.iters_landweber);
            match step_size {
                Some(a) => c.step_size(a),
                None => c,
            }
        }
        _ => SolverConfig::with_iters(config.iters_krylov),
    };

    // The reference approach runs even when not requested so rel_diff is defined.
    let mut approaches = config.approaches.clone();
    if !approaches.contains(&ApproachId::RealMatrix) && !approaches.is_empty() {
        approaches.push(ApproachId::RealMatrix);
    }
    let ops: Vec<(ApproachId, BuiltOperator)> = approaches
        .iter()
        .map(|&a| problem.build(a).map(|op| (a, op)))
        .collect::<Result<_>>()?;

    let pairs: Vec<(usize, SolverKind)> = (0..ops.len())
        .flat_map(|i| solvers.iter().map(move |&s| (i, s)))
        .collect();
    let traces: Vec<Result<SolverTrace>> = std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .iter()
            .map(|&(i, s)| {
                let (op, y, cfg) = (&ops[i].1, &y, solver_config(s));
                scope.spawn(move || op.solve(s, y, &cfg, &MultCounter::new()))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });
    let mut runs = Vec::with_capacity(pairs.len());
    for (&(i, solver), trace) in pairs.iter().zip(traces) {
        runs.push(BenchRun {
            approach: ops[i].0,
            solver,
            trace: trace?,
        });
    }

    let mut rows = Vec::new();
    for &(i, solver) in &pairs {
        let approach = ops[i].0;
        if !config.approaches.contains(&approach) {
            continue;
        }
        let elapsed = timed_elapsed(&ops[i].1, solver, &y, &solver_config(solver), config.timing_repeats)?;
        let run = runs
            .iter()
            .find(|r| r.approach == approach && r.solver == solver)
            .expect("every pair was run");
        let reference = runs
            .iter()
            .find(|r| r.approach == ApproachId::RealMatrix && r.solver == solver)
            .expect("reference approach always runs");
        for (k, rec) in run.trace.records.iter().enumerate() {
            let rel = match reference.trace.records.get(k) {
                Some(r) => rel_diff(&rec.iterate, &r.iterate)?,
                None => f64::NAN,
            };
            rows.push(MetricsRow {
                approach,
                solver,
                iteration: rec.k,
                cum_real_mults: rec.cum_real_mults,
                cost: rec.cost,
                elapsed_seconds: elapsed.get(k).copied().unwrap_or(f64::NAN),
                rel_diff: rel,
            });
        }
    }
    rows.sort_by_key(|r| (r.approach, r.solver, r.iteration));
    runs.retain(|r| config.approaches.contains(&r.approach));
    Ok(BenchReport {
        rows,
        runs,
        step_size,
    })
}

fn timed_elapsed(
    op: &BuiltOperator,
    solver: SolverKind,
    y: &[C64],
    config: &SolverConfig,
    repeats: usize,
) -> Result<Vec<f64>> {
    let mut sums: Vec<f64> = Vec::new();
    for _ in 0..repeats {
        let trace = op.solve(solver, y, config, &MultCounter::new())?;
        if sums.is_empty() {
            sums = vec![0.0; trace.records.len()];
        }
        for (s, r) in sums.iter_mut().zip(&trace.records) {
            *s += r.elapsed_seconds;
        }
    }
    Ok(sums.into_iter().map(|s| s / repeats as f64).collect())
}

/// Dense least-squares solve of `min ‖A(x) − b‖²` through the lifted normal
/// equations `(ÃᵀÃ)·x̃ = Ãᵀb̃`.
pub fn lifted_least_squares(lifted: &LiftedMatrix, b: &[C64]) -> Result<Vec<C64>> {
    check_len("lifted_least_squares: data length", lifted.complex_rows(), b.len())?;
    vector::check_finite("lifted_least_squares: data", b)?;
    let m = lifted.matrix();
    let a = DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice());
    let gram = a.tr_mul(&a);
    let rhs = a.tr_mul(&DMatrix::from_column_slice(b.len() * 2, 1, &lift_vector(b)));

    let eig = gram.clone().symmetric_eigenvalues();
    let (lo, hi) = eig
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v.abs())));
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(condition < 1.0 / f64::EPSILON) {
        return Err(Error::Singular { condition });
    }
    let chol = gram.cholesky().ok_or(Error::Singular { condition })?;
    let x = chol.solve(&rhs);
    unlift_vector(x.as_slice())
}

/// Global minimizer of the benchmark problem by dense solve.
pub fn oracle_solve(problem: &BenchProblem) -> Result<Vec<C64>> {
    lifted_least_squares(&problem.lifted_matrix()?, &problem.stacked_data())
}

const HEADER: [&str; 7] = [
    "approach",
    "solver",
    "iteration",
    "cum_real_mults",
    "cost",
    "elapsed_seconds",
    "rel_diff",
];

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes rows sorted by (approach, solver, iteration), floats with 17
/// significant digits.
pub fn write_metrics(rows: &[MetricsRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut sorted: Vec<&MetricsRow> = rows.iter().collect();
    sorted.sort_by_key(|r| (r.approach, r.solver, r.iteration));
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(HEADER).map_err(csv_err(path))?;
    for r in sorted {
        w.write_record([
            r.approach.to_string(),
            r.solver.to_string(),
            r.iteration.to_string(),
            r.cum_real_mults.to_string(),
            format!("{:.16e}", r.cost),
            format!("{:.16e}", r.elapsed_seconds),
            format!("{:.16e}", r.rel_diff),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_metrics(path: impl AsRef<Path>) -> Result<Vec<MetricsRow>> {
    let path = path.as_ref();
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let bad = |what: &str, v: &str| Error::InvalidParameter(format!("{}: bad {what} `{v}`", path.display()));
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err(path))?;
        if rec.len() != HEADER.len() {
            return Err(bad("record length", &rec.len().to_string()));
        }
        let float = |i: usize| rec[i].parse::<f64>().map_err(|_| bad(HEADER[i], &rec[i]));
        rows.push(MetricsRow {
            approach: rec[0].parse()?,
            solver: rec[1].parse()?,
            iteration: rec[2].parse().map_err(|_| bad("iteration", &rec[2]))?,
            cum_real_mults: rec[3].parse().map_err(|_| bad("cum_real_mults", &rec[3]))?,
            cost: float(4)?,
            elapsed_seconds: float(5)?,
            rel_diff: float(6)?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: Dims = Dims {
        n: 4,
        m1: 12,
        m2: 10,
        p: 5,
    };

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn generation_is_deterministic() {
        let p = generate_problem(7, TINY, 1e-3).unwrap();
        let q = generate_problem(7, TINY, 1e-3).unwrap();
        assert_eq!(p.a, q.a);
        assert_eq!(p.b, q.b);
        assert_ne!(generate_problem(8, TINY, 1e-3).unwrap().a, p.a);
        let mut expected = p.a.matvec(&p.x_true);
        vector::add_assign(&mut expected, &p.noise);
        assert_eq!(p.b, expected);
    }

    #[test]
    fn generation_rejects_bad_input() {
        assert!(generate_problem(0, Dims { n: 0, ..TINY }, 1e-3).is_err());
        assert!(generate_problem(0, TINY, 0.0).is_err());
        assert!(generate_problem(0, TINY, -1.0).is_err());
    }

    #[test]
    fn names_round_trip() {
        for &a in ApproachId::ALL {
            assert_eq!(a.as_str().parse::<ApproachId>().unwrap(), a);
        }
        for &s in SolverKind::ALL {
            assert_eq!(s.to_string().parse::<SolverKind>().unwrap(), s);
        }
        assert!(matches!("gmres".parse::<SolverKind>(), Err(Error::Unknown { .. })));
        assert_eq!(parse_list::<SolverKind>("cg,lsqr,cg").unwrap(), vec![SolverKind::Cg, SolverKind::Lsqr]);
        assert_eq!("1,2,3,4".parse::<Dims>().unwrap(), Dims { n: 1, m1: 2, m2: 3, p: 4 });
        assert!("1,2,3".parse::<Dims>().is_err());
    }

    #[test]
    fn matrix_form_matches_lifted() {
        let p = generate_problem(3, TINY, 0.5).unwrap();
        let from_form = LiftedMatrix::from_matrix_form(&p.matrix_form().unwrap());
        assert!(from_form.matrix().max_abs_diff(p.lifted_matrix().unwrap().matrix()) < 1e-13);
    }

    #[test]
    fn oracle_closed_forms() {
        let b = [c(1., 2.), c(-3., 0.5)];
        let conj = LiftedMatrix::from_matrix_form(&MatrixFormOp::antilinear(CMatrix::identity(2)));
        let x = lifted_least_squares(&conj, &b).unwrap();
        assert!(rel_diff(&x, &[c(1., -2.), c(-3., -0.5)]).unwrap() < 1e-15);
        let id = LiftedMatrix::from_matrix_form(&MatrixFormOp::linear(CMatrix::identity(2)));
        assert!(rel_diff(&lifted_least_squares(&id, &b).unwrap(), &b).unwrap() < 1e-15);
    }

    #[test]
    fn oracle_rejects_singular() {
        let zero = LiftedMatrix::from_matrix_form(&MatrixFormOp::zero(2, 2).unwrap());
        let r = lifted_least_squares(&zero, &[c(1., 0.), c(0., 1.)]);
        assert!(matches!(r, Err(Error::Singular { .. })));
    }

    #[test]
    fn zero_iterations_gives_initial_cost() {
        let p = generate_problem(1, TINY, 1e-3).unwrap();
        let cfg = BenchConfig {
            solvers: vec![SolverKind::Cg],
            approaches: vec![ApproachId::ComplexMatrix],
            iters_landweber: 0,
            iters_krylov: 0,
            timing_repeats: 1,
            step_size: None,
        };
        let rows = run_benchmark(&p, &cfg).unwrap().rows;
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].cost, vector::norm_sqr(&p.b));
    }

    #[test]
    fn csv_round_trip() {
        let dir = std::env::temp_dir().join(format!("reallin-bench-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rows.csv");
        write_metrics(&[], &path).unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap().trim(),
            "approach,solver,iteration,cum_real_mults,cost,elapsed_seconds,rel_diff"
        );
        let row = MetricsRow {
            approach: ApproachId::RealFuncall,
            solver: SolverKind::Lsqr,
            iteration: 3,
            cum_real_mults: 123_456_789,
            cost: 0.1 + 0.2,
            elapsed_seconds: 1.0 / 3.0,
            rel_diff: 2.5e-16,
        };
        write_metrics(std::slice::from_ref(&row), &path).unwrap();
        assert_eq!(read_metrics(&path).unwrap(), vec![row]);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
