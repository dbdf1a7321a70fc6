//! Long-run behaviour of `Mᵐ x`.
//!
//! In a Jordan basis adapted to `V = span(ξ) ⊕ S3`, blocks with `|λ| < 1`
//! vanish under powering, blocks with `|λ| = 1, λ ≠ 1` rotate forever, and a
//! non-trivial block at `λ = 1` grows. Classification here is matrix-level:
//! it answers for the worst start vector. Per-start behaviour is observed by
//! [`simulate_power`].

use num_complex::Complex64;

use crate::config::AnalysisConfig;
use crate::decomposition::{decompose, fixed_space_projection, stationary_distribution};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::sets::in_s2;
use crate::spectral::{geometric_multiplicity, spectrum, Spectrum};
use crate::validation::{ProbabilityVector, StochasticMatrix};

#[derive(Debug, Clone, PartialEq)]
pub enum NonConvergence {
    /// Eigenvalues of modulus one other than λ = 1.
    UnitModulusOther(Vec<Complex64>),
    /// λ = 1 has a non-trivial Jordan block.
    DefectiveOne { algebraic: usize, geometric: usize },
}

impl NonConvergence {
    pub fn describe(&self) -> String {
        match self {
            NonConvergence::UnitModulusOther(values) => {
                let parts: Vec<String> = values.iter().map(|z| format_complex(*z)).collect();
                format!("unit-modulus eigenvalue(s) other than 1: {}", parts.join(", "))
            }
            NonConvergence::DefectiveOne { algebraic, geometric } => format!(
                "eigenvalue 1 is defective (algebraic multiplicity {algebraic}, geometric {geometric})"
            ),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            NonConvergence::UnitModulusOther(_) => "unit_modulus_other",
            NonConvergence::DefectiveOne { .. } => "defective_one",
        }
    }
}

pub(crate) fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}-{}i", z.re, -z.im)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConvergenceClass {
    /// λ = 1 simple, every other eigenvalue strictly inside the unit disc.
    UniqueLimit,
    /// λ = 1 semisimple with multiplicity > 1, every other eigenvalue inside.
    InitialDependentLimit { multiplicity: usize },
    NonConvergent(NonConvergence),
}

impl ConvergenceClass {
    pub fn name(&self) -> &'static str {
        match self {
            ConvergenceClass::UniqueLimit => "unique_limit",
            ConvergenceClass::InitialDependentLimit { .. } => "initial_dependent",
            ConvergenceClass::NonConvergent(_) => "non_convergent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: ConvergenceClass,
    pub spectrum: Spectrum,
    pub one_multiplicity: usize,
}

pub fn classify_convergence<T: Scalar>(m: &StochasticMatrix<T>, cfg: &AnalysisConfig) -> Result<Classification> {
    let spectrum = spectrum(m.matrix(), cfg)?;
    let one = Complex64::new(1.0, 0.0);
    let algebraic = spectrum
        .exact_one_multiplicity
        .unwrap_or_else(|| spectrum.multiplicity_near(one, cfg.cluster_radius));

    let mut by_distance = spectrum.eigenvalues.clone();
    by_distance.sort_by(|a, b| (a - one).norm().total_cmp(&(b - one).norm()));
    let offenders: Vec<Complex64> = by_distance
        .into_iter()
        .skip(algebraic)
        .filter(|z| z.norm() >= 1.0 - cfg.unit_margin)
        .collect();

    let geometric = if T::EXACT {
        m.n() - m.matrix().shift(&T::one()).rank(0.0)
    } else {
        geometric_multiplicity(m.matrix(), 1.0, cfg.semisimple_rank_tol)
    };

    let class = if !offenders.is_empty() {
        let mut distinct: Vec<Complex64> = Vec::new();
        for z in offenders {
            if !distinct.iter().any(|d| (d - z).norm() <= cfg.cluster_radius) {
                distinct.push(z);
            }
        }
        ConvergenceClass::NonConvergent(NonConvergence::UnitModulusOther(distinct))
    } else if geometric < algebraic {
        ConvergenceClass::NonConvergent(NonConvergence::DefectiveOne { algebraic, geometric })
    } else if algebraic <= 1 {
        ConvergenceClass::UniqueLimit
    } else {
        ConvergenceClass::InitialDependentLimit { multiplicity: algebraic }
    };
    Ok(Classification { class, spectrum, one_multiplicity: algebraic })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep<T> {
    pub step: usize,
    pub state: Vector<T>,
    /// `‖x_m − x_{m−1}‖∞`; absent for the start vector.
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<T> {
    Converged { limit: Vector<T>, steps: usize },
    Oscillating { period: usize },
    MaxIterations,
}

impl<T> Verdict<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Converged { .. } => "converged",
            Verdict::Oscillating { .. } => "oscillating",
            Verdict::MaxIterations => "max_iterations",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTrace<T> {
    pub iterates: Vec<TraceStep<T>>,
    pub verdict: Verdict<T>,
}

/// Iterates `x_{m+1} = M x_m` from `x0 ∈ S2`.
///
/// Stops with `Converged` once `‖x_{m+1} − x_m‖∞ <= tol`, or with
/// `Oscillating { period: p }` once `x_{m+1}` returns within `tol` of
/// `x_{m+1−p}` for the smallest `p` in `2..=max(2, n)` while the step is
/// still above `√tol`.
pub fn simulate_power<T: Scalar>(
    m: &StochasticMatrix<T>,
    x0: &Vector<T>,
    tol: f64,
    max_iter: usize,
    cfg: &AnalysisConfig,
) -> Result<SimulationTrace<T>> {
    x0.check_len(m.n())?;
    if !in_s2(x0, cfg.tol) {
        return Err(Error::NotProbabilityVector);
    }
    if !(tol > 0.0) || max_iter == 0 {
        return Err(Error::Precondition("tol must be positive and max_iter at least 1".into()));
    }
    let max_period = m.n().max(2);
    let mut iterates = vec![TraceStep { step: 0, state: x0.clone(), delta: None }];
    for step in 1..=max_iter {
        let prev = &iterates[step - 1].state;
        let next = m.apply(prev)?;
        let delta = next.dist_inf(prev);
        iterates.push(TraceStep { step, state: next, delta: Some(delta) });
        let current = &iterates[step].state;
        if delta <= tol {
            let limit = current.clone();
            return Ok(SimulationTrace { iterates, verdict: Verdict::Converged { limit, steps: step } });
        }
        // A convergent orbit with an eigenvalue near −1 also returns within
        // tol of x_{m+1−p}, roughly when the step shrinks to tol / |1 − λᵖ|.
        // Insisting on a step above √tol rules that out unless |1 − λᵖ| < √tol.
        let period = (2..=max_period.min(step)).find(|&p| current.dist_inf(&iterates[step - p].state) <= tol);
        if let Some(period) = period.filter(|_| delta > tol.sqrt()) {
            return Ok(SimulationTrace { iterates, verdict: Verdict::Oscillating { period } });
        }
    }
    Ok(SimulationTrace { iterates, verdict: Verdict::MaxIterations })
}

#[derive(Debug, Clone, PartialEq)]
pub enum LimitPrediction<T> {
    Limit(Vector<T>),
    NoLimit(NonConvergence),
}

/// `lim Mᵐ x0` from the spectral class: `kξ` for a unique limit, the
/// projection onto the fixed space when the limit depends on `x0`.
pub fn predict_limit<T: Scalar>(
    m: &StochasticMatrix<T>,
    x0: &ProbabilityVector<T>,
    cfg: &AnalysisConfig,
) -> Result<LimitPrediction<T>> {
    let classification = classify_convergence(m, cfg)?;
    Ok(match classification.class {
        ConvergenceClass::UniqueLimit => {
            let stationary = stationary_distribution(m, cfg)?;
            let split = decompose(x0.vector(), stationary.stationary().vector(), cfg)?;
            LimitPrediction::Limit(split.xi.vector().scale(&split.k))
        }
        ConvergenceClass::InitialDependentLimit { .. } => {
            LimitPrediction::Limit(fixed_space_projection(m, x0.vector(), cfg)?)
        }
        ConvergenceClass::NonConvergent(reason) => LimitPrediction::NoLimit(reason),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn cfg() -> AnalysisConfig {
        AnalysisConfig::default()
    }

    fn stoch<T: Scalar>(rows: Vec<Vec<T>>) -> StochasticMatrix<T> {
        StochasticMatrix::new(Matrix::from_rows(rows).unwrap(), &cfg()).unwrap()
    }

    fn defective() -> StochasticMatrix<BigRational> {
        stoch(vec![
            vec![q(1, 3), q(2, 3), q(0, 1)],
            vec![q(1, 3), q(1, 6), q(1, 2)],
            vec![q(1, 3), q(1, 6), q(1, 2)],
        ])
    }

    fn swap() -> StochasticMatrix<f64> {
        stoch(vec![vec![0.0, 1.0], vec![1.0, 0.0]])
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_convergence(&defective(), &cfg()).unwrap().class, ConvergenceClass::UniqueLimit);
        let id = StochasticMatrix::new(Matrix::<BigRational>::identity(3), &cfg()).unwrap();
        assert_eq!(
            classify_convergence(&id, &cfg()).unwrap().class,
            ConvergenceClass::InitialDependentLimit { multiplicity: 3 }
        );
        match classify_convergence(&swap(), &cfg()).unwrap().class {
            ConvergenceClass::NonConvergent(NonConvergence::UnitModulusOther(v)) => {
                assert_eq!(v.len(), 1);
                assert!((v[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn float_identity_is_initial_dependent() {
        let id = StochasticMatrix::new(Matrix::<f64>::identity(4), &cfg()).unwrap();
        assert_eq!(
            classify_convergence(&id, &cfg()).unwrap().class,
            ConvergenceClass::InitialDependentLimit { multiplicity: 4 }
        );
    }

    #[test]
    fn example_simulation_converges_exactly_at_step_two() {
        let trace = simulate_power(&defective(), &Vector::basis(3, 0), 1e-12, 200, &cfg()).unwrap();
        assert_eq!(trace.verdict, Verdict::Converged { limit: Vector::uniform(3), steps: 2 });
        assert_eq!(trace.iterates.len(), 3);
        assert_eq!(trace.iterates[0].delta, None);
    }

    #[test]
    fn identity_converges_at_step_one() {
        let id = StochasticMatrix::new(Matrix::<f64>::identity(2), &cfg()).unwrap();
        let x0 = Vector::new(vec![0.2, 0.8]).unwrap();
        let trace = simulate_power(&id, &x0, 1e-12, 10, &cfg()).unwrap();
        assert_eq!(trace.verdict, Verdict::Converged { limit: x0, steps: 1 });
    }

    #[test]
    fn swap_oscillates_with_period_two() {
        let trace = simulate_power(&swap(), &Vector::basis(2, 0), 1e-12, 100, &cfg()).unwrap();
        assert_eq!(trace.verdict, Verdict::Oscillating { period: 2 });
    }

    #[test]
    fn three_cycle_oscillates_with_period_three() {
        let cyc = stoch(vec![vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        let trace = simulate_power(&cyc, &Vector::basis(3, 0), 1e-12, 100, &cfg()).unwrap();
        assert_eq!(trace.verdict, Verdict::Oscillating { period: 3 });
    }

    #[test]
    fn slow_alternating_decay_is_not_oscillation() {
        // subdominant eigenvalue ≈ −0.933
        let m = stoch(vec![
            vec![0.0, 1.0, 43.0 / 126.0],
            vec![73.0 / 87.0, 0.0, 0.0],
            vec![14.0 / 87.0, 0.0, 83.0 / 126.0],
        ]);
        let trace = simulate_power(&m, &Vector::basis(3, 0), 1e-13, 20_000, &cfg()).unwrap();
        assert_eq!(trace.verdict.name(), "converged");
    }

    #[test]
    fn simulation_rejects_bad_start() {
        let err = simulate_power(&swap(), &Vector::new(vec![2.0, -1.0]).unwrap(), 1e-12, 10, &cfg()).unwrap_err();
        assert!(matches!(err, Error::NotProbabilityVector));
        let err = simulate_power(&swap(), &Vector::basis(2, 0), 0.0, 10, &cfg()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn predicted_limits() {
        let x0 = ProbabilityVector::new(Vector::basis(3, 2), 0.0).unwrap();
        assert_eq!(predict_limit(&defective(), &x0, &cfg()).unwrap(), LimitPrediction::Limit(Vector::uniform(3)));

        let id = StochasticMatrix::new(Matrix::<f64>::identity(2), &cfg()).unwrap();
        let x0 = ProbabilityVector::new(Vector::new(vec![0.3, 0.7]).unwrap(), 1e-12).unwrap();
        assert_eq!(predict_limit(&id, &x0, &cfg()).unwrap(), LimitPrediction::Limit(x0.vector().clone()));

        let block = stoch(vec![
            vec![q(1, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 2), q(1, 2)],
            vec![q(0, 1), q(1, 2), q(1, 2)],
        ]);
        let x0 = ProbabilityVector::new(Vector::new(vec![q(1, 4), q(1, 4), q(1, 2)]).unwrap(), 0.0).unwrap();
        let expected = Vector::new(vec![q(1, 4), q(3, 8), q(3, 8)]).unwrap();
        assert_eq!(predict_limit(&block, &x0, &cfg()).unwrap(), LimitPrediction::Limit(expected.clone()));
        // the block matrix reaches its limit after one step
        let trace = simulate_power(&block, x0.vector(), 1e-12, 10, &cfg()).unwrap();
        assert_eq!(trace.verdict, Verdict::Converged { limit: expected, steps: 2 });

        let x0 = ProbabilityVector::new(Vector::basis(2, 0), 0.0).unwrap();
        assert!(matches!(predict_limit(&swap(), &x0, &cfg()).unwrap(), LimitPrediction::NoLimit(_)));
    }
}
