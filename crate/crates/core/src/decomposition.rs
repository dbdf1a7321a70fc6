//! Stationary distributions and the splitting `V = span(ξ) ⊕ S3`.
//!
//! Every column-stochastic matrix fixes some probability vector ξ. Because
//! `ξ ∉ S3` and S3 is an invariant hyperplane, each vector `α` splits
//! uniquely as `α = β + kξ` with `β ∈ S3` and `k = Σα_i`.

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;
use crate::sets::in_s2;
use crate::validation::{ProbabilityVector, StochasticMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryResult<T> {
    /// Nonnegative fixed points found (at least one).
    pub vectors: Vec<ProbabilityVector<T>>,
    /// Basis of `ker(M − I)`.
    pub nullspace_basis: Vec<Vector<T>>,
    pub nullspace_dimension: usize,
    pub unique: bool,
}

impl<T: Scalar> StationaryResult<T> {
    /// The representative stationary distribution.
    pub fn stationary(&self) -> &ProbabilityVector<T> {
        &self.vectors[0]
    }
}

/// Solves `(M − I)x = 0, Σx = 1`.
///
/// When the fixed space is one-dimensional the normalized kernel vector is
/// returned. Otherwise the representative is the Cesàro limit of the uniform
/// start, computed in closed form as the projection of the uniform vector
/// onto `ker(M − I)` along `range(M − I)`. Every Cesàro partial average lies in
/// S2, so the limit does too.
pub fn stationary_distribution<T: Scalar>(
    m: &StochasticMatrix<T>,
    cfg: &AnalysisConfig,
) -> Result<StationaryResult<T>> {
    let n = m.n();
    let shifted = m.matrix().shift(&T::one());
    let basis = shifted.nullspace(cfg.rank_tol);
    let dimension = basis.len();

    let representative = match dimension {
        0 => solve_with_sum_row(m.matrix(), cfg)?,
        1 => {
            let total = basis[0].sum();
            if total.near_zero(0.0) {
                return Err(Error::Precondition("fixed vector with zero component sum".into()));
            }
            basis[0].scale(&(T::one() / total))
        }
        _ => fixed_space_projection(m, &Vector::uniform(n), cfg)?,
    };
    let representative = if T::EXACT || accept_fixed_point(m, &representative, cfg) {
        representative
    } else {
        cesaro_stationary(m, &ProbabilityVector::uniform(n), cfg.cesaro_iterations)?
    };
    debug_assert!(in_s2(&representative, cfg.tol));

    Ok(StationaryResult {
        vectors: vec![ProbabilityVector::new_unchecked(representative)],
        nullspace_dimension: dimension.max(1),
        unique: dimension <= 1,
        nullspace_basis: basis,
    })
}

fn accept_fixed_point<T: Scalar>(m: &StochasticMatrix<T>, v: &Vector<T>, cfg: &AnalysisConfig) -> bool {
    in_s2(v, cfg.tol)
        && m.apply(v).map(|mv| mv.dist_inf(v) <= cfg.fixed_point_tol).unwrap_or(false)
}

/// Float fallback for a numerically full-rank `M − I`: replace the last row
/// by ones and solve against `e_n`.
fn solve_with_sum_row<T: Scalar>(m: &Matrix<T>, cfg: &AnalysisConfig) -> Result<Vector<T>> {
    let n = m.n();
    let system = Matrix::from_fn(n, |i, j| {
        if i == n - 1 {
            T::one()
        } else if i == j {
            m.entry(i, j).clone() - T::one()
        } else {
            m.entry(i, j).clone()
        }
    });
    system.solve(&Vector::basis(n, n - 1), cfg.rank_tol)
}

/// Projection of `x` onto `ker(M − I)` along `range(M − I)`.
///
/// For a stochastic matrix, λ = 1 is semisimple, so the two subspaces are
/// complementary and this projection is `lim (1/m) Σ Mᵗ x`. It is the limit of
/// `Mᵐ x` whenever that limit exists.
pub fn fixed_space_projection<T: Scalar>(
    m: &StochasticMatrix<T>,
    x: &Vector<T>,
    cfg: &AnalysisConfig,
) -> Result<Vector<T>> {
    let n = m.n();
    x.check_len(n)?;
    let shifted = m.matrix().shift(&T::one());
    let kernel = shifted.nullspace(cfg.rank_tol);
    let pivots = shifted.row_echelon(cfg.rank_tol).pivots;
    if kernel.len() + pivots.len() != n {
        return Err(Error::Precondition("kernel and range do not span".into()));
    }
    let mut columns = kernel.clone();
    columns.extend(pivots.iter().map(|&c| shifted.column(c)));
    let coords = Matrix::from_columns(&columns)?.solve(x, cfg.rank_tol)?;
    Ok(kernel
        .iter()
        .enumerate()
        .fold(Vector::zeros(n), |acc, (k, b)| acc.add(&b.scale(&coords[k])).expect("same length")))
}

/// `(1/m) Σ_{t<m} Mᵗ x0`.
pub fn cesaro_stationary<T: Scalar>(
    m: &StochasticMatrix<T>,
    x0: &ProbabilityVector<T>,
    iterations: usize,
) -> Result<Vector<T>> {
    if iterations == 0 {
        return Err(Error::Precondition("iteration count must be at least 1".into()));
    }
    let mut current = x0.vector().clone();
    current.check_len(m.n())?;
    let mut total = current.clone();
    for _ in 1..iterations {
        current = m.apply(&current)?;
        total = total.add(&current)?;
    }
    Ok(total.scale(&(T::one() / T::from_i64(iterations as i64))))
}

/// Eigenvalue of an eigenvector whose components do not sum to zero; it is
/// always 1 because the matrix preserves component sums.
pub fn eigenvalue_of_nonzero_sum_eigenvector<T: Scalar>(
    m: &StochasticMatrix<T>,
    eps: &Vector<T>,
    cfg: &AnalysisConfig,
) -> Result<T> {
    eps.check_len(m.n())?;
    let scale = eps.norm_inf();
    if eps.is_zero() || scale == 0.0 {
        return Err(Error::NotEigenvector { residual: f64::INFINITY });
    }
    let image = m.apply(eps)?;
    let lambda = if T::EXACT {
        let i = (0..eps.len()).find(|&i| !eps[i].is_zero()).expect("nonzero vector");
        image[i].clone() / eps[i].clone()
    } else {
        image.dot(eps) / eps.dot(eps)
    };
    let residual = image.sub(&eps.scale(&lambda))?.norm_inf() / scale;
    let is_eigenvector = if T::EXACT { residual == 0.0 && image == eps.scale(&lambda) } else { residual <= cfg.fixed_point_tol };
    if !is_eigenvector {
        return Err(Error::NotEigenvector { residual });
    }
    if eps.sum().near_zero(cfg.tol * scale) {
        return Err(Error::ZeroComponentSum);
    }
    if !lambda.near_eq(&T::one(), cfg.eigenvalue_one_tol) {
        return Err(Error::EigenvalueNotOne { value: lambda.into_number().to_string() });
    }
    Ok(lambda)
}

/// `α = β + kξ` with `β ∈ S3`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T> {
    pub beta: Vector<T>,
    pub k: T,
    pub xi: ProbabilityVector<T>,
}

impl<T: Scalar> Decomposition<T> {
    pub fn reconstruct(&self) -> Vector<T> {
        self.beta.add(&self.xi.vector().scale(&self.k)).expect("same length")
    }
}

pub fn decompose<T: Scalar>(alpha: &Vector<T>, xi: &Vector<T>, cfg: &AnalysisConfig) -> Result<Decomposition<T>> {
    xi.check_len(alpha.len())?;
    let xi = ProbabilityVector::new(xi.clone(), cfg.tol)?;
    let k = alpha.sum();
    let beta = alpha.sub(&xi.vector().scale(&k))?;
    Ok(Decomposition { beta, k, xi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::in_s3;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn qv(parts: &[(i64, i64)]) -> Vector<BigRational> {
        parts.iter().map(|&(n, d)| q(n, d)).collect()
    }

    fn cfg() -> AnalysisConfig {
        AnalysisConfig::default()
    }

    fn stoch(rows: Vec<Vec<BigRational>>) -> StochasticMatrix<BigRational> {
        StochasticMatrix::new(Matrix::from_rows(rows).unwrap(), &cfg()).unwrap()
    }

    fn defective() -> StochasticMatrix<BigRational> {
        stoch(vec![
            vec![q(1, 3), q(2, 3), q(0, 1)],
            vec![q(1, 3), q(1, 6), q(1, 2)],
            vec![q(1, 3), q(1, 6), q(1, 2)],
        ])
    }

    fn swap() -> StochasticMatrix<BigRational> {
        stoch(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]])
    }

    #[test]
    fn example_stationary_is_uniform() {
        let r = stationary_distribution(&defective(), &cfg()).unwrap();
        assert!(r.unique);
        assert_eq!(r.nullspace_dimension, 1);
        assert_eq!(*r.stationary().vector(), qv(&[(1, 3), (1, 3), (1, 3)]));
    }

    #[test]
    fn identity_has_full_fixed_space() {
        let id = StochasticMatrix::new(Matrix::<BigRational>::identity(2), &cfg()).unwrap();
        let r = stationary_distribution(&id, &cfg()).unwrap();
        assert!(!r.unique);
        assert_eq!(r.nullspace_dimension, 2);
        assert_eq!(*r.stationary().vector(), qv(&[(1, 2), (1, 2)]));
    }

    #[test]
    fn swap_stationary_is_half_half() {
        let r = stationary_distribution(&swap(), &cfg()).unwrap();
        assert!(r.unique);
        assert_eq!(*r.stationary().vector(), qv(&[(1, 2), (1, 2)]));
    }

    #[test]
    fn block_matrix_representative_is_cesaro_limit() {
        // two closed classes {1} and {2,3}
        let m = stoch(vec![
            vec![q(1, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 2), q(1, 2)],
            vec![q(0, 1), q(1, 2), q(1, 2)],
        ]);
        let r = stationary_distribution(&m, &cfg()).unwrap();
        assert_eq!(r.nullspace_dimension, 2);
        assert_eq!(*r.stationary().vector(), qv(&[(1, 3), (1, 3), (1, 3)]));
        let p = fixed_space_projection(&m, &qv(&[(1, 4), (1, 4), (1, 2)]), &cfg()).unwrap();
        assert_eq!(p, qv(&[(1, 4), (3, 8), (3, 8)]));
    }

    #[test]
    fn cesaro_examples() {
        let id = StochasticMatrix::new(Matrix::<f64>::identity(2), &cfg()).unwrap();
        let x0 = ProbabilityVector::new(Vector::basis(2, 0), 0.0).unwrap();
        assert_eq!(cesaro_stationary(&id, &x0, 7).unwrap(), Vector::basis(2, 0));

        let swap = StochasticMatrix::new(swap().matrix().to_f64(), &cfg()).unwrap();
        let avg = cesaro_stationary(&swap, &x0, 1000).unwrap();
        assert!(avg.dist_inf(&Vector::new(vec![0.5, 0.5]).unwrap()) <= 1e-3);

        let float_defective = StochasticMatrix::new(defective().matrix().to_f64(), &cfg()).unwrap();
        let x0 = ProbabilityVector::new(Vector::basis(3, 0), 0.0).unwrap();
        let avg = cesaro_stationary(&float_defective, &x0, 200).unwrap();
        // only the first two terms deviate from uniform: error is (2/3)/200 at most
        assert!(avg.dist_inf(&Vector::uniform(3)) <= 2.0 / 3.0 / 200.0 + 1e-15);
        assert!(cesaro_stationary(&float_defective, &x0, 0).is_err());
    }

    #[test]
    fn nonzero_sum_eigenvector_has_eigenvalue_one() {
        assert_eq!(
            eigenvalue_of_nonzero_sum_eigenvector(&defective(), &qv(&[(1, 3), (1, 3), (1, 3)]), &cfg()).unwrap(),
            q(1, 1)
        );
        let id = StochasticMatrix::new(Matrix::<BigRational>::identity(3), &cfg()).unwrap();
        assert_eq!(eigenvalue_of_nonzero_sum_eigenvector(&id, &Vector::basis(3, 0), &cfg()).unwrap(), q(1, 1));
    }

    #[test]
    fn zero_sum_eigenvector_is_rejected() {
        let half = stoch(vec![vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(1, 2)]]);
        let err = eigenvalue_of_nonzero_sum_eigenvector(&half, &qv(&[(1, 1), (-1, 1)]), &cfg()).unwrap_err();
        assert!(matches!(err, Error::ZeroComponentSum));
    }

    #[test]
    fn non_eigenvector_is_rejected() {
        let err = eigenvalue_of_nonzero_sum_eigenvector(&defective(), &Vector::basis(3, 1), &cfg()).unwrap_err();
        assert!(matches!(err, Error::NotEigenvector { .. }));
    }

    #[test]
    fn decompose_examples() {
        let xi = qv(&[(1, 3), (1, 3), (1, 3)]);
        let d = decompose(&xi, &xi, &cfg()).unwrap();
        assert!(d.beta.is_zero());
        assert_eq!(d.k, q(1, 1));

        let alpha = qv(&[(1, 1), (0, 1), (0, 1)]);
        let d = decompose(&alpha, &xi, &cfg()).unwrap();
        assert_eq!(d.k, q(1, 1));
        assert_eq!(d.beta, qv(&[(2, 3), (-1, 3), (-1, 3)]));
        assert_eq!(d.reconstruct(), alpha);
        assert!(in_s3(&d.beta, 0.0));

        let d = decompose(&Vector::zeros(3), &xi, &cfg()).unwrap();
        assert_eq!(d.k, q(0, 1));
        assert!(d.beta.is_zero());
    }

    #[test]
    fn decompose_rejects_non_simplex_xi() {
        let err = decompose(&qv(&[(1, 1), (0, 1)]), &qv(&[(2, 1), (-1, 1)]), &cfg()).unwrap_err();
        assert!(matches!(err, Error::NotProbabilityVector));
    }

    #[test]
    fn float_stationary_matches_exact() {
        let m = StochasticMatrix::new(defective().matrix().to_f64(), &cfg()).unwrap();
        let r = stationary_distribution(&m, &cfg()).unwrap();
        assert!(r.unique);
        assert!(r.stationary().vector().dist_inf(&Vector::uniform(3)) < 1e-14);
    }
}
