//! Synthesis of Markov matrices with a prescribed Jordan structure.
//!
//! Pick a probability vector ξ and `n − 1` vectors spanning S3, put them as
//! the columns of `P = [ξ | ε_2 | … | ε_n]`, choose a target `J` whose leading
//! entry is the 1×1 block for ξ, and form `A = P J P⁻¹`. The result fixes ξ
//! and acts on S3 as `J` prescribes. It is stochastic only when the S3 part is
//! small enough, which the scaled constructor finds by halving the second
//! basis vector.

use num_rational::BigRational;

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;
use crate::sets::{in_s2, in_s3};
use crate::spectral::{is_diagonalizable_exact, DiagonalizabilityCertificate};
use crate::validation::{validate_stochastic, StochasticMatrix};

pub const MAX_HALVINGS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionSpec<T> {
    /// Target stationary vector (column 1 of `P`).
    pub xi: Vector<T>,
    /// `n − 1` vectors in S3 (columns 2..n of `P`).
    pub basis: Vec<Vector<T>>,
    /// Target matrix in the basis `ξ, ε_2, …, ε_n`.
    pub jordan: Matrix<T>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::from_ratio(n, d)
}

impl ConstructionSpec<BigRational> {
    /// ξ = uniform, ε_2 = (1/2, −1/4, −1/4), ε_3 = (−1/2, 1, −1/2) and
    /// `J = diag(1, [[0, 1], [0, 0]])`.
    pub fn worked_example() -> Self {
        ConstructionSpec {
            xi: Vector::uniform(3),
            basis: vec![example_epsilon2(), example_epsilon3()],
            jordan: jordan_target(&[(q(0, 1), 2)]),
        }
    }
}

pub fn example_epsilon2() -> Vector<BigRational> {
    [q(1, 2), q(-1, 4), q(-1, 4)].into_iter().collect()
}

pub fn example_epsilon3() -> Vector<BigRational> {
    [q(-1, 2), q(1, 1), q(-1, 2)].into_iter().collect()
}

/// `diag(1, J_{k1}(λ1), J_{k2}(λ2), …)` with upper Jordan blocks.
pub fn jordan_target<T: Scalar>(blocks: &[(T, usize)]) -> Matrix<T> {
    let n = 1 + blocks.iter().map(|(_, k)| k).sum::<usize>();
    let mut diag = vec![T::one()];
    let mut superdiag = vec![false];
    for (lambda, size) in blocks {
        for idx in 0..*size {
            diag.push(lambda.clone());
            superdiag.push(idx > 0);
        }
    }
    Matrix::from_fn(n, |i, j| {
        if i == j {
            diag[i].clone()
        } else if j == i + 1 && superdiag[j] {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// `P · J · P⁻¹`. The result is not validated.
pub fn assemble<T: Scalar>(spec: &ConstructionSpec<T>) -> Result<Matrix<T>> {
    if !T::EXACT {
        return Err(Error::RequiresExact);
    }
    let n = spec.xi.len();
    if spec.basis.len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, found: spec.basis.len() });
    }
    if spec.jordan.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: spec.jordan.n() });
    }
    if !in_s2(&spec.xi, 0.0) {
        return Err(Error::NotProbabilityVector);
    }
    for (k, b) in spec.basis.iter().enumerate() {
        b.check_len(n)?;
        if !in_s3(b, 0.0) {
            return Err(Error::Precondition(format!("basis vector {} does not sum to zero", k + 2)));
        }
    }
    let mut columns = vec![spec.xi.clone()];
    columns.extend(spec.basis.iter().cloned());
    let p = Matrix::from_columns(&columns)?;
    let p_inv = p.inverse(0.0)?;
    p.mul(&spec.jordan)?.mul(&p_inv)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectiveConstruction {
    pub matrix: StochasticMatrix<BigRational>,
    pub lambda: BigRational,
    /// Scale applied to the second basis vector.
    pub scale: BigRational,
    pub certificate: DiagonalizabilityCertificate,
    pub stationary: Vector<BigRational>,
}

/// The worked 3×3 example: stochastic, not diagonalizable, stationary at
/// the uniform vector.
pub fn construct_defective_example() -> Result<DefectiveConstruction> {
    finish(ConstructionSpec::worked_example(), q(0, 1), q(1, 1))
}

/// Defective Markov matrix with spectrum `{1, λ, λ}`.
///
/// Uses ξ = uniform and the worked-example basis with the second basis vector
/// scaled by `t ∈ {1, 1/2, 1/4, …}`. Scaling ε_2 by `t` is the same as
/// replacing the superdiagonal 1 of the λ-block by `t`, so for small `t` the
/// result approaches `λI + (1 − λ)ξ𝟙ᵀ`, which is strictly positive when
/// `−1/2 < λ < 1`.
pub fn construct_defective_scaled(lambda: &BigRational) -> Result<DefectiveConstruction> {
    if Scalar::abs(lambda) >= q(1, 1) {
        return Err(Error::Precondition(format!(
            "|λ| < 1 required, got {}",
            crate::scalar::format_rational(lambda)
        )));
    }
    let cfg = AnalysisConfig::default();
    let mut t = q(1, 1);
    let half = q(1, 2);
    let mut last_violation = String::new();
    for _ in 0..=MAX_HALVINGS {
        let spec = ConstructionSpec {
            xi: Vector::uniform(3),
            basis: vec![example_epsilon2().scale(&t), example_epsilon3()],
            jordan: jordan_target(&[(lambda.clone(), 2)]),
        };
        let candidate = assemble(&spec)?;
        let report = validate_stochastic(&candidate, &cfg);
        if report.valid {
            return finish(spec, lambda.clone(), t);
        }
        last_violation = format!(
            "t = {}: {} negative entries, {} bad columns",
            crate::scalar::format_rational(&t),
            report.bad_entries.len(),
            report.bad_columns.len()
        );
        t *= half.clone();
    }
    Err(Error::Infeasible(last_violation))
}

fn finish(spec: ConstructionSpec<BigRational>, lambda: BigRational, scale: BigRational) -> Result<DefectiveConstruction> {
    let cfg = AnalysisConfig::default();
    let matrix = StochasticMatrix::new(assemble(&spec)?, &cfg)?;
    let certificate = is_diagonalizable_exact(matrix.matrix())?;
    if certificate.diagonalizable {
        return Err(Error::Precondition("constructed matrix is unexpectedly diagonalizable".into()));
    }
    Ok(DefectiveConstruction { matrix, lambda, scale, certificate, stationary: spec.xi })
}
