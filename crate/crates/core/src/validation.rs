//! Stochasticity checks and the simplex characterizations.
//!
//! A matrix is column-stochastic when every entry is nonnegative and every
//! column sums to one. Equivalently it maps the probability simplex S2 into
//! itself, and it is enough to check the images of the standard basis
//! vectors, which are exactly its columns.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::sampling::{random_simplex_point, sample_rng};
use crate::scalar::{format_scalar, Scalar};
use crate::sets::{in_s2, in_s5};

/// Violating entry: 1-based row, 1-based column, value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BadEntry(pub usize, pub usize, pub String);

/// Violating column: 1-based column, its sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BadColumn(pub usize, pub String);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub bad_entries: Vec<BadEntry>,
    pub bad_columns: Vec<BadColumn>,
}

impl ValidationReport {
    fn summary(&self) -> String {
        let mut parts = Vec::new();
        for BadEntry(i, j, v) in &self.bad_entries {
            parts.push(format!("a[{i},{j}] = {v} < 0"));
        }
        for BadColumn(j, s) in &self.bad_columns {
            parts.push(format!("column {j} sums to {s}"));
        }
        parts.join("; ")
    }
}

pub fn validate_stochastic<T: Scalar>(m: &Matrix<T>, cfg: &AnalysisConfig) -> ValidationReport {
    let n = m.n();
    let mut bad_entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = m.entry(i, j);
            if !a.near_nonneg(cfg.tol) {
                bad_entries.push(BadEntry(i + 1, j + 1, format_scalar(&a.clone().into_number())));
            }
        }
    }
    let bad_columns: Vec<BadColumn> = m
        .column_sums()
        .into_iter()
        .enumerate()
        .filter(|(_, s)| !s.near_eq(&T::one(), cfg.tol))
        .map(|(j, s)| BadColumn(j + 1, format_scalar(&s.into_number())))
        .collect();
    ValidationReport { valid: bad_entries.is_empty() && bad_columns.is_empty(), bad_entries, bad_columns }
}

/// A matrix that passed [`validate_stochastic`].
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix<T>(Matrix<T>);

impl<T: Scalar> StochasticMatrix<T> {
    pub fn new(m: Matrix<T>, cfg: &AnalysisConfig) -> Result<Self> {
        let report = validate_stochastic(&m, cfg);
        if !report.valid {
            return Err(Error::NotStochastic(report.summary()));
        }
        Ok(StochasticMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.0.mul_vec(x)
    }
}

impl<T> AsRef<Matrix<T>> for StochasticMatrix<T> {
    fn as_ref(&self) -> &Matrix<T> {
        &self.0
    }
}

/// A vector that is a member of S2.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector<T>(Vector<T>);

impl<T: Scalar> ProbabilityVector<T> {
    pub fn new(v: Vector<T>, tol: f64) -> Result<Self> {
        if !in_s2(&v, tol) {
            return Err(Error::NotProbabilityVector);
        }
        Ok(ProbabilityVector(v))
    }

    pub fn uniform(n: usize) -> Self {
        ProbabilityVector(Vector::uniform(n))
    }

    pub(crate) fn new_unchecked(v: Vector<T>) -> Self {
        ProbabilityVector(v)
    }

    pub fn vector(&self) -> &Vector<T> {
        &self.0
    }

    pub fn into_vector(self) -> Vector<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T> AsRef<Vector<T>> for ProbabilityVector<T> {
    fn as_ref(&self) -> &Vector<T> {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumPreservation<T> {
    pub sum_before: T,
    pub sum_after: T,
    pub equal: bool,
}

/// Compares `Σx` with `Σ(Mx)`. Floats allow `n · tol` drift.
pub fn check_sum_preservation<T: Scalar>(
    m: &StochasticMatrix<T>,
    x: &Vector<T>,
    cfg: &AnalysisConfig,
) -> Result<SumPreservation<T>> {
    let image = m.apply(x)?;
    let sum_before = x.sum();
    let sum_after = image.sum();
    let equal = sum_before.near_eq(&sum_after, m.n() as f64 * cfg.tol);
    Ok(SumPreservation { sum_before, sum_after, equal })
}

/// True iff `M e_j ∈ S2` for every standard basis vector.
pub fn characterize_by_simplex<T: Scalar>(m: &Matrix<T>, cfg: &AnalysisConfig) -> bool {
    let n = m.n();
    (0..n).all(|j| {
        let image = m.mul_vec(&Vector::basis(n, j)).expect("basis vector has length n");
        in_s2(&image, cfg.tol)
    })
}

/// Sampled version of [`characterize_by_simplex`]: checks `My ∈ S2` for
/// random `y ∈ S2`. Can only refute stochasticity, never prove it.
pub fn characterize_by_sampling<T: Scalar>(m: &Matrix<T>, samples: usize, seed: u64, cfg: &AnalysisConfig) -> bool {
    let n = m.n();
    (0..samples as u64).into_par_iter().all(|i| {
        let y: Vector<T> = random_simplex_point(n, &mut sample_rng(seed, i));
        m.mul_vec(&y).map(|img| in_s2(&img, cfg.tol)).unwrap_or(false)
    })
}

/// Draws `samples` points `Y ∈ S2`, forms `X = Y − ξ` and checks `MX ∈ S5(ξ)`.
/// Fails with a precondition error unless `Mξ = ξ`.
pub fn check_s5_closure<T: Scalar>(
    m: &StochasticMatrix<T>,
    xi: &ProbabilityVector<T>,
    samples: usize,
    seed: u64,
    cfg: &AnalysisConfig,
) -> Result<bool> {
    let n = m.n();
    xi.vector().check_len(n)?;
    if samples == 0 {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    let image = m.apply(xi.vector())?;
    if image.dist_inf(xi.vector()) > cfg.fixed_point_tol || (T::EXACT && image != *xi.vector()) {
        return Err(Error::Precondition("ξ is not fixed by the matrix".into()));
    }
    let results: Result<Vec<bool>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let y: Vector<T> = random_simplex_point(n, &mut sample_rng(seed, i));
            // M(Y − ξ) = MY − ξ once Mξ = ξ; keeps ξ's large denominators out
            // of the matrix product
            let image = m.apply(&y)?.sub(xi.vector())?;
            in_s5(&image, xi.vector(), cfg.tol)
        })
        .collect();
    Ok(results?.into_iter().all(|ok| ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn defective() -> Matrix<BigRational> {
        Matrix::from_rows(vec![
            vec![q(1, 3), q(2, 3), q(0, 1)],
            vec![q(1, 3), q(1, 6), q(1, 2)],
            vec![q(1, 3), q(1, 6), q(1, 2)],
        ])
        .unwrap()
    }

    fn cfg() -> AnalysisConfig {
        AnalysisConfig::default()
    }

    #[test]
    fn example_and_identity_are_stochastic() {
        assert!(validate_stochastic(&defective(), &cfg()).valid);
        assert!(validate_stochastic(&Matrix::<BigRational>::identity(3), &cfg()).valid);
    }

    #[test]
    fn negative_entry_is_flagged_one_based() {
        let m = Matrix::from_rows(vec![vec![1.1, 0.0], vec![-0.1, 1.0]]).unwrap();
        let report = validate_stochastic(&m, &cfg());
        assert!(!report.valid);
        assert_eq!(report.bad_entries.len(), 1);
        assert_eq!((report.bad_entries[0].0, report.bad_entries[0].1), (2, 1));
        assert!(report.bad_columns.is_empty());
    }

    #[test]
    fn bad_column_sum_is_flagged() {
        let m = Matrix::from_rows(vec![vec![q(1, 2), q(0, 1)], vec![q(1, 4), q(1, 1)]]).unwrap();
        let report = validate_stochastic(&m, &cfg());
        assert_eq!(report.bad_columns, vec![BadColumn(1, "3/4".into())]);
        let err = StochasticMatrix::new(m, &cfg()).unwrap_err();
        assert!(matches!(err, Error::NotStochastic(_)));
    }

    #[test]
    fn report_serializes_as_arrays() {
        let m = Matrix::from_rows(vec![vec![q(2, 1), q(0, 1)], vec![q(-1, 1), q(1, 1)]]).unwrap();
        let json = serde_json::to_value(validate_stochastic(&m, &cfg())).unwrap();
        assert_eq!(json["valid"], false);
        assert_eq!(json["bad_entries"], serde_json::json!([[2, 1, "-1"]]));
        assert_eq!(json["bad_columns"], serde_json::json!([]));
    }

    #[test]
    fn sum_preservation_examples() {
        let m = StochasticMatrix::new(defective(), &cfg()).unwrap();
        let x: Vector<BigRational> = [1, 2, 3].iter().map(|&v| q(v, 1)).collect();
        let r = check_sum_preservation(&m, &x, &cfg()).unwrap();
        assert_eq!((r.sum_before.clone(), r.sum_after.clone(), r.equal), (q(6, 1), q(6, 1), true));
        let r = check_sum_preservation(&m, &Vector::zeros(3), &cfg()).unwrap();
        assert!(r.equal && r.sum_after == q(0, 1));
        let r = check_sum_preservation(&m, &Vector::basis(3, 0), &cfg()).unwrap();
        assert_eq!((r.sum_before, r.sum_after), (q(1, 1), q(1, 1)));
        assert!(check_sum_preservation(&m, &Vector::zeros(2), &cfg()).is_err());
    }

    #[test]
    fn simplex_characterization_examples() {
        assert!(characterize_by_simplex(&defective(), &cfg()));
        assert!(characterize_by_simplex(&Matrix::<BigRational>::identity(4), &cfg()));
        let bad = Matrix::from_rows(vec![vec![q(2, 1), q(0, 1)], vec![q(-1, 1), q(1, 1)]]).unwrap();
        assert!(!characterize_by_simplex(&bad, &cfg()));
        // zeros are allowed
        let zero_col = Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(0, 1)]]).unwrap();
        assert!(characterize_by_simplex(&zero_col, &cfg()));
    }

    #[test]
    fn sampling_mode_refutes_negative_matrix() {
        let bad = Matrix::from_rows(vec![vec![2.0, 0.0], vec![-1.0, 1.0]]).unwrap();
        assert!(!characterize_by_sampling(&bad, 50, 0, &cfg()));
        assert!(characterize_by_sampling(&defective(), 50, 0, &cfg()));
    }

    #[test]
    fn s5_closure_examples() {
        let m = StochasticMatrix::new(defective(), &cfg()).unwrap();
        let xi = ProbabilityVector::uniform(3);
        assert!(check_s5_closure(&m, &xi, 1000, 0, &cfg()).unwrap());

        let id = StochasticMatrix::new(Matrix::<BigRational>::identity(3), &cfg()).unwrap();
        let xi = ProbabilityVector::new(Vector::new(vec![q(1, 2), q(1, 4), q(1, 4)]).unwrap(), 0.0).unwrap();
        assert!(check_s5_closure(&id, &xi, 10, 3, &cfg()).unwrap());

        let m = Matrix::from_rows(vec![vec![q(1, 1), q(1, 2)], vec![q(0, 1), q(1, 2)]]).unwrap();
        let x = Vector::new(vec![q(-1, 1), q(1, 1)]).unwrap();
        let image = m.mul_vec(&x).unwrap();
        assert_eq!(image, Vector::new(vec![q(-1, 2), q(1, 2)]).unwrap());
        let xi = Vector::basis(2, 0);
        assert!(in_s5(&image, &xi, 0.0).unwrap());
        let m = StochasticMatrix::new(m, &cfg()).unwrap();
        assert!(check_s5_closure(&m, &ProbabilityVector::new(xi, 0.0).unwrap(), 100, 1, &cfg()).unwrap());
    }

    #[test]
    fn s5_closure_requires_fixed_xi() {
        let m = StochasticMatrix::new(defective(), &cfg()).unwrap();
        let xi = ProbabilityVector::new(Vector::basis(3, 0), 0.0).unwrap();
        assert!(matches!(check_s5_closure(&m, &xi, 10, 0, &cfg()), Err(Error::Precondition(_))));
    }
}
