//! Seeded random generators for simplex points and stochastic matrices.
//!
//! Streams are split per sample by counter: sample `i` under seed `s` always
//! draws from `ChaCha8Rng(s)` on stream `i`, so serial and parallel runs see
//! identical values.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Matrix, Vector};
use crate::scalar::{Number, Scalar};

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn from_f64<T: Scalar>(v: f64) -> T {
    T::from_number(&Number::Float(v))
}

/// Positive weight: an integer in `1..=100` (exact) or a uniform in `(0, 1]`.
fn positive_weight<T: Scalar, R: Rng>(rng: &mut R) -> T {
    if T::EXACT {
        T::from_i64(rng.random_range(1..=100))
    } else {
        from_f64(1.0 - rng.random::<f64>())
    }
}

fn normalize<T: Scalar>(weights: Vec<T>) -> Vector<T> {
    let total = weights.iter().cloned().fold(T::zero(), |a, b| a + b);
    weights.into_iter().map(|w| w / total.clone()).collect()
}

/// Random point of S2 with strictly positive components.
pub fn random_simplex_point<T: Scalar, R: Rng>(n: usize, rng: &mut R) -> Vector<T> {
    normalize((0..n).map(|_| positive_weight(rng)).collect())
}

/// Random point of S2 where each component is zero with probability
/// `zero_prob` (at least one component stays positive).
pub fn random_sparse_simplex_point<T: Scalar, R: Rng>(n: usize, zero_prob: f64, rng: &mut R) -> Vector<T> {
    let mut weights: Vec<T> = (0..n)
        .map(|_| if rng.random_bool(zero_prob) { T::zero() } else { positive_weight(rng) })
        .collect();
    if weights.iter().all(Scalar::is_zero) {
        let k = rng.random_range(0..n);
        weights[k] = positive_weight(rng);
    }
    normalize(weights)
}

/// Random column-stochastic matrix; each entry is zero with probability
/// `zero_prob`.
pub fn random_stochastic<T: Scalar, R: Rng>(n: usize, zero_prob: f64, rng: &mut R) -> Matrix<T> {
    let columns: Vec<Vector<T>> = (0..n).map(|_| random_sparse_simplex_point(n, zero_prob, rng)).collect();
    Matrix::from_columns(&columns).expect("columns have length n")
}

/// Random vector with small-denominator rational (or uniform float) entries.
pub fn random_vector<T: Scalar, R: Rng>(n: usize, rng: &mut R) -> Vector<T> {
    (0..n)
        .map(|_| {
            if T::EXACT {
                T::from_ratio(rng.random_range(-20..=20), rng.random_range(1..=9))
            } else {
                from_f64(rng.random_range(-2.0..2.0))
            }
        })
        .collect()
}

/// Random element of S3 (components sum to zero).
pub fn random_s3_vector<T: Scalar, R: Rng>(n: usize, rng: &mut R) -> Vector<T> {
    let v: Vector<T> = random_vector(n, rng);
    let mean = v.sum() / T::from_i64(n as i64);
    v.iter().map(|x| x.clone() - mean.clone()).collect()
}

/// Copy of a stochastic matrix broken in one of two ways: a negative entry
/// (column sums preserved) or a column whose sum is no longer one.
pub fn perturb_invalid<T: Scalar, R: Rng>(m: &Matrix<T>, rng: &mut R) -> Matrix<T> {
    let n = m.n();
    let j = rng.random_range(0..n);
    let delta = T::from_ratio(rng.random_range(1..=5), 8);
    if rng.random_bool(0.5) && n >= 2 {
        // push a_ij below zero, move the mass to a_kj so the column still sums to 1
        let i = rng.random_range(0..n);
        let k = (i + 1 + rng.random_range(0..n - 1)) % n;
        let push = m.entry(i, j).clone() + delta;
        Matrix::from_fn(n, |r, c| {
            if c != j {
                m.entry(r, c).clone()
            } else if r == i {
                m.entry(r, c).clone() - push.clone()
            } else if r == k {
                m.entry(r, c).clone() + push.clone()
            } else {
                m.entry(r, c).clone()
            }
        })
    } else {
        let i = rng.random_range(0..n);
        Matrix::from_fn(n, |r, c| {
            if r == i && c == j {
                m.entry(r, c).clone() + delta.clone()
            } else {
                m.entry(r, c).clone()
            }
        })
    }
}
