//! Brute-force reference computations.
//!
//! Everything here deliberately avoids the main code paths: lattice search
//! instead of a linear solve, repeated multiplication instead of spectral
//! reasoning, cofactor expansion instead of Faddeev–LeVerrier. Agreement
//! between the two is the point.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

pub const MAX_LATTICE_N: usize = 4;
pub const MAX_RESOLUTION: usize = 200;
pub const MAX_COFACTOR_N: usize = 6;
pub const MAX_POWER: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeFixedPoint<T> {
    pub point: Vector<T>,
    /// Lattice coordinates: `point_i = counts_i / resolution`.
    pub counts: Vec<usize>,
    /// `‖Mx − x‖∞` at `point`.
    pub residual: f64,
}

fn naive_apply<T: Scalar>(m: &Matrix<T>, x: &[T]) -> Vec<T> {
    let n = m.n();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = T::zero();
        for (j, xj) in x.iter().enumerate() {
            acc = acc + m.entry(i, j).clone() * xj.clone();
        }
        out.push(acc);
    }
    out
}

pub fn fixed_point_residual<T: Scalar>(m: &Matrix<T>, x: &[T]) -> f64 {
    naive_apply(m, x)
        .into_iter()
        .zip(x)
        .map(|(y, xi)| (y - xi.clone()).to_f64().abs())
        .fold(0.0, f64::max)
}

fn for_each_composition(total: usize, parts: usize, prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if parts == 1 {
        prefix.push(total);
        f(prefix);
        prefix.pop();
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        for_each_composition(total - k, parts - 1, prefix, f);
        prefix.pop();
    }
}

/// Searches the simplex lattice `{c / resolution : Σc = resolution}` for the
/// point minimizing `‖Mx − x‖∞`. Ties go to the first point in lexicographic
/// order of the counts.
pub fn brute_force_fixed_point<T: Scalar>(m: &Matrix<T>, resolution: usize) -> Result<LatticeFixedPoint<T>> {
    let n = m.n();
    if n > MAX_LATTICE_N {
        return Err(Error::SizeLimit { n, max: MAX_LATTICE_N });
    }
    if resolution == 0 || resolution > MAX_RESOLUTION {
        return Err(Error::Precondition(format!("resolution must be in 1..={MAX_RESOLUTION}")));
    }
    let denom = resolution as i64;
    let mut best: Option<(f64, Vec<usize>)> = None;
    for_each_composition(resolution, n, &mut Vec::with_capacity(n), &mut |counts| {
        let x: Vec<T> = counts.iter().map(|&c| T::from_ratio(c as i64, denom)).collect();
        let r = fixed_point_residual(m, &x);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, counts.to_vec()));
        }
    });
    let (residual, counts) = best.expect("lattice is non-empty");
    let point = counts.iter().map(|&c| T::from_ratio(c as i64, denom)).collect();
    Ok(LatticeFixedPoint { point, counts, residual })
}

/// Nearest simplex-lattice point to `x ∈ S2` by largest-remainder rounding.
pub fn nearest_lattice_point(x: &[f64], resolution: usize) -> Vec<usize> {
    let scaled: Vec<f64> = x.iter().map(|v| v.max(0.0) * resolution as f64).collect();
    let mut counts: Vec<usize> = scaled.iter().map(|v| v.floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| (scaled[b] - scaled[b].floor()).total_cmp(&(scaled[a] - scaled[a].floor())));
    for &i in order.iter().take(resolution.saturating_sub(assigned)) {
        counts[i] += 1;
    }
    counts
}

/// `Mᵐ` by repeated plain multiplication (`M⁰ = I`).
pub fn naive_power<T: Scalar>(m: &Matrix<T>, power: usize) -> Result<Matrix<T>> {
    if power > MAX_POWER {
        return Err(Error::Precondition(format!("power must be at most {MAX_POWER}")));
    }
    let n = m.n();
    let mut acc = Matrix::<T>::identity(n);
    for _ in 0..power {
        acc = Matrix::from_fn(n, |i, j| {
            let mut s = T::zero();
            for k in 0..n {
                s = s + acc.entry(i, k).clone() * m.entry(k, j).clone();
            }
            s
        });
    }
    Ok(acc)
}

/// Laplace expansion along the first row, generic over the entry ring.
fn laplace<E: Clone>(
    entries: &[Vec<E>],
    zero: &E,
    add: &impl Fn(&E, &E) -> E,
    mul: &impl Fn(&E, &E) -> E,
    neg: &impl Fn(&E) -> E,
) -> E {
    let n = entries.len();
    if n == 1 {
        return entries[0][0].clone();
    }
    let mut total = zero.clone();
    for col in 0..n {
        let minor: Vec<Vec<E>> = entries[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = mul(&entries[0][col], &laplace(&minor, zero, add, mul, neg));
        total = if col % 2 == 0 { add(&total, &term) } else { add(&total, &neg(&term)) };
    }
    total
}

/// Determinant by cofactor expansion.
pub fn naive_det<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    let n = m.n();
    if n > MAX_COFACTOR_N {
        return Err(Error::SizeLimit { n, max: MAX_COFACTOR_N });
    }
    let rows: Vec<Vec<T>> = m.rows().map(<[T]>::to_vec).collect();
    Ok(laplace(&rows, &T::zero(), &|a, b| a.clone() + b.clone(), &|a, b| a.clone() * b.clone(), &|a| -a.clone()))
}

fn poly_add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| a.get(k).cloned().unwrap_or_else(T::zero) + b.get(k).cloned().unwrap_or_else(T::zero))
        .collect()
}

fn poly_mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// `det(λI − M)` by cofactor expansion over polynomial entries.
pub fn naive_char_poly<T: Scalar>(m: &Matrix<T>) -> Result<Polynomial<T>> {
    let n = m.n();
    if n > MAX_COFACTOR_N {
        return Err(Error::SizeLimit { n, max: MAX_COFACTOR_N });
    }
    let entries: Vec<Vec<Vec<T>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { vec![-m.entry(i, j).clone(), T::one()] } else { vec![-m.entry(i, j).clone()] })
                .collect()
        })
        .collect();
    let det = laplace(
        &entries,
        &Vec::new(),
        &|a, b| poly_add(a, b),
        &|a, b| poly_mul(a, b),
        &|a| a.iter().map(|c| -c.clone()).collect(),
    );
    Ok(Polynomial::new(det))
}
