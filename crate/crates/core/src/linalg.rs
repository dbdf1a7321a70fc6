//! Dense vectors and square matrices over a [`Scalar`] backend.
//!
//! Storage is row-major; `entry(i, j)` is `a_ij` (row `i`, column `j`,
//! zero-based). Stochasticity is a column property throughout the crate.

use std::fmt;
use std::ops::Index;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{Number, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T>(Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(components: Vec<T>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Vector(components))
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![T::zero(); n])
    }

    /// Standard basis vector `e_j`.
    pub fn basis(n: usize, j: usize) -> Self {
        let mut v = vec![T::zero(); n];
        v[j] = T::one();
        Vector(v)
    }

    /// `(1/n, …, 1/n)`.
    pub fn uniform(n: usize) -> Self {
        Vector(vec![T::from_ratio(1, n as i64); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn sum(&self) -> T {
        self.0.iter().cloned().fold(T::zero(), |acc, x| acc + x)
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Vector(self.0.iter().map(|x| x.clone() * k.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other.len())?;
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_len(other.len())?;
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect(),
        ))
    }

    /// `‖x‖∞` as a double.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    /// `‖x − y‖∞` as a double (exactly zero iff equal on the rational backend).
    pub fn dist_inf(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn to_f64(&self) -> Vector<f64> {
        Vector(self.0.iter().map(Scalar::to_f64).collect())
    }

    pub fn to_rational(&self) -> Option<Vector<BigRational>> {
        self.0.iter().map(Scalar::to_rational).collect::<Option<Vec<_>>>().map(Vector)
    }

    pub fn to_numbers(&self) -> Vec<Number> {
        self.0.iter().cloned().map(Scalar::into_number).collect()
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.len() });
        }
        Ok(())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> FromIterator<T> for Vector<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl<T: Scalar> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.clone().into_number().to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Dense `n × n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_columns(columns: &[Vector<T>]) -> Result<Self> {
        let n = columns.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for c in columns {
            c.check_len(n)?;
        }
        Ok(Matrix::from_fn(n, |i, j| columns[j][i].clone()))
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![T::zero(); n * n] }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[T]) -> Self {
        Matrix::from_fn(entries.len(), |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n)
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        (0..self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn column_sums(&self) -> Vec<T> {
        (0..self.n)
            .map(|j| (0..self.n).fold(T::zero(), |acc, i| acc + self.entry(i, j).clone()))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.entry(j, i).clone())
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.entry(i, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let n = self.n;
        Ok(Matrix::from_fn(n, |i, j| {
            (0..n).fold(T::zero(), |acc, k| acc + self.entry(i, k).clone() * other.entry(k, j).clone())
        }))
    }

    pub fn mul_vec(&self, x: &Vector<T>) -> Result<Vector<T>> {
        x.check_len(self.n)?;
        Ok(self.rows().map(|row| {
            row.iter().zip(x.iter()).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        }).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &T) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|x| x.clone() * k.clone()).collect() }
    }

    /// `M − λI`.
    pub fn shift(&self, lambda: &T) -> Self {
        Matrix::from_fn(self.n, |i, j| {
            if i == j {
                self.entry(i, j).clone() - lambda.clone()
            } else {
                self.entry(i, j).clone()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Entry of largest magnitude, with its (zero-based) position.
    pub fn max_abs_entry(&self) -> (usize, usize, T) {
        let mut best = 0;
        for (idx, x) in self.data.iter().enumerate() {
            if x.abs() > self.data[best].abs() {
                best = idx;
            }
        }
        (best / self.n, best % self.n, self.data[best].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// Exact rational image. Fails only for non-finite floats.
    pub fn to_rational(&self) -> Option<Matrix<BigRational>> {
        let data = self.data.iter().map(Scalar::to_rational).collect::<Option<Vec<_>>>()?;
        Some(Matrix { n: self.n, data })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect(),
        })
    }

    /// Pivot threshold for this matrix: zero for exact, `rel_tol · max|a_ij|`
    /// for floats.
    fn pivot_threshold(&self, rel_tol: f64) -> f64 {
        if T::EXACT {
            0.0
        } else {
            rel_tol * self.max_abs()
        }
    }

    /// Reduced row echelon form with partial pivoting.
    pub fn row_echelon(&self, rel_tol: f64) -> Echelon<T> {
        let n = self.n;
        let threshold = self.pivot_threshold(rel_tol);
        let mut rows: Vec<Vec<T>> = self.rows().map(<[T]>::to_vec).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == n {
                break;
            }
            let Some(p) = (r..n)
                .filter(|&i| !rows[i][c].near_zero(threshold))
                .max_by(|&a, &b| {
                    rows[a][c].to_f64().abs().total_cmp(&rows[b][c].to_f64().abs())
                })
            else {
                for row in rows.iter_mut().skip(r) {
                    row[c] = T::zero();
                }
                continue;
            };
            rows.swap(r, p);
            let inv = T::one() / rows[r][c].clone();
            for x in rows[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for i in 0..n {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let factor = rows[i][c].clone();
                for k in 0..n {
                    let delta = factor.clone() * rows[r][k].clone();
                    rows[i][k] = rows[i][k].clone() - delta;
                }
                rows[i][c] = T::zero();
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rows, pivots }
    }

    /// Rank; exact on rationals, thresholded (relative to `max|a_ij|`) on floats.
    pub fn rank(&self, rel_tol: f64) -> usize {
        self.row_echelon(rel_tol).pivots.len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column.
    pub fn nullspace(&self, rel_tol: f64) -> Vec<Vector<T>> {
        let ech = self.row_echelon(rel_tol);
        let n = self.n;
        (0..n)
            .filter(|c| !ech.pivots.contains(c))
            .map(|free| {
                let mut v = vec![T::zero(); n];
                v[free] = T::one();
                for (r, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = -ech.rows[r][free].clone();
                }
                Vector(v)
            })
            .collect()
    }

    /// Solves `Mx = b` for nonsingular `M`.
    pub fn solve(&self, b: &Vector<T>, rel_tol: f64) -> Result<Vector<T>> {
        b.check_len(self.n)?;
        let inv = self.inverse(rel_tol)?;
        inv.mul_vec(b)
    }

    /// Gauss–Jordan inverse. Exact on the rational backend.
    pub fn inverse(&self, rel_tol: f64) -> Result<Self> {
        let n = self.n;
        let threshold = self.pivot_threshold(rel_tol);
        let mut a: Vec<Vec<T>> = self.rows().map(<[T]>::to_vec).collect();
        let mut inv: Vec<Vec<T>> = Matrix::<T>::identity(n).rows().map(<[T]>::to_vec).collect();
        for c in 0..n {
            let p = (c..n)
                .filter(|&i| !a[i][c].near_zero(threshold))
                .max_by(|&x, &y| a[x][c].to_f64().abs().total_cmp(&a[y][c].to_f64().abs()))
                .ok_or(Error::Singular)?;
            a.swap(c, p);
            inv.swap(c, p);
            let pivot = T::one() / a[c][c].clone();
            for k in 0..n {
                a[c][k] = a[c][k].clone() * pivot.clone();
                inv[c][k] = inv[c][k].clone() * pivot.clone();
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let factor = a[i][c].clone();
                for k in 0..n {
                    let da = factor.clone() * a[c][k].clone();
                    a[i][k] = a[i][k].clone() - da;
                    let di = factor.clone() * inv[c][k].clone();
                    inv[i][k] = inv[i][k].clone() - di;
                }
            }
        }
        Matrix::from_rows(inv)
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> T {
        let n = self.n;
        let mut a: Vec<Vec<T>> = self.rows().map(<[T]>::to_vec).collect();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n)
                .filter(|&i| !a[i][c].is_zero())
                .max_by(|&x, &y| a[x][c].to_f64().abs().total_cmp(&a[y][c].to_f64().abs()))
            else {
                return T::zero();
            };
            if p != c {
                a.swap(c, p);
                det = -det;
            }
            det = det * a[c][c].clone();
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let factor = a[i][c].clone() / a[c][c].clone();
                for k in c..n {
                    let d = factor.clone() * a[c][k].clone();
                    a[i][k] = a[i][k].clone() - d;
                }
            }
        }
        det
    }
}

/// Output of [`Matrix::row_echelon`].
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub rows: Vec<Vec<T>>,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let parts: Vec<String> = row.iter().map(|x| x.clone().into_number().to_string()).collect();
            writeln!(f, "[{}]", parts.join(", "))?;
        }
        Ok(())
    }
}
