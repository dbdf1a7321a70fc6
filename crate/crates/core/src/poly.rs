//! Dense univariate polynomials over a scalar field.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial has an empty coefficient vector.

use std::fmt;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    /// From ascending coefficients `[c0, c1, …]`.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// From descending coefficients `[c_n, …, c0]`.
    pub fn from_descending(mut coeffs: Vec<T>) -> Self {
        coeffs.reverse();
        Polynomial::new(coeffs)
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// `x − r`.
    pub fn linear_root(r: T) -> Self {
        Polynomial::new(vec![-r, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<T> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(&(T::one() / lead.clone())),
            None => Polynomial::zero(),
        }
    }

    /// Euclidean division. Returns `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let d_deg = divisor.degree()?;
        let d_lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return Some((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - d_deg];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d_deg].clone() / d_lead.clone();
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            rem[k + d_deg] = T::zero();
            quot[k] = c;
        }
        Some((Polynomial::new(quot), Polynomial::new(rem)))
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    /// Monic gcd by the Euclidean algorithm, normalizing each remainder.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Cheap modular proof of squarefreeness for exact coefficients.
    fn certainly_squarefree(&self) -> bool {
        T::EXACT
            && self
                .coeffs
                .iter()
                .map(Scalar::to_rational)
                .collect::<Option<Vec<_>>>()
                .is_some_and(|c| crate::exact::certainly_squarefree(&c))
    }

    /// `p / gcd(p, p′)`, monic: the product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 || self.certainly_squarefree() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.monic().div_rem(&g).expect("gcd is nonzero").0
    }

    /// Yun's squarefree factorization: `p = lead · Π f_i^i` with each `f_i`
    /// monic, squarefree and pairwise coprime. Constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        if self.certainly_squarefree() {
            out.push((self.monic(), 1));
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).expect("nonzero").0;
        let c = df.div_rem(&a0).expect("nonzero").0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let next_b = b.div_rem(&a).expect("nonzero").0;
            let next_c = d.div_rem(&a).expect("nonzero").0;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            d = next_c.sub(&next_b.derivative());
            b = next_b;
            i += 1;
        }
        out
    }

    /// Number of times `x − r` divides `p` (0 if `r` is not a root).
    /// Exact on the rational backend.
    pub fn root_multiplicity(&self, r: &T) -> usize {
        let lin = Polynomial::linear_root(r.clone());
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, rem) = p.div_rem(&lin).expect("nonzero divisor");
            if !rem.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(M)` by Horner's scheme on matrices.
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Matrix<T> {
        let n = m.n();
        let mut acc = Matrix::zeros(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).expect("same size");
            acc = acc.add(&Matrix::identity(n).scale(c)).expect("same size");
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map(Scalar::to_f64)
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < T::zero();
            let mag = c.abs();
            let mag_text = mag.clone().into_number().to_string();
            let is_unit = mag == T::one();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            match (k, is_unit) {
                (0, _) => f.write_str(&mag_text)?,
                (1, true) => f.write_str("λ")?,
                (1, false) => write!(f, "{mag_text}·λ")?,
                (_, true) => write!(f, "λ^{k}")?,
                (_, false) => write!(f, "{mag_text}·λ^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn p(coeffs: &[i64]) -> Polynomial<BigRational> {
        Polynomial::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn division_reconstructs() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[3, 2, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(q.mul(&p(&[1, 1])).add(&r), p(&[3, 2, 1]));
        assert!(p(&[1]).div_rem(&Polynomial::zero()).is_none());
    }

    #[test]
    fn gcd_is_monic() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1])).scale(&BigRational::from_integer(5.into()));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn squarefree_part_and_decomposition() {
        // x^2 (x - 1)
        let f = p(&[0, 0, -1, 1]);
        assert_eq!(f.squarefree_part(), p(&[0, -1, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 2)]);
        // (x-1)^3
        let g = p(&[-1, 3, -3, 1]);
        assert_eq!(g.squarefree_decomposition(), vec![(p(&[-1, 1]), 3)]);
        assert_eq!(g.root_multiplicity(&BigRational::from_integer(1.into())), 3);
        assert_eq!(g.root_multiplicity(&BigRational::from_integer(2.into())), 0);
    }

    #[test]
    fn matrix_horner_matches_direct() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        // m^2 - 5m - 2I = 0 (Cayley–Hamilton)
        let f = Polynomial::new(vec![-2.0, -5.0, 1.0]);
        assert!(f.eval_matrix(&m).max_abs() < 1e-12);
    }

    #[test]
    fn display_uses_lambda() {
        assert_eq!(p(&[0, 0, -1, 1]).to_string(), "λ^3 - λ^2");
        assert_eq!(p(&[1, -2, 1]).to_string(), "λ^2 - 2·λ + 1");
        assert_eq!(Polynomial::<f64>::zero().to_string(), "0");
    }
}
