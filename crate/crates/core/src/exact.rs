//! Integer kernels behind the rational backend.
//!
//! Rational Gaussian elimination pays for a gcd on every operation and its
//! intermediate fractions swell quickly. The routines here clear
//! denominators once and work over the integers instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::Matrix;
use crate::poly::Polynomial;

/// Determinant by fraction-free (Bareiss) elimination. Every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                row[j] = (&row[j] * &pivot_row[k] - &row[k] * &pivot_row[j]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Monic `det(λI − M)` for a rational matrix.
///
/// Writing `M = B·D⁻¹` with `D` the diagonal of column denominators and `B`
/// integral, `det(λI − M) = det(λD − B) / det D`. The right-hand numerator is
/// evaluated at `λ = 0, 1, …, n` by Bareiss elimination and interpolated.
pub fn char_poly(m: &Matrix<BigRational>) -> Polynomial<BigRational> {
    let n = m.n();
    let denominators: Vec<BigInt> = (0..n)
        .map(|j| (0..n).fold(BigInt::one(), |acc, i| acc.lcm(m.entry(i, j).denom())))
        .collect();
    let b: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| m.entry(i, j).numer() * (&denominators[j] / m.entry(i, j).denom()))
                .collect()
        })
        .collect();
    let values: Vec<BigRational> = (0..=n)
        .map(|x| {
            let x = BigInt::from(x);
            let shifted = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { &x * &denominators[j] - &b[i][j] } else { -&b[i][j] })
                        .collect()
                })
                .collect();
            BigRational::from_integer(bareiss_det(shifted))
        })
        .collect();
    let scale: BigInt = denominators.iter().product();
    interpolate(&values).scale(&BigRational::new(BigInt::one(), scale))
}

/// Newton interpolation through `(k, values[k])`, `k = 0..values.len()`.
fn interpolate(values: &[BigRational]) -> Polynomial<BigRational> {
    let len = values.len();
    let mut diffs = values.to_vec();
    for level in 1..len {
        for k in (level..len).rev() {
            diffs[k] = (&diffs[k] - &diffs[k - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    let mut p = Polynomial::constant(diffs[len - 1].clone());
    for k in (0..len - 1).rev() {
        let node = BigRational::from_integer(BigInt::from(k));
        p = p.mul(&Polynomial::linear_root(node)).add(&Polynomial::constant(diffs[k].clone()));
    }
    p
}

const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = a.last().expect("nonempty") * lead_inv % p;
        for (k, &c) in b.iter().enumerate() {
            a[shift + k] = (a[shift + k] + p - factor * c % p) % p;
        }
        a = trim(a);
    }
    a
}

/// `true` only if `gcd(f, f′)` is constant modulo one of a few primes not
/// dividing the leading coefficient, which proves `f` squarefree over ℚ.
/// `false` means "not proven": fall back to exact arithmetic.
pub fn certainly_squarefree(coeffs: &[BigRational]) -> bool {
    if coeffs.len() <= 2 {
        return true;
    }
    let common = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&common / c.denom())).collect();
    PRIMES.iter().any(|&p| {
        let big_p = BigInt::from(p);
        let f: Vec<u64> = ints.iter().map(|c| c.mod_floor(&big_p).to_u64().expect("reduced below p")).collect();
        if f.last() == Some(&0) {
            return false;
        }
        let df = trim(f.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect());
        if df.is_empty() {
            return false;
        }
        let (mut a, mut b) = (f, df);
        while !b.is_empty() {
            let r = rem_mod(a, &b, p);
            a = b;
            b = r;
        }
        a.len() == 1
    })
}
