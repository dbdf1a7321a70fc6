//! Membership predicates for the affine and linear pieces of the simplex
//! geometry:
//!
//! * S1: components sum to 1
//! * S2: S1 with nonnegative components (the probability simplex)
//! * S3: components sum to 0 (the invariant hyperplane)
//! * S4: S3 with every component `>= −1/n` (orthogonal projection of S2 onto S3)
//! * S5(ξ): `{Y − ξ : Y ∈ S2}` for a fixed `ξ ∈ S2`
//!
//! Rational vectors are tested exactly. Float vectors use the absolute
//! tolerance `tol` both on the sum and on each entrywise bound.

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;

pub fn in_s1<T: Scalar>(x: &Vector<T>, tol: f64) -> bool {
    x.sum().near_eq(&T::one(), tol)
}

pub fn in_s2<T: Scalar>(x: &Vector<T>, tol: f64) -> bool {
    in_s1(x, tol) && x.iter().all(|v| v.near_nonneg(tol))
}

pub fn in_s3<T: Scalar>(x: &Vector<T>, tol: f64) -> bool {
    x.sum().near_zero(tol)
}

pub fn in_s4<T: Scalar>(x: &Vector<T>, tol: f64) -> bool {
    let floor = T::from_ratio(1, x.len() as i64);
    in_s3(x, tol) && x.iter().all(|v| (v.clone() + floor.clone()).near_nonneg(tol))
}

/// `x ∈ S5(ξ)`, i.e. `x + ξ ∈ S2`.
pub fn in_s5<T: Scalar>(x: &Vector<T>, xi: &Vector<T>, tol: f64) -> Result<bool> {
    xi.check_len(x.len())?;
    if !in_s2(xi, tol) {
        return Err(Error::NotProbabilityVector);
    }
    Ok(in_s2(&x.add(xi)?, tol))
}
