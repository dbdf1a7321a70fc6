//! Analysis and construction of column-stochastic (Markov) matrices.
//!
//! A matrix `A` is column-stochastic when `a_ij >= 0` and every column sums
//! to one. The crate provides:
//!
//! * validation and the simplex characterizations ([`validation`]),
//! * stationary distributions and the splitting `V = span(ξ) ⊕ S3`
//!   ([`decomposition`]),
//! * Gershgorin bounds, eigenvalues and an exact diagonalizability
//!   certificate ([`spectral`]),
//! * classification and simulation of `Aᵐ x` ([`convergence`]),
//! * synthesis of non-diagonalizable Markov matrices ([`construction`]),
//! * brute-force reference computations ([`oracle`]).
//!
//! Everything is generic over [`Scalar`], implemented for exact
//! [`BigRational`](num_rational::BigRational) and `f64`.

pub mod config;
pub mod construction;
pub mod convergence;
pub mod decomposition;
pub mod error;
pub mod exact;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod roots;
pub mod sampling;
pub mod scalar;
pub mod sets;
pub mod spectral;
pub mod validation;

pub use config::AnalysisConfig;
pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use poly::Polynomial;
pub use scalar::{format_scalar, parse_scalar, Backend, Number, Scalar};
pub use validation::{ProbabilityVector, StochasticMatrix};
