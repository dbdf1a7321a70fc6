//! Gershgorin bounds, characteristic polynomials, eigenvalues and the exact
//! diagonalizability certificate.
//!
//! A matrix is diagonalizable over ℂ iff its minimal polynomial is
//! squarefree, i.e. iff the squarefree part `q = p / gcd(p, p′)` of its
//! characteristic polynomial already annihilates it. That test is only run in
//! exact arithmetic; float inputs are reported as indeterminate.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::roots;
use crate::scalar::{Number, Scalar};

pub const MAX_CHAR_POLY_N: usize = 64;
pub const MAX_EIGEN_N: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct GershgorinDisc<T> {
    pub center: T,
    pub radius: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gershgorin<T> {
    pub discs: Vec<GershgorinDisc<T>>,
    /// `max |center| + radius`; every eigenvalue has modulus at most this.
    pub radius_bound: T,
}

/// Gershgorin discs of `Mᵀ`: disc `i` is centred at `a_ii` with radius the
/// off-diagonal magnitude of column `i`. For a column-stochastic matrix the
/// bound is exactly 1.
pub fn gershgorin_discs<T: Scalar>(m: &Matrix<T>) -> Gershgorin<T> {
    let n = m.n();
    let discs: Vec<GershgorinDisc<T>> = (0..n)
        .map(|i| {
            let radius = (0..n)
                .filter(|&j| j != i)
                .fold(T::zero(), |acc, j| acc + m.entry(j, i).abs());
            GershgorinDisc { center: m.entry(i, i).clone(), radius }
        })
        .collect();
    let radius_bound = discs
        .iter()
        .map(|d| d.center.abs() + d.radius.clone())
        .fold(None, |best: Option<T>, r| match best {
            Some(b) if b >= r => Some(b),
            _ => Some(r),
        })
        .unwrap_or_else(T::zero);
    Gershgorin { discs, radius_bound }
}

/// Monic `det(λI − M)`.
///
/// Rational input goes through integer determinants and interpolation (see
/// [`crate::exact::char_poly`]). Float input is brought to upper Hessenberg
/// form `H` by Gaussian similarity transforms, then with `p_0 = 1`
///
/// `p_k = (λ − h_kk)·p_{k−1} − Σ_{i<k} h_ik·(h_{i+1,i}⋯h_{k,k−1})·p_{i−1}`
///
/// (1-based), which needs `O(n³)` scalar operations.
pub fn characteristic_polynomial<T: Scalar>(m: &Matrix<T>) -> Result<Polynomial<T>> {
    let n = m.n();
    if n > MAX_CHAR_POLY_N {
        return Err(Error::SizeLimit { n, max: MAX_CHAR_POLY_N });
    }
    if T::EXACT {
        let exact = m.to_rational().ok_or(Error::RequiresExact)?;
        return Ok(crate::exact::char_poly(&exact).map(|c| T::from_number(&Number::Rational(c.clone()))));
    }
    let h = hessenberg(m);
    let lambda = Polynomial::new(vec![T::zero(), T::one()]);
    let mut polys: Vec<Polynomial<T>> = vec![Polynomial::constant(T::one())];
    for k in 0..n {
        let mut next = lambda.sub(&Polynomial::constant(h[k][k].clone())).mul(&polys[k]);
        let mut product = T::one();
        for i in (0..k).rev() {
            product = product * h[i + 1][i].clone();
            if product.is_zero() {
                break;
            }
            let coeff = h[i][k].clone() * product.clone();
            if !coeff.is_zero() {
                next = next.sub(&polys[i].scale(&coeff));
            }
        }
        polys.push(next);
    }
    Ok(polys.pop().expect("n + 1 polynomials"))
}

/// Upper Hessenberg form by elimination similarity `H = L⁻¹ M L`.
fn hessenberg<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let n = m.n();
    let mut h: Vec<Vec<T>> = m.rows().map(<[T]>::to_vec).collect();
    for k in 0..n.saturating_sub(2) {
        let candidates = k + 1..n;
        let pivot = if T::EXACT {
            candidates.clone().find(|&r| !h[r][k].is_zero())
        } else {
            candidates
                .clone()
                .filter(|&r| !h[r][k].is_zero())
                .max_by(|&a, &b| h[a][k].to_f64().abs().total_cmp(&h[b][k].to_f64().abs()))
        };
        let Some(r) = pivot else { continue };
        if r != k + 1 {
            h.swap(r, k + 1);
            for row in h.iter_mut() {
                row.swap(r, k + 1);
            }
        }
        let p = h[k + 1][k].clone();
        for i in k + 2..n {
            if h[i][k].is_zero() {
                continue;
            }
            let f = h[i][k].clone() / p.clone();
            for j in k..n {
                let delta = f.clone() * h[k + 1][j].clone();
                h[i][j] = h[i][j].clone() - delta;
            }
            for row in h.iter_mut() {
                let delta = f.clone() * row[i].clone();
                row[k + 1] = row[k + 1].clone() + delta;
            }
        }
    }
    h
}

/// A group of numerically coincident eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// All `n` eigenvalues with repetition, largest modulus first.
    pub eigenvalues: Vec<Complex64>,
    pub clusters: Vec<EigenCluster>,
    /// Multiplicity of λ = 1 as an exact root of the characteristic
    /// polynomial (rational inputs only).
    pub exact_one_multiplicity: Option<usize>,
}

impl Spectrum {
    pub fn multiplicity_near(&self, target: Complex64, radius: f64) -> usize {
        self.eigenvalues.iter().filter(|z| (**z - target).norm() <= radius).count()
    }
}

/// Eigenvalues with multiplicities.
///
/// Rational input: the characteristic polynomial is split by an exact
/// squarefree factorization and only the squarefree factors go to the
/// floating-point root finder, so a repeated eigenvalue comes back as exact
/// copies of one well-conditioned simple root.
///
/// Float input: real Schur form, then clustering. Lifting doubles to
/// rationals would be exact too, but their 53-bit denominators make the
/// rational characteristic polynomial unaffordable beyond a few dimensions.
pub fn spectrum<T: Scalar>(m: &Matrix<T>, cfg: &AnalysisConfig) -> Result<Spectrum> {
    let n = m.n();
    if n > MAX_EIGEN_N {
        return Err(Error::SizeLimit { n, max: MAX_EIGEN_N });
    }
    let (mut values, exact_one_multiplicity) = if T::EXACT {
        let exact = m
            .to_rational()
            .ok_or_else(|| Error::Precondition("matrix has non-finite entries".into()))?;
        let p = characteristic_polynomial(&exact)?;
        (exact_roots(&p, cfg)?, Some(p.root_multiplicity(&<BigRational as Scalar>::one())))
    } else {
        (schur_eigenvalues(&m.to_f64(), cfg)?, None)
    };

    values.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
    let clusters = cluster(&values, cfg.cluster_radius);
    Ok(Spectrum { eigenvalues: values, clusters, exact_one_multiplicity })
}

fn exact_roots(p: &Polynomial<BigRational>, cfg: &AnalysisConfig) -> Result<Vec<Complex64>> {
    let p_f64: Vec<f64> = p.to_f64().coeffs().to_vec();
    let mut values = Vec::with_capacity(p.degree().unwrap_or(0));
    for (factor, mult) in p.squarefree_decomposition() {
        let factor_roots = roots::find_roots(factor.to_f64().coeffs(), cfg.root_residual_tol, cfg.root_max_iter)?;
        for z in factor_roots {
            values.extend(std::iter::repeat_n(z, mult));
        }
    }
    snap_and_pair(&mut values, cfg.imag_snap_tol);
    if let Some(bad) = values.iter().find(|&&z| !roots::residual_ok(&p_f64, z, cfg.root_residual_tol)) {
        return Err(Error::RootFinding {
            iterations: cfg.root_max_iter,
            residual: roots::eval(&p_f64, *bad).norm(),
        });
    }
    Ok(values)
}

fn schur_eigenvalues(m: &Matrix<f64>, cfg: &AnalysisConfig) -> Result<Vec<Complex64>> {
    let n = m.n();
    let dense = nalgebra::DMatrix::from_fn(n, n, |i, j| *m.entry(i, j));
    let schur = nalgebra::linalg::Schur::try_new(dense, f64::EPSILON, cfg.root_max_iter * n)
        .ok_or(Error::RootFinding { iterations: cfg.root_max_iter * n, residual: f64::NAN })?;
    let mut values: Vec<Complex64> =
        schur.complex_eigenvalues().iter().map(|z| Complex64::new(z.re, z.im)).collect();
    snap_and_pair(&mut values, cfg.imag_snap_tol);
    Ok(values)
}

pub fn eigenvalues<T: Scalar>(m: &Matrix<T>, cfg: &AnalysisConfig) -> Result<Vec<Complex64>> {
    Ok(spectrum(m, cfg)?.eigenvalues)
}

fn snap_and_pair(values: &mut [Complex64], snap: f64) {
    for z in values.iter_mut() {
        if z.im.abs() <= snap {
            z.im = 0.0;
        }
    }
    let mut used = vec![false; values.len()];
    for i in 0..values.len() {
        if used[i] || values[i].im <= 0.0 {
            continue;
        }
        let partner = (0..values.len())
            .filter(|&j| !used[j] && j != i && values[j].im < 0.0)
            .min_by(|&a, &b| {
                (values[a] - values[i].conj())
                    .norm()
                    .total_cmp(&(values[b] - values[i].conj()).norm())
            });
        if let Some(j) = partner {
            let re = 0.5 * (values[i].re + values[j].re);
            let im = 0.5 * (values[i].im - values[j].im);
            values[i] = Complex64::new(re, im);
            values[j] = Complex64::new(re, -im);
            used[i] = true;
            used[j] = true;
        }
    }
}

fn cluster(values: &[Complex64], radius: f64) -> Vec<EigenCluster> {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for &z in values {
        match groups.iter_mut().find(|(c, _)| (*c - z).norm() <= radius) {
            Some((center, count)) => {
                *center = (*center * (*count as f64) + z) / (*count as f64 + 1.0);
                *count += 1;
            }
            None => groups.push((z, 1)),
        }
    }
    groups.into_iter().map(|(value, multiplicity)| EigenCluster { value, multiplicity }).collect()
}

/// `n − rank(M − λI)` on the float path.
pub fn geometric_multiplicity<T: Scalar>(m: &Matrix<T>, lambda: f64, rel_tol: f64) -> usize {
    let shifted = m.to_f64().shift(&lambda);
    // a pure shift of the identity is rank zero regardless of scale
    if shifted.max_abs() <= rel_tol {
        return m.n();
    }
    m.n() - shifted.rank(rel_tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalizabilityCertificate {
    pub diagonalizable: bool,
    pub char_poly: Polynomial<BigRational>,
    /// `q = p / gcd(p, p′)`.
    pub squarefree_part: Polynomial<BigRational>,
    /// Largest-magnitude entry of `q(M)` with its zero-based position.
    pub max_entry: (usize, usize, BigRational),
}

impl DiagonalizabilityCertificate {
    pub fn describe(&self) -> String {
        let (i, j, v) = &self.max_entry;
        format!(
            "q(λ) = {} ; max |q(M)| entry at ({}, {}) = {}",
            self.squarefree_part,
            i + 1,
            j + 1,
            crate::scalar::format_rational(v)
        )
    }
}

/// Exact diagonalizability test. Rejects the float backend.
pub fn is_diagonalizable_exact<T: Scalar>(m: &Matrix<T>) -> Result<DiagonalizabilityCertificate> {
    if !T::EXACT {
        return Err(Error::RequiresExact);
    }
    let n = m.n();
    if n > MAX_EIGEN_N {
        return Err(Error::SizeLimit { n, max: MAX_EIGEN_N });
    }
    let exact = m.to_rational().ok_or(Error::RequiresExact)?;
    let char_poly = characteristic_polynomial(&exact)?;
    let squarefree_part = char_poly.squarefree_part();
    // p squarefree: q = p and q(M) = 0 by Cayley–Hamilton
    let (diagonalizable, max_entry) = if squarefree_part.degree() == char_poly.degree() {
        (true, (0, 0, <BigRational as Scalar>::zero()))
    } else {
        let q_of_m = squarefree_part.eval_matrix(&exact);
        (q_of_m.is_zero(), q_of_m.max_abs_entry())
    };
    Ok(DiagonalizabilityCertificate {
        diagonalizable,
        char_poly,
        squarefree_part,
        max_entry,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Diagonalizability {
    True,
    False,
    Indeterminate,
}

#[derive(Debug, Clone)]
pub struct SpectralReport<T> {
    pub spectrum: Spectrum,
    pub char_poly: Polynomial<T>,
    pub gershgorin: Gershgorin<T>,
    pub diagonalizable: Diagonalizability,
    pub certificate: Option<DiagonalizabilityCertificate>,
    /// Float inputs only: `Some(false)` when some real eigenvalue cluster
    /// has a smaller eigenspace than its multiplicity, `Some(true)` when no
    /// cluster looks defective.
    pub heuristic_diagonalizable: Option<bool>,
}

pub fn spectral_report<T: Scalar>(m: &Matrix<T>, cfg: &AnalysisConfig) -> Result<SpectralReport<T>> {
    let spectrum = spectrum(m, cfg)?;
    let char_poly = characteristic_polynomial(m)?;
    let gershgorin = gershgorin_discs(m);
    let (diagonalizable, certificate, heuristic) = if T::EXACT {
        let cert = is_diagonalizable_exact(m)?;
        let d = if cert.diagonalizable { Diagonalizability::True } else { Diagonalizability::False };
        (d, Some(cert), None)
    } else {
        (Diagonalizability::Indeterminate, None, float_heuristic(m, &spectrum, cfg))
    };
    Ok(SpectralReport {
        spectrum,
        char_poly,
        gershgorin,
        diagonalizable,
        certificate,
        heuristic_diagonalizable: heuristic,
    })
}

fn float_heuristic<T: Scalar>(m: &Matrix<T>, spectrum: &Spectrum, cfg: &AnalysisConfig) -> Option<bool> {
    let mut undecided = false;
    for c in spectrum.clusters.iter().filter(|c| c.multiplicity > 1) {
        if c.value.im != 0.0 {
            undecided = true;
            continue;
        }
        if geometric_multiplicity(m, c.value.re, cfg.semisimple_rank_tol) < c.multiplicity {
            return Some(false);
        }
    }
    (!undecided).then_some(true)
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn poly(desc: &[i64]) -> Polynomial<BigRational> {
        Polynomial::from_descending(desc.iter().map(|&c| q(c, 1)).collect())
    }

    fn half() -> Matrix<BigRational> {
        Matrix::from_rows(vec![vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(1, 2)]]).unwrap()
    }

    #[test]
    fn gershgorin_examples() {
        assert_eq!(gershgorin_discs(&defective()).radius_bound, q(1, 1));
        let g = gershgorin_discs(&Matrix::<BigRational>::identity(3));
        assert!(g.discs.iter().all(|d| d.center == q(1, 1) && d.radius == q(0, 1)));
        assert_eq!(g.radius_bound, q(1, 1));
        let g = gershgorin_discs(&half());
        assert_eq!(g.discs, vec![GershgorinDisc { center: q(1, 2), radius: q(1, 2) }; 2]);
        assert_eq!(g.radius_bound, q(1, 1));
    }

    #[test]
    fn gershgorin_uses_columns() {
        // column 1 off-diagonal mass 3, row 1 off-diagonal mass 0
        let m = Matrix::from_rows(vec![vec![1.0, 0.0], vec![3.0, 1.0]]).unwrap();
        let g = gershgorin_discs(&m);
        assert_eq!(g.discs[0].radius, 3.0);
        assert_eq!(g.discs[1].radius, 0.0);
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(characteristic_polynomial(&Matrix::<BigRational>::identity(2)).unwrap(), poly(&[1, -2, 1]));
        assert_eq!(characteristic_polynomial(&defective()).unwrap(), poly(&[1, -1, 0, 0]));
        let swap = Matrix::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
        assert_eq!(characteristic_polynomial(&swap).unwrap(), poly(&[1, 0, -1]));
    }

    #[test]
    fn eigenvalues_of_defective_example() {
        let s = spectrum(&defective(), &AnalysisConfig::default()).unwrap();
        assert_eq!(s.eigenvalues, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert_eq!(s.exact_one_multiplicity, Some(1));
        assert_eq!(s.clusters.len(), 2);
    }

    #[test]
    fn eigenvalues_of_three_cycle() {
        let p = Matrix::from_rows(vec![vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let ev = eigenvalues(&p, &AnalysisConfig::default()).unwrap();
        assert_eq!(ev.len(), 3);
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        for target in [Complex64::new(1.0, 0.0), w, w.conj()] {
            assert!(ev.iter().any(|z| (z - target).norm() < 1e-12), "{target}");
        }
        assert!(ev.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
        // conjugates are paired exactly
        let complex: Vec<_> = ev.iter().filter(|z| z.im != 0.0).collect();
        assert_eq!(*complex[0], complex[1].conj());
    }

    #[test]
    fn identity_eigenvalues_are_exact() {
        let ev = eigenvalues(&Matrix::<f64>::identity(3), &AnalysisConfig::default()).unwrap();
        assert_eq!(ev, vec![Complex64::new(1.0, 0.0); 3]);
    }

    #[test]
    fn example_matrix_is_defective() {
        let cert = is_diagonalizable_exact(&defective()).unwrap();
        assert!(!cert.diagonalizable);
        assert_eq!(cert.squarefree_part, poly(&[1, -1, 0]));
        let a = defective();
        let a2_minus_a = a.mul(&a).unwrap().sub(&a).unwrap();
        assert!(!a2_minus_a.is_zero());
        assert_eq!(cert.squarefree_part.eval_matrix(&a), a2_minus_a);
    }

    #[test]
    fn diagonalizable_examples() {
        let cert = is_diagonalizable_exact(&Matrix::<BigRational>::identity(3)).unwrap();
        assert!(cert.diagonalizable);
        assert_eq!(cert.squarefree_part, poly(&[1, -1]));
        let cert = is_diagonalizable_exact(&half()).unwrap();
        assert!(cert.diagonalizable);
        assert_eq!(cert.squarefree_part, poly(&[1, -1, 0]));
    }

    #[test]
    fn float_input_is_rejected_by_exact_test() {
        let m = Matrix::<f64>::identity(2);
        assert!(matches!(is_diagonalizable_exact(&m), Err(Error::RequiresExact)));
        let report = spectral_report(&m, &AnalysisConfig::default()).unwrap();
        assert_eq!(report.diagonalizable, Diagonalizability::Indeterminate);
        assert_eq!(report.heuristic_diagonalizable, Some(true));
    }

    #[test]
    fn float_heuristic_flags_defective_example() {
        let report = spectral_report(&defective().to_f64(), &AnalysisConfig::default()).unwrap();
        assert_eq!(report.heuristic_diagonalizable, Some(false));
    }
}
