/// Tolerances and iteration limits shared by every analysis.
///
/// Exact (rational) computations ignore the tolerances entirely; they only
/// apply on the float backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    /// Absolute tolerance for membership and stochasticity checks.
    pub tol: f64,
    /// `‖Mv − v‖∞` bound for float stationary vectors.
    pub fixed_point_tol: f64,
    /// Pivot threshold, relative to the largest entry, for float rank.
    pub rank_tol: f64,
    /// Pivot threshold for deciding semisimplicity of λ = 1 on floats.
    pub semisimple_rank_tol: f64,
    /// Acceptance bound on `|p(λ)|` for computed roots.
    pub root_residual_tol: f64,
    pub root_max_iter: usize,
    /// Imaginary parts at or below this are snapped to zero.
    pub imag_snap_tol: f64,
    /// Eigenvalues closer than this are treated as one cluster.
    pub cluster_radius: f64,
    /// `|λ| >= 1 − unit_margin` counts as unit modulus.
    pub unit_margin: f64,
    /// Tolerance when checking that an eigenvalue equals 1.
    pub eigenvalue_one_tol: f64,
    pub cesaro_iterations: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            tol: 1e-12,
            fixed_point_tol: 1e-10,
            rank_tol: 1e-9,
            semisimple_rank_tol: 1e-7,
            root_residual_tol: 1e-10,
            root_max_iter: 500,
            imag_snap_tol: 1e-9,
            cluster_radius: 1e-6,
            unit_margin: 1e-8,
            eigenvalue_one_tol: 1e-10,
            cesaro_iterations: 10_000,
        }
    }
}
