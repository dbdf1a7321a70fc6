//! JSON renderings of analysis results, shared by the CLI and the C API.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::AnalysisConfig;
use crate::construction::DefectiveConstruction;
use crate::convergence::{classify_convergence, Classification, ConvergenceClass, SimulationTrace, Verdict};
use crate::decomposition::{stationary_distribution, Decomposition, StationaryResult};
use crate::error::Result;
use crate::io::{render, render_vector, MatrixFile};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::spectral::{spectral_report, Diagonalizability, DiagonalizabilityCertificate, SpectralReport};
use crate::validation::{check_s5_closure, StochasticMatrix};

fn complex_pair(z: &Complex64) -> Value {
    json!([z.re, z.im])
}

fn poly_strings<T: Scalar>(p: &Polynomial<T>) -> Vec<String> {
    p.descending().iter().map(render).collect()
}

fn diagonalizable_value(d: Diagonalizability) -> Value {
    match d {
        Diagonalizability::True => json!(true),
        Diagonalizability::False => json!(false),
        Diagonalizability::Indeterminate => json!("indeterminate"),
    }
}

pub fn certificate_json(cert: &DiagonalizabilityCertificate) -> Value {
    let (i, j, v) = &cert.max_entry;
    json!({
        "diagonalizable": cert.diagonalizable,
        "squarefree_part": poly_strings(&cert.squarefree_part),
        "squarefree_text": cert.squarefree_part.to_string(),
        "max_entry": { "row": i + 1, "col": j + 1, "value": render(v) },
        "description": cert.describe(),
    })
}

pub fn spectral_json<T: Scalar>(report: &SpectralReport<T>) -> Value {
    json!({
        "eigenvalues": report.spectrum.eigenvalues.iter().map(complex_pair).collect::<Vec<_>>(),
        "clusters": report.spectrum.clusters.iter().map(|c| json!({
            "value": complex_pair(&c.value),
            "multiplicity": c.multiplicity,
        })).collect::<Vec<_>>(),
        "char_poly": poly_strings(&report.char_poly),
        "char_poly_text": report.char_poly.to_string(),
        "gershgorin": {
            "discs": report.gershgorin.discs.iter().map(|d| json!({
                "center": render(&d.center),
                "radius": render(&d.radius),
            })).collect::<Vec<_>>(),
            "radius_bound": render(&report.gershgorin.radius_bound),
        },
        "diagonalizable": diagonalizable_value(report.diagonalizable),
        "certificate": report.certificate.as_ref().map(certificate_json),
        "heuristic_diagonalizable": report.heuristic_diagonalizable,
    })
}

pub fn stationary_json<T: Scalar>(result: &StationaryResult<T>) -> Value {
    let mut out = json!({
        "unique": result.unique,
        "dimension": result.nullspace_dimension,
        "stationary": render_vector(result.stationary().vector()),
        "nullspace_basis": result.nullspace_basis.iter().map(render_vector).collect::<Vec<_>>(),
    });
    if T::EXACT {
        out["stationary_float"] = json!(result.stationary().vector().to_f64().as_slice());
    }
    out
}

pub fn decomposition_json<T: Scalar>(d: &Decomposition<T>) -> Value {
    json!({
        "k": render(&d.k),
        "beta": render_vector(&d.beta),
        "xi": render_vector(d.xi.vector()),
        "beta_sum": render(&d.beta.sum()),
    })
}

fn reason_json(class: &ConvergenceClass) -> Value {
    match class {
        ConvergenceClass::NonConvergent(reason) => {
            let eigenvalues: Vec<Value> = match reason {
                crate::convergence::NonConvergence::UnitModulusOther(v) => v.iter().map(complex_pair).collect(),
                crate::convergence::NonConvergence::DefectiveOne { .. } => vec![json!([1.0, 0.0])],
            };
            json!({ "kind": reason.kind(), "description": reason.describe(), "eigenvalues": eigenvalues })
        }
        _ => Value::Null,
    }
}

pub fn classification_json(c: &Classification) -> Value {
    json!({
        "class": c.class.name(),
        "reason": reason_json(&c.class),
        "one_multiplicity": c.one_multiplicity,
        "spectrum": c.spectrum.eigenvalues.iter().map(complex_pair).collect::<Vec<_>>(),
    })
}

pub fn simulation_json<T: Scalar>(trace: &SimulationTrace<T>) -> Value {
    let last = trace.iterates.last().expect("trace holds the start vector");
    let mut out = json!({
        "verdict": trace.verdict.name(),
        "iterations": last.step,
        "final_state": render_vector(&last.state),
        "final_delta": last.delta,
    });
    match &trace.verdict {
        Verdict::Converged { limit, steps } => {
            out["limit"] = json!(render_vector(limit));
            out["steps"] = json!(steps);
        }
        Verdict::Oscillating { period } => out["period"] = json!(period),
        Verdict::MaxIterations => {}
    }
    out
}

pub fn construction_json(c: &DefectiveConstruction) -> Value {
    json!({
        "matrix": MatrixFile::from_matrix(c.matrix.matrix()),
        "certificate": {
            "stochastic": true,
            "diagonalizable": c.certificate.diagonalizable,
            "lambda": render(&c.lambda),
            "scale": render(&c.scale),
            "stationary": render_vector(&c.stationary),
            "squarefree_part": poly_strings(&c.certificate.squarefree_part),
            "char_poly": poly_strings(&c.certificate.char_poly),
            "description": c.certificate.describe(),
        },
    })
}

/// Everything at once: spectrum, stationary distribution, diagonalizability,
/// convergence class and a sampled S5-closure check.
pub fn analyze_json<T: Scalar>(m: &StochasticMatrix<T>, samples: usize, seed: u64, cfg: &AnalysisConfig) -> Result<Value> {
    let spectral = spectral_report(m.matrix(), cfg)?;
    let stationary = stationary_distribution(m, cfg)?;
    let classification = classify_convergence(m, cfg)?;
    let s5 = check_s5_closure(m, stationary.stationary(), samples.max(1), seed, cfg)?;
    Ok(json!({
        "n": m.n(),
        "scalar": T::BACKEND,
        "valid": true,
        "diagonalizable": diagonalizable_value(spectral.diagonalizable),
        "stationary": render_vector(stationary.stationary().vector()),
        "stationary_float": stationary.stationary().vector().to_f64().as_slice(),
        "unique": stationary.unique,
        "class": classification.class.name(),
        "reason": reason_json(&classification.class),
        "s5_closure": s5,
        "spectrum": spectral_json(&spectral),
        "stationary_detail": stationary_json(&stationary),
    }))
}

pub fn matrix_json<T: Scalar>(m: &Matrix<T>) -> Value {
    serde_json::to_value(MatrixFile::from_matrix(m)).expect("plain data serializes")
}
