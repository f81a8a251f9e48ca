use serde::{Deserialize, Serialize};

use crate::error::{QcutError, Result};

/// Affine function `a·u + b` through two interpolation nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecantCoeffs {
    pub a: f64,
    pub b: f64,
}

/// `a·s + b` with `|a·π0 + b| = |π0|` and `|a·π1 + b| = |π1|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogCoeffs {
    pub a: f64,
    pub b: f64,
}

/// `1e-9 · max(1, |v|…)`, the tolerance used for every case boundary.
pub(crate) fn case_tol(values: &[f64]) -> f64 {
    1e-9 * values.iter().fold(1.0_f64, |m, v| m.max(v.abs()))
}

fn check_interval(pi0: f64, pi1: f64) -> Result<()> {
    let scale = 1f64.max(pi0.abs()).max(pi1.abs());
    if !(pi0.is_finite() && pi1.is_finite()) || pi1 - pi0 < 1e-12 * scale {
        return Err(QcutError::DegenerateInterval { pi0, pi1 });
    }
    Ok(())
}

/// Secant through `(π0, f0)` and `(π1, f1)`.
pub fn secant_coeffs(f0: f64, f1: f64, pi0: f64, pi1: f64) -> Result<SecantCoeffs> {
    check_interval(pi0, pi1)?;
    if !(f0.is_finite() && f1.is_finite()) {
        return Err(QcutError::InvalidInput("secant values must be finite".into()));
    }
    let w = pi1 - pi0;
    Ok(SecantCoeffs { a: (f1 - f0) / w, b: (pi1 * f0 - pi0 * f1) / w })
}

/// Homogeneous interpolation of `|s|` on an interval containing zero.
pub fn homogeneous_coeffs(pi0: f64, pi1: f64) -> Result<HomogCoeffs> {
    check_interval(pi0, pi1)?;
    if !(pi0 < 0.0 && 0.0 < pi1) {
        return Err(QcutError::ZeroNotInterior { pi0, pi1 });
    }
    let w = pi1 - pi0;
    Ok(HomogCoeffs { a: (pi0 + pi1) / w, b: -2.0 * pi1 * pi0 / w })
}
