//! Split cuts for disjunctions `πᵀx + π̂t ∈ [π0, π1]` with `π̂ ≠ 0` on the
//! standard paraboloid `‖x‖² ≤ t` and cone `‖x‖ ≤ t`.

use std::f64::consts::SQRT_2;

use crate::error::{QcutError, Result};
use crate::linalg::{norm2_sq, outer_sum, perp_matrix, scale, Mat};
use crate::model::{CaseLabel, Cut, Sense};

use super::interp::case_tol;

fn check(pi_hat: f64, pi0: f64, pi1: f64) -> Result<()> {
    if !(pi0 < pi1) {
        return Err(QcutError::DegenerateInterval { pi0, pi1 });
    }
    if pi_hat == 0.0 {
        return Err(QcutError::InvalidInput("pi_hat must be nonzero".into()));
    }
    Ok(())
}

fn linear(pi: &[f64], pi_hat: f64, rhs: f64, sense: Sense) -> Cut {
    Cut::Linear { coef: pi.to_vec(), t_coef: pi_hat, rhs, sense }
}

/// Coefficients of the conic paraboloid cut
/// `‖x + π/(2π̂)‖ ≤ c·πᵀx + d·t + e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParaboloidConic {
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

pub(crate) fn paraboloid_conic_coeffs(nu: f64, pi_hat: f64, pi0: f64, pi1: f64) -> ParaboloidConic {
    let r0 = (nu + 4.0 * pi0 * pi_hat).max(0.0).sqrt();
    let r1 = (nu + 4.0 * pi1 * pi_hat).max(0.0).sqrt();
    let f = (nu + 2.0 * (pi0 + pi1) * pi_hat - r0 * r1).max(0.0).sqrt();
    let w = pi1 - pi0;
    let c = f / (SQRT_2 * w * pi_hat);
    ParaboloidConic {
        b: nu / (2.0 * pi_hat),
        c,
        d: c * pi_hat,
        e: (nu + r0 * r1) * f / (4.0 * SQRT_2 * w * pi_hat * pi_hat),
        f,
    }
}

/// Split cut for `‖x‖² ≤ t`; `π = 0` is allowed.
pub fn split_cut_paraboloid_general(pi: &[f64], pi_hat: f64, pi0: f64, pi1: f64) -> Result<(Cut, CaseLabel)> {
    check(pi_hat, pi0, pi1)?;
    let nu = norm2_sq(pi);
    // vertex value of πᵀx + π̂t over the paraboloid
    let tau = -nu / (4.0 * pi_hat);
    let tol = case_tol(&[pi0, pi1, tau]);
    if pi_hat > 0.0 {
        if pi1 <= tau + tol {
            return Ok((Cut::NoCut, CaseLabel::ParaboloidNoCut));
        }
        if pi0 < tau - tol {
            return Ok((linear(pi, pi_hat, pi1, Sense::Ge), CaseLabel::ParaboloidLinearHi));
        }
    } else {
        if pi0 >= tau - tol {
            return Ok((Cut::NoCut, CaseLabel::ParaboloidNoCut));
        }
        if pi1 > tau + tol {
            return Ok((linear(pi, pi_hat, pi0, Sense::Le), CaseLabel::ParaboloidLinearLo));
        }
    }
    let k = paraboloid_conic_coeffs(nu, pi_hat, pi0, pi1);
    let n = pi.len();
    // P⊥x + ((πᵀx + b)/‖π‖²)π = x + π/(2π̂)
    let cut = Cut::Norm {
        matrix: Mat::identity(n),
        offset: scale(pi, 1.0 / (2.0 * pi_hat)),
        p: 2,
        slope: scale(pi, k.c),
        t_coef: k.d,
        constant: k.e,
    };
    Ok((cut, CaseLabel::ParaboloidConic))
}

/// Coefficients of the conic cone cut
/// `‖P⊥x + ((a·πᵀx + b)/‖π‖²)π‖ ≤ c·πᵀx + d·t + e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeConic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

pub(crate) fn cone_conic_coeffs(nu: f64, pi_hat: f64, pi0: f64, pi1: f64) -> ConeConic {
    let dd = nu - pi_hat * pi_hat;
    let w = pi1 - pi0;
    let s = pi0 + pi1;
    let f = (dd * (nu * w * w - s * s * pi_hat * pi_hat)).max(0.0).sqrt();
    ConeConic {
        a: s * dd / f,
        b: -2.0 * pi0 * pi1 * nu / f,
        c: -4.0 * pi0 * pi1 * pi_hat / (w * f),
        d: f / (w * dd),
        e: 2.0 * pi0 * pi1 * s * pi_hat / (w * f),
        f,
    }
}

/// Split cut for `‖x‖ ≤ t`.
pub fn split_cut_cone_general(pi: &[f64], pi_hat: f64, pi0: f64, pi1: f64) -> Result<(Cut, CaseLabel)> {
    check(pi_hat, pi0, pi1)?;
    let tol = case_tol(&[pi0, pi1]);
    if pi0 >= -tol || pi1 <= tol {
        return Ok((Cut::NoCut, CaseLabel::ConeNoCut));
    }
    let nu = norm2_sq(pi);
    let rho = nu.sqrt();
    let tol = case_tol(&[rho]);
    if pi_hat <= -rho + tol {
        return Ok((linear(pi, pi_hat, pi0, Sense::Le), CaseLabel::ConeLinearLo));
    }
    if pi_hat >= rho - tol {
        return Ok((linear(pi, pi_hat, pi1, Sense::Ge), CaseLabel::ConeLinearHi));
    }
    let k = cone_conic_coeffs(nu, pi_hat, pi0, pi1);
    let matrix = outer_sum(&perp_matrix(pi)?, k.a / nu, pi, pi);
    let cut = Cut::Norm {
        matrix,
        offset: scale(pi, k.b / nu),
        p: 2,
        slope: scale(pi, k.c),
        t_coef: k.d,
        constant: k.e,
    };
    Ok((cut, CaseLabel::ConeConic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::eval_cut;
    use approx::assert_abs_diff_eq;

    #[test]
    fn paraboloid_without_pi() {
        let (cut, label) = split_cut_paraboloid_general(&[0.0, 0.0], 1.0, 0.0, 1.0).unwrap();
        assert_eq!(label, CaseLabel::ParaboloidConic);
        let k = paraboloid_conic_coeffs(0.0, 1.0, 0.0, 1.0);
        assert_abs_diff_eq!(k.f, SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(k.c, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(k.d, 1.0, epsilon = 1e-15);
        assert_eq!((k.b, k.e), (0.0, 0.0));
        // ‖x‖ ≤ t
        assert_abs_diff_eq!(eval_cut(&cut, &[0.6, 0.8, 1.0]).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn paraboloid_case_split() {
        assert_eq!(split_cut_paraboloid_general(&[1.0], 1.0, -1.0, -0.5).unwrap().0, Cut::NoCut);
        let (cut, label) = split_cut_paraboloid_general(&[1.0], 1.0, -1.0, 0.0).unwrap();
        assert_eq!(label, CaseLabel::ParaboloidLinearHi);
        assert_eq!(cut, Cut::Linear { coef: vec![1.0], t_coef: 1.0, rhs: 0.0, sense: Sense::Ge });
        let (_, label) = split_cut_paraboloid_general(&[1.0], -1.0, 0.0, 1.0).unwrap();
        assert_eq!(label, CaseLabel::ParaboloidLinearLo);
        assert_eq!(split_cut_paraboloid_general(&[1.0], -1.0, 0.25, 1.0).unwrap().0, Cut::NoCut);
    }

    #[test]
    fn paraboloid_conic_is_binding() {
        let pi = [1.0, -0.5];
        let (ph, p0, p1) = (0.7, 0.1, 1.3);
        let (cut, label) = split_cut_paraboloid_general(&pi, ph, p0, p1).unwrap();
        assert_eq!(label, CaseLabel::ParaboloidConic);
        // on each hyperplane, points of the paraboloid surface are on the cut surface
        for target in [p0, p1] {
            for y in [-2.0, -0.3, 0.0, 1.1] {
                // x = (s, y), t = s² + y², solve s + (-0.5)y + ph·t = target for s
                let (qa, qb, qc) = (ph, 1.0, -0.5 * y + ph * y * y - target);
                let disc = qb * qb - 4.0 * qa * qc;
                if disc < 0.0 {
                    continue;
                }
                for s in [(-qb + disc.sqrt()) / (2.0 * qa), (-qb - disc.sqrt()) / (2.0 * qa)] {
                    let t = s * s + y * y;
                    assert_abs_diff_eq!(eval_cut(&cut, &[s, y, t]).unwrap(), 0.0, epsilon = 1e-9);
                }
            }
        }
    }

    #[test]
    fn cone_examples() {
        let (cut, label) = split_cut_cone_general(&[1.0], 1.0, -1.0, 1.0).unwrap();
        assert_eq!(label, CaseLabel::ConeLinearHi);
        assert_eq!(cut, Cut::Linear { coef: vec![1.0], t_coef: 1.0, rhs: 1.0, sense: Sense::Ge });
        let k = cone_conic_coeffs(4.0, 1.0, -1.0, 1.0);
        let r3 = 3f64.sqrt();
        assert_abs_diff_eq!(k.a, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(k.b, 2.0 / r3, epsilon = 1e-15);
        assert_abs_diff_eq!(k.c, 1.0 / (2.0 * r3), epsilon = 1e-15);
        assert_abs_diff_eq!(k.d, 2.0 / r3, epsilon = 1e-15);
        assert_abs_diff_eq!(k.e, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(k.f, 4.0 * r3, epsilon = 1e-14);
        assert_eq!(split_cut_cone_general(&[2.0, 0.0], 0.5, 1.0, 2.0).unwrap().0, Cut::NoCut);
        let (_, label) = split_cut_cone_general(&[1.0], -2.0, -1.0, 1.0).unwrap();
        assert_eq!(label, CaseLabel::ConeLinearLo);
    }

    #[test]
    fn cone_conic_is_binding() {
        let (cut, _) = split_cut_cone_general(&[2.0, 0.0], 1.0, -1.0, 1.0).unwrap();
        for target in [-1.0, 1.0] {
            for y in [-1.5, 0.0, 0.4] {
                // 2s + t = target with t = √(s² + y²)
                let (qa, qb, qc): (f64, f64, f64) = (3.0, -4.0 * target, target * target - y * y);
                let disc = qb * qb - 4.0 * qa * qc;
                for s in [(-qb + disc.sqrt()) / (2.0 * qa), (-qb - disc.sqrt()) / (2.0 * qa)] {
                    let t: f64 = target - 2.0 * s;
                    if t < 0.0 {
                        continue;
                    }
                    assert_abs_diff_eq!(eval_cut(&cut, &[s, y, t]).unwrap(), 0.0, epsilon = 1e-12);
                }
            }
        }
    }
}
