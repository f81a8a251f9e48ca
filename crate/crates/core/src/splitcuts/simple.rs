//! Split cuts for disjunctions that do not involve `t`.

use crate::error::{QcutError, Result};
use crate::linalg::{dot, inverse, norm2_sq, outer_sum, perp_matrix, scale, unit, Mat};
use crate::model::{CaseLabel, Cut, Sense};

use super::interp::{case_tol, homogeneous_coeffs, secant_coeffs};

/// Data of a split after the change of variables `x̃ = B(x − c)`.
#[derive(Clone, Debug)]
pub(crate) struct Standardized {
    /// `B^{-T}π`.
    pub pi: Vec<f64>,
    /// `‖B^{-T}π‖²`.
    pub nu: f64,
    /// `πᵀc`.
    pub shift: f64,
    pub pi0: f64,
    pub pi1: f64,
}

pub(crate) fn standardize(b: &Mat, c: &[f64], pi: &[f64], pi0: f64, pi1: f64) -> Result<Standardized> {
    if pi.len() != c.len() {
        return Err(QcutError::DimMismatch { expected: c.len(), got: pi.len() });
    }
    let binv = inverse(b)?;
    let pt = binv.tr_matvec(pi)?;
    let nu = norm2_sq(&pt);
    if nu == 0.0 {
        return Err(QcutError::ZeroVector);
    }
    let shift = dot(pi, c);
    Ok(Standardized { pi: pt, nu, shift, pi0: pi0 - shift, pi1: pi1 - shift })
}

fn check_interval(pi0: f64, pi1: f64) -> Result<()> {
    if !(pi0 < pi1) {
        return Err(QcutError::DegenerateInterval { pi0, pi1 });
    }
    Ok(())
}

fn check_axis(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(QcutError::InvalidInput(format!("axis {k} out of range for n = {n}")));
    }
    Ok(())
}

/// `‖B(x − c)‖² ≤ t` with `πᵀx ∉ (π0, π1)`; emitted as a quadratic cut.
pub fn split_cut_paraboloid_simple(b: &Mat, c: &[f64], pi: &[f64], pi0: f64, pi1: f64) -> Result<(Cut, CaseLabel)> {
    check_interval(pi0, pi1)?;
    let st = standardize(b, c, pi, pi0, pi1)?;
    let a = (st.pi0 + st.pi1) / st.nu;
    let bb = -st.pi1 * st.pi0 / st.nu;
    let bhat = perp_matrix(&st.pi)?.matmul(b)?;
    let e = bhat.transpose().matmul(&bhat)?;
    let ec = e.matvec(c)?;
    let lin = (0..c.len()).map(|i| -2.0 * ec[i] + a * pi[i]).collect();
    let constant = dot(c, &ec) - a * st.shift + bb;
    Ok((Cut::Quadratic { quad: e, lin, constant, t_coef: 1.0 }, CaseLabel::ParaboloidSimple))
}

/// `‖B(x − c)‖ ≤ t` with `πᵀx ∉ (π0, π1)`.
pub fn split_cut_cone_simple(b: &Mat, c: &[f64], pi: &[f64], pi0: f64, pi1: f64) -> Result<(Cut, CaseLabel)> {
    check_interval(pi0, pi1)?;
    let st = standardize(b, c, pi, pi0, pi1)?;
    let tol = case_tol(&[st.pi0, st.pi1]);
    if st.pi0 >= -tol || st.pi1 <= tol {
        return Ok((Cut::NoCut, CaseLabel::ConeSimpleNoCut));
    }
    let h = homogeneous_coeffs(st.pi0, st.pi1)?;
    // (P⊥ + aP) B
    let par = Mat::outer(&st.pi, &st.pi).scale(1.0 / st.nu);
    let inner = perp_matrix(&st.pi)?.add(&par.scale(h.a))?;
    let bhat = inner.matmul(b)?;
    let chat = scale(&st.pi, h.b / st.nu);
    let bc = bhat.matvec(c)?;
    let offset = chat.iter().zip(&bc).map(|(u, v)| u - v).collect();
    Ok((
        Cut::Norm { matrix: bhat, offset, p: 2, slope: vec![0.0; c.len()], t_coef: 1.0, constant: 0.0 },
        CaseLabel::ConeSimpleConic,
    ))
}

/// `‖B(x − c)‖ ≤ r` with `πᵀx ∉ (π0, π1)`; five-way case analysis.
pub fn split_cut_ellipsoid(b: &Mat, c: &[f64], r: f64, pi: &[f64], pi0: f64, pi1: f64) -> Result<(Cut, CaseLabel)> {
    check_interval(pi0, pi1)?;
    if !(r > 0.0) {
        return Err(QcutError::InvalidInput("ellipsoid radius must be positive".into()));
    }
    let st = standardize(b, c, pi, pi0, pi1)?;
    let rho = st.nu.sqrt();
    let lo = st.shift - r * rho;
    let hi = st.shift + r * rho;
    let tol = case_tol(&[lo, hi, pi0, pi1]);
    if pi1 <= lo + tol || pi0 >= hi - tol {
        return Ok((Cut::NoCut, CaseLabel::EllipsoidNoCut));
    }
    let lower_in = pi0 >= lo - tol;
    let upper_in = pi1 <= hi + tol;
    let n = c.len();
    match (lower_in, upper_in) {
        (true, true) => {}
        (false, true) => {
            let cut = Cut::Linear { coef: pi.to_vec(), t_coef: 0.0, rhs: pi1, sense: Sense::Ge };
            return Ok((cut, CaseLabel::EllipsoidCgAbove));
        }
        (true, false) => {
            let cut = Cut::Linear { coef: pi.to_vec(), t_coef: 0.0, rhs: pi0, sense: Sense::Le };
            return Ok((cut, CaseLabel::EllipsoidCgBelow));
        }
        (false, false) => return Ok((Cut::EmptyHull, CaseLabel::EllipsoidEmpty)),
    }
    let half_chord = |u: f64| -(r * r - u * u / st.nu).max(0.0).sqrt();
    let (u0, u1) = (st.pi0, st.pi1);
    let (f0, f1) = (half_chord(u0), half_chord(u1));
    let w = pi1 - pi0;
    let a = (f0 - f1) / w;
    let bb = (u1 * f0 - u0 * f1) / w;
    let pb = perp_matrix(&st.pi)?.matmul(b)?;
    let offset = scale(&pb.matvec(c)?, -1.0);
    let cut = Cut::Norm {
        matrix: pb,
        offset,
        p: 2,
        slope: scale(pi, a),
        t_coef: 0.0,
        constant: -a * st.shift - bb,
    };
    debug_assert_eq!(n, c.len());
    Ok((cut, CaseLabel::EllipsoidProper))
}

/// `‖x‖_p ≤ t` with `x_k ∉ (π0, π1)` (0-based axis `k`).
pub fn split_cut_p_cone(n: usize, k: usize, p: u32, pi0: f64, pi1: f64) -> Result<(Cut, CaseLabel)> {
    check_interval(pi0, pi1)?;
    check_axis(n, k)?;
    if p == 0 {
        return Err(QcutError::InvalidInput("p must be >= 1".into()));
    }
    let tol = case_tol(&[pi0, pi1]);
    if pi0 >= -tol || pi1 <= tol {
        return Ok((Cut::NoCut, CaseLabel::PConeNoCut));
    }
    let h = homogeneous_coeffs(pi0, pi1)?;
    let mut m = Mat::identity(n);
    m[(k, k)] = h.a;
    let cut = Cut::Norm { matrix: m, offset: scale(&unit(n, k), h.b), p, slope: vec![0.0; n], t_coef: 1.0, constant: 0.0 };
    Ok((cut, CaseLabel::PConeConic))
}

/// `‖x‖_p ≤ r` with `x_k ∉ (π0, π1)`.
pub fn split_cut_p_ball(n: usize, k: usize, p: u32, r: f64, pi0: f64, pi1: f64) -> Result<(Cut, CaseLabel)> {
    check_interval(pi0, pi1)?;
    check_axis(n, k)?;
    if p == 0 || !(r > 0.0) {
        return Err(QcutError::InvalidInput("p-ball needs p >= 1 and r > 0".into()));
    }
    let slack = r * (1.0 + 1e-12);
    for v in [pi0, pi1] {
        if v.abs() > slack {
            return Err(QcutError::SliceOutsideBall { value: v, radius: r });
        }
    }
    let s = secant_coeffs(p_ball_slice(p, r, pi0), p_ball_slice(p, r, pi1), pi0, pi1)?;
    let mut m = Mat::identity(n);
    m[(k, k)] = 0.0;
    let cut = Cut::Norm {
        matrix: m,
        offset: vec![0.0; n],
        p,
        slope: scale(&unit(n, k), -s.a),
        t_coef: 0.0,
        constant: -s.b,
    };
    Ok((cut, CaseLabel::PBallProper))
}

/// `−(r^p − |u|^p)^{1/p}`, clamped at the rim.
pub(crate) fn p_ball_slice(p: u32, r: f64, u: f64) -> f64 {
    let pf = f64::from(p);
    if u.abs() >= r {
        return 0.0;
    }
    // factor r out to stay accurate for large p
    -r * (1.0 - (u.abs() / r).powf(pf)).max(0.0).powf(1.0 / pf)
}

/// `√(‖x‖² + l²) ≤ t` with `πᵀx ∉ (π0, π1)`.
pub fn split_cut_hyperboloid(n: usize, l: f64, pi: &[f64], pi0: f64, pi1: f64) -> Result<(Cut, CaseLabel)> {
    check_interval(pi0, pi1)?;
    if pi.len() != n {
        return Err(QcutError::DimMismatch { expected: n, got: pi.len() });
    }
    if l == 0.0 {
        return Err(QcutError::InvalidInput("hyperboloid needs l != 0".into()));
    }
    let nu = norm2_sq(pi);
    if nu == 0.0 {
        return Err(QcutError::ZeroVector);
    }
    let big_l = l * l * nu;
    let perp = perp_matrix(pi)?;
    let tol = case_tol(&[pi0, pi1]);
    if (pi0.abs() - pi1.abs()).abs() <= tol {
        let bhat = (big_l + pi0.powi(2).min(pi1.powi(2))).sqrt();
        let cut = Cut::Norm { matrix: perp, offset: scale(pi, bhat / nu), p: 2, slope: vec![0.0; n], t_coef: 1.0, constant: 0.0 };
        return Ok((cut, CaseLabel::HyperSymmetric));
    }
    let (a, b) = hyperboloid_ab(big_l, pi0, pi1);
    let matrix = outer_sum(&perp, a / nu, pi, pi);
    let cut = Cut::Norm { matrix, offset: scale(pi, b / nu), p: 2, slope: vec![0.0; n], t_coef: 1.0, constant: 0.0 };
    Ok((cut, CaseLabel::HyperAsymmetric))
}

/// Interpolation of `√(L + s²)` at `π0, π1` by `|a·s + b|`, written without
/// the cancellation-prone nested radical.
pub(crate) fn hyperboloid_ab(big_l: f64, pi0: f64, pi1: f64) -> (f64, f64) {
    let a0 = (big_l + pi0 * pi0).sqrt();
    let a1 = (big_l + pi1 * pi1).sqrt();
    let sum = pi0 + pi1;
    let a = sum.abs() / (a0 + a1);
    let b = sum.signum() * (big_l - pi0 * pi1 + a0 * a1) / (a0 + a1);
    (a, b)
}
