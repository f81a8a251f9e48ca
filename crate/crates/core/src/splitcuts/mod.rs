//! Closed-form split cuts.
//!
//! Family functions work on explicit parameters; [`split_cut`] dispatches
//! on a [`ConvexBody`], standardizes `t`-affecting splits, and lifts back.

mod general;
mod interp;
mod lift;
mod separable;
mod simple;

pub use general::{split_cut_cone_general, split_cut_paraboloid_general, ConeConic, ParaboloidConic};
pub use interp::{homogeneous_coeffs, secant_coeffs, HomogCoeffs, SecantCoeffs};
pub use lift::{embed_cut, lift_affine};
pub use separable::{separable_split_cut, ScalarFn, SeparableSet, SeparableSplitCut, VecFn};
pub use simple::{
    split_cut_cone_simple, split_cut_ellipsoid, split_cut_hyperboloid, split_cut_p_ball, split_cut_p_cone,
    split_cut_paraboloid_simple,
};

pub(crate) use general::{cone_conic_coeffs, paraboloid_conic_coeffs};
pub(crate) use interp::case_tol;
pub(crate) use simple::{hyperboloid_ab, p_ball_slice, standardize};

use crate::error::{QcutError, Result};
use crate::linalg::{norm_inf, Mat};
use crate::model::{kept_indices, quotient, CaseLabel, ConvexBody, Cut, SplitDisjunction};

/// If `π = λ·e_k`, returns `(k, λ)`.
pub fn axis_of(pi: &[f64]) -> Option<(usize, f64)> {
    let mut found = None;
    for (i, v) in pi.iter().enumerate() {
        if *v != 0.0 {
            if found.is_some() {
                return None;
            }
            found = Some((i, *v));
        }
    }
    found
}

/// Interval of `x_k` described by `λ·x_k ∈ [π0, π1]`.
pub(crate) fn axis_interval(lambda: f64, pi0: f64, pi1: f64) -> (f64, f64) {
    if lambda > 0.0 {
        (pi0 / lambda, pi1 / lambda)
    } else {
        (pi1 / lambda, pi0 / lambda)
    }
}

/// Split cut for any supported body/split pair, in original coordinates.
pub fn split_cut(body: &ConvexBody, split: &SplitDisjunction) -> Result<(Cut, CaseLabel)> {
    split.validate()?;
    if split.pi.len() != body.n() {
        return Err(QcutError::DimMismatch { expected: body.n(), got: split.pi.len() });
    }
    let (pi, pi_hat, pi0, pi1) = (&split.pi[..], split.pi_hat, split.pi0, split.pi1);
    if pi_hat != 0.0 && !body.is_epigraph() {
        return Err(QcutError::UnsupportedCombination(format!(
            "pi_hat != 0 needs an epigraph, got {}",
            body.family_name()
        )));
    }
    match body {
        ConvexBody::Cylinder { base, free, n } => {
            let along: Vec<f64> = free.iter().map(|&i| pi[i]).collect();
            if norm_inf(&along) > 1e-12 * norm_inf(pi).max(pi_hat.abs()) {
                return Err(QcutError::LinealityComponent);
            }
            let reduced = SplitDisjunction { pi: quotient(pi, free), pi_hat, pi0, pi1 };
            if reduced.pi.iter().all(|v| *v == 0.0) && pi_hat == 0.0 {
                return Err(QcutError::LinealityComponent);
            }
            let (cut, label) = split_cut(base, &reduced)?;
            Ok((embed_cut(&cut, *n, &kept_indices(*n, free))?, label))
        }
        _ if pi_hat != 0.0 => t_affecting(body, split),
        ConvexBody::Paraboloid { b, c } => split_cut_paraboloid_simple(b, c, pi, pi0, pi1),
        ConvexBody::Cone { b, c } => split_cut_cone_simple(b, c, pi, pi0, pi1),
        ConvexBody::Ellipsoid { b, c, .. } => {
            let r = body.radius().unwrap_or_default();
            split_cut_ellipsoid(b, c, r, pi, pi0, pi1)
        }
        ConvexBody::Hyperboloid { n, l } => split_cut_hyperboloid(*n, *l, pi, pi0, pi1),
        ConvexBody::PCone { n, p } => match axis_of(pi) {
            Some((k, lambda)) => {
                let (lo, hi) = axis_interval(lambda, pi0, pi1);
                split_cut_p_cone(*n, k, *p, lo, hi)
            }
            None if *p == 2 => split_cut_cone_simple(&Mat::identity(*n), &vec![0.0; *n], pi, pi0, pi1),
            None => Err(QcutError::UnsupportedCombination("p-cone splits must be axis-aligned for p != 2".into())),
        },
        ConvexBody::PBall { n, p, r } => match axis_of(pi) {
            Some((k, lambda)) => {
                let (lo, hi) = axis_interval(lambda, pi0, pi1);
                split_cut_p_ball(*n, k, *p, *r, lo, hi)
            }
            None if *p == 2 => split_cut_ellipsoid(&Mat::identity(*n), &vec![0.0; *n], *r, pi, pi0, pi1),
            None => Err(QcutError::UnsupportedCombination("p-ball splits must be axis-aligned for p != 2".into())),
        },
    }
}

fn t_affecting(body: &ConvexBody, split: &SplitDisjunction) -> Result<(Cut, CaseLabel)> {
    let (b, c, paraboloid) = match body {
        ConvexBody::Paraboloid { b, c } => (b.clone(), c.clone(), true),
        ConvexBody::Cone { b, c } => (b.clone(), c.clone(), false),
        ConvexBody::PCone { n, p: 2 } => (Mat::identity(*n), vec![0.0; *n], false),
        other => {
            return Err(QcutError::UnsupportedCombination(format!(
                "no split cut formula for {} with pi_hat != 0",
                other.family_name()
            )))
        }
    };
    let binv = crate::linalg::inverse(&b)?;
    let pt = binv.tr_matvec(&split.pi)?;
    let shift = crate::linalg::dot(&split.pi, &c);
    let (p0, p1) = (split.pi0 - shift, split.pi1 - shift);
    let (cut, label) = if paraboloid {
        split_cut_paraboloid_general(&pt, split.pi_hat, p0, p1)?
    } else {
        split_cut_cone_general(&pt, split.pi_hat, p0, p1)?
    };
    Ok((lift_affine(&cut, &b, &c)?, label))
}
