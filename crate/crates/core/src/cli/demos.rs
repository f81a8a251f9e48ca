//! Lattice demonstrations: bounds from split and intersection cuts on the
//! closest and shortest vector problems.

use serde::{Deserialize, Serialize};

use crate::error::{QcutError, Result};
use crate::interscuts::{intersection_cut_quadratic, QuadForm};
use crate::linalg::{dot, inverse, norm2, outer_sum, unit, Mat};
use crate::model::{eval_cut, ConvexBody, Cut, SplitDisjunction};
use crate::splitcuts::split_cut;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitBound {
    pub coordinate: usize,
    pub interval: (f64, f64),
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvpReport {
    pub relaxation_bound: f64,
    pub splits: Vec<SplitBound>,
    pub combined_bound: f64,
    /// Best value over integer points near the target (small `n` only).
    pub enumerated_value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvpReport {
    /// Whether the origin satisfies every elementary split cut.
    pub origin_survives_splits: bool,
    pub split_bound: f64,
    pub radius: f64,
    pub intersection_cut: Cut,
    pub intersection_bound: f64,
}

/// `xᵀQx + linᵀx + constant` pieces whose pointwise max is minimized.
type Piece = (Mat, Vec<f64>, f64);

fn piece_from_form(f: &QuadForm) -> Option<Piece> {
    if f.t_coef <= 0.0 {
        return None;
    }
    let s = 1.0 / f.t_coef;
    Some((f.q.scale(s), f.lin.iter().map(|v| v * s).collect(), f.constant * s))
}

fn body_piece(b: &Mat, c: &[f64]) -> Result<Piece> {
    let e = b.transpose().matmul(b)?;
    let ec = e.matvec(c)?;
    Ok((e, ec.iter().map(|v| -2.0 * v).collect(), dot(c, &ec)))
}

fn eval_piece(p: &Piece, x: &[f64]) -> f64 {
    p.0.quad_form(x).unwrap_or(f64::NAN) + dot(&p.1, x) + p.2
}

/// Minimizes `max_k q_k(x)` for convex quadratics, at least one strictly
/// convex, by Newton steps on a log-sum-exp smoothing with shrinking width.
fn min_max(pieces: &[Piece], start: &[f64]) -> Result<(f64, Vec<f64>)> {
    let n = start.len();
    let mut x = start.to_vec();
    let smooth = |x: &[f64], mu: f64| -> f64 {
        let vals: Vec<f64> = pieces.iter().map(|p| eval_piece(p, x)).collect();
        let m = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        m + mu * vals.iter().map(|v| ((v - m) / mu).exp()).sum::<f64>().ln()
    };
    let scale = pieces.iter().map(|p| eval_piece(p, start).abs()).fold(1.0, f64::max);
    let mut mu = scale;
    while mu > 1e-13 * scale {
        for _ in 0..100 {
            let vals: Vec<f64> = pieces.iter().map(|p| eval_piece(p, &x)).collect();
            let m = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let raw: Vec<f64> = vals.iter().map(|v| ((v - m) / mu).exp()).collect();
            let total: f64 = raw.iter().sum();
            let mut grad = vec![0.0; n];
            let mut hess = Mat::zeros(n, n);
            for (p, r) in pieces.iter().zip(&raw) {
                let w = r / total;
                let mut g = p.0.matvec(&x)?;
                g.iter_mut().zip(&p.1).for_each(|(gi, li)| *gi = 2.0 * *gi + li);
                grad.iter_mut().zip(&g).for_each(|(a, b)| *a += w * b);
                hess = hess.add(&p.0.scale(2.0 * w))?;
                hess = outer_sum(&hess, w / mu, &g, &g);
            }
            hess = outer_sum(&hess, -1.0 / mu, &grad, &grad);
            let mut damping = 1e-10 * (1.0 + hess.max_abs());
            let inv = loop {
                let mut h = hess.clone();
                for i in 0..n {
                    h[(i, i)] += damping;
                }
                match inverse(&h) {
                    Ok(inv) => break inv,
                    Err(_) if damping < 1e6 * (1.0 + hess.max_abs()) => damping *= 100.0,
                    Err(e) => return Err(e),
                }
            };
            let step = inv.matvec(&grad)?;
            let slope = -dot(&grad, &step);
            let f0 = smooth(&x, mu);
            let mut lambda = 1.0;
            let mut moved = false;
            for _ in 0..60 {
                let trial: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a - lambda * s).collect();
                if smooth(&trial, mu) <= f0 + 1e-4 * lambda * slope {
                    x = trial;
                    moved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !moved || lambda * norm2(&step) <= 1e-14 * (1.0 + norm2(&x)) {
                break;
            }
        }
        mu *= 0.1;
    }
    let best = pieces.iter().map(|p| eval_piece(p, &x)).fold(f64::NEG_INFINITY, f64::max);
    Ok((best, x))
}

fn split_piece(body: &ConvexBody, split: &SplitDisjunction) -> Result<Option<Piece>> {
    let (cut, _) = split_cut(body, split)?;
    Ok(QuadForm::from_cut(&cut).as_ref().and_then(piece_from_form))
}

/// Bounds on `min ‖B(x − c)‖²` over integer `x` from the elementary splits
/// `x_k ∈ [⌊c_k⌋, ⌈c_k⌉]` (or `[c_k, c_k + 1]` when `c_k` is integral).
pub fn demo_cvp(b: &Mat, c: &[f64]) -> Result<CvpReport> {
    let n = c.len();
    inverse(b)?;
    let body = ConvexBody::paraboloid(b.clone(), c.to_vec())?;
    let base = body_piece(b, c)?;
    let mut pieces = vec![base.clone()];
    let mut splits = Vec::with_capacity(n);
    for k in 0..n {
        let lo = c[k].floor();
        let hi = if c[k].ceil() > lo { c[k].ceil() } else { lo + 1.0 };
        let split = SplitDisjunction::new(unit(n, k), lo, hi)?;
        let piece = split_piece(&body, &split)?.ok_or_else(|| QcutError::InvalidInput("unexpected cut shape".into()))?;
        let (bound, _) = min_max(&[base.clone(), piece.clone()], c)?;
        splits.push(SplitBound { coordinate: k, interval: (lo, hi), bound });
        pieces.push(piece);
    }
    let (combined_bound, _) = min_max(&pieces, c)?;
    Ok(CvpReport { relaxation_bound: 0.0, splits, combined_bound, enumerated_value: enumerate_cvp(b, c) })
}

/// Exhaustive search over `⌊c⌋ + {−2..3}ⁿ` for `n ≤ 6`.
fn enumerate_cvp(b: &Mat, c: &[f64]) -> Option<f64> {
    let n = c.len();
    if n > 6 {
        return None;
    }
    let mut best = f64::INFINITY;
    let mut idx = vec![-2i32; n];
    loop {
        let x: Vec<f64> = c.iter().zip(&idx).map(|(ci, d)| ci.floor() + f64::from(*d)).collect();
        let v = b.matvec(&crate::linalg::sub(&x, c)).ok()?;
        best = best.min(dot(&v, &v));
        let mut k = 0;
        while k < n && idx[k] == 3 {
            idx[k] = -2;
            k += 1;
        }
        if k == n {
            return Some(best);
        }
        idx[k] += 1;
    }
}

/// Split cuts from `x_k ∈ [−1, 0]` and `[0, 1]` all pass through the origin,
/// so their bound is 0; the intersection cut from the ball
/// `‖Bx‖² < radius²` gives a positive bound.
pub fn demo_svp(b: &Mat, radius: f64) -> Result<SvpReport> {
    let n = b.rows();
    if !(radius > 0.0) {
        return Err(QcutError::InvalidInput("radius must be positive".into()));
    }
    inverse(b)?;
    let zero = vec![0.0; n];
    let body = ConvexBody::paraboloid(b.clone(), zero.clone())?;
    let base = body_piece(b, &zero)?;
    let origin = vec![0.0; n + 1];
    let mut survives = true;
    let mut pieces = vec![base.clone()];
    for k in 0..n {
        for (lo, hi) in [(-1.0, 0.0), (0.0, 1.0)] {
            let split = SplitDisjunction::new(unit(n, k), lo, hi)?;
            let (cut, _) = split_cut(&body, &split)?;
            survives &= eval_cut(&cut, &origin)? <= 1e-12;
            if let Some(p) = QuadForm::from_cut(&cut).as_ref().and_then(piece_from_form) {
                pieces.push(p);
            }
        }
    }
    let (split_bound, _) = min_max(&pieces, &zero)?;
    let cut = intersection_cut_quadratic(b, &zero, b, &zero, -radius * radius, 0.0)?;
    let piece = QuadForm::from_cut(&cut)
        .as_ref()
        .and_then(piece_from_form)
        .ok_or_else(|| QcutError::InvalidInput("intersection cut without t".into()))?;
    let (intersection_bound, _) = min_max(&[base, piece], &zero)?;
    Ok(SvpReport { origin_survives_splits: survives, split_bound, radius, intersection_cut: cut, intersection_bound })
}
