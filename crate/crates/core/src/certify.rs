//! Friends certificates: two points outside the forbidden interior whose
//! convex combination is a given point of the cut region.

use serde::{Deserialize, Serialize};

use crate::error::{QcutError, Result};
use crate::interscuts::AggregationForm;
use crate::linalg::{axpy, dot, inverse, norm_inf, Mat};
use crate::model::{eval_body, eval_cut, kept_indices, quotient, split_position, ConvexBody, Side, SplitDisjunction};
use crate::splitcuts::{
    axis_interval, axis_of, case_tol, cone_conic_coeffs, homogeneous_coeffs, hyperboloid_ab, p_ball_slice,
    paraboloid_conic_coeffs, split_cut, standardize,
};

/// Tolerance used by [`check_certificate`].
pub const CERT_TOL: f64 = 1e-8;
/// Points this close to a hyperplane (relative) are certified by themselves.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FriendsCertificate {
    pub p0: Vec<f64>,
    pub p1: Vec<f64>,
    /// Weight of `p0`.
    pub alpha: f64,
    /// Strip sides of the friends; absent for aggregation certificates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sides: Option<(Side, Side)>,
}

impl FriendsCertificate {
    pub fn combination(&self) -> Vec<f64> {
        self.p0.iter().zip(&self.p1).map(|(a, b)| self.alpha * a + (1.0 - self.alpha) * b).collect()
    }
}

fn scale_of(p: &[f64]) -> f64 {
    norm_inf(p).max(1.0)
}

/// How the friends are found from the point.
enum Plan {
    /// Move along a fixed direction.
    Direction(Vec<f64>),
    /// Move along the ray from an apex of the cut through the point.
    Apex(Vec<f64>),
    /// Friends given directly with the weight of the first one.
    Explicit(Vec<f64>, Vec<f64>, f64),
}

fn along_line(split: &SplitDisjunction, point: &[f64], v: f64, dir: &[f64], from_apex: bool) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let delta = split.value(dir)?;
    if delta.abs() <= 1e-14 * scale_of(dir) * scale_of(&split.pi).max(split.pi_hat.abs()) {
        return Err(QcutError::UnsupportedFamily("direction parallel to the split".into()));
    }
    let s0 = (split.pi0 - v) / delta;
    let s1 = (split.pi1 - v) / delta;
    // friends must lie on the apex side of the ray
    if from_apex && (1.0 + s0 < -1e-12 || 1.0 + s1 < -1e-12) {
        return Err(QcutError::UnsupportedFamily("apex inside the strip".into()));
    }
    let p0 = axpy(point, s0, dir);
    let p1 = axpy(point, s1, dir);
    Ok((p0, p1, s1 / (s1 - s0)))
}

/// `x = c + B⁻¹x̃` for points and `B⁻¹x̃` for directions, keeping `t`.
fn to_original(binv: &Mat, c: &[f64], std: &[f64], is_point: bool) -> Result<Vec<f64>> {
    let n = c.len();
    let mut x = binv.matvec(&std[..n])?;
    if is_point {
        x = axpy(&x, 1.0, c);
    }
    x.extend_from_slice(&std[n..]);
    Ok(x)
}

fn with_t(x: Vec<f64>, t: f64) -> Vec<f64> {
    let mut v = x;
    v.push(t);
    v
}

fn scaled(v: &[f64], s: f64) -> Vec<f64> {
    v.iter().map(|x| x * s).collect()
}

/// Friends of `x̄` on `{ u = π0 }` and `{ u = π1 }` for `g(P⊥x) ≤ −f(u)` with
/// `g` positively homogeneous: `xⁱ = βⁱ·(x̄ − u(x̄)·e) + πᵢ·e`.
fn level_friends(xbar: &[f64], u: f64, e: &[f64], pi0: f64, pi1: f64, f: impl Fn(f64) -> f64) -> Plan {
    let alpha = (pi1 - u) / (pi1 - pi0);
    let (f0, f1) = (f(pi0), f(pi1));
    let mix = alpha * f0 + (1.0 - alpha) * f1;
    let (b0, b1) = if mix == 0.0 { (1.0, 1.0) } else { (f0 / mix, f1 / mix) };
    let perp = axpy(xbar, -u, e);
    let friend = |beta: f64, target: f64| axpy(&scaled(&perp, beta), target, e);
    Plan::Explicit(friend(b0, pi0), friend(b1, pi1), alpha)
}

fn plan_for(body: &ConvexBody, split: &SplitDisjunction, point: &[f64]) -> Result<Plan> {
    let n = body.n();
    let (pi, pi_hat) = (&split.pi[..], split.pi_hat);
    match body {
        ConvexBody::Paraboloid { b, c } | ConvexBody::Cone { b, c } => {
            let paraboloid = matches!(body, ConvexBody::Paraboloid { .. });
            let binv = inverse(b)?;
            let std_pi = binv.tr_matvec(pi)?;
            let nu = dot(&std_pi, &std_pi);
            let shift = dot(pi, c);
            let (p0, p1) = (split.pi0 - shift, split.pi1 - shift);
            let std_plan = if paraboloid { paraboloid_plan(&std_pi, nu, pi_hat, p0, p1)? } else { cone_plan(&std_pi, nu, pi_hat, p0, p1)? };
            Ok(match std_plan {
                Plan::Direction(d) => Plan::Direction(to_original(&binv, c, &d, false)?),
                Plan::Apex(a) => Plan::Apex(to_original(&binv, c, &a, true)?),
                Plan::Explicit(..) => unreachable!("epigraph plans are lines"),
            })
        }
        ConvexBody::Ellipsoid { b, c, .. } => {
            let r = body.radius().unwrap_or_default();
            let st = standardize(b, c, pi, split.pi0, split.pi1)?;
            let binv = inverse(b)?;
            let xt = b.matvec(&crate::linalg::sub(point, c))?;
            let u = dot(&st.pi, &xt);
            let e = scaled(&st.pi, 1.0 / st.nu);
            let f = |v: f64| -(r * r - v * v / st.nu).max(0.0).sqrt();
            match level_friends(&xt, u, &e, st.pi0, st.pi1, f) {
                Plan::Explicit(a, bb, alpha) => {
                    Ok(Plan::Explicit(to_original(&binv, c, &a, true)?, to_original(&binv, c, &bb, true)?, alpha))
                }
                other => Ok(other),
            }
        }
        ConvexBody::Hyperboloid { l, .. } => {
            let nu = dot(pi, pi);
            let tol = case_tol(&[split.pi0, split.pi1]);
            if (split.pi0.abs() - split.pi1.abs()).abs() <= tol {
                return Ok(Plan::Direction(with_t(pi.to_vec(), 0.0)));
            }
            let (a, bb) = hyperboloid_ab(l * l * nu, split.pi0, split.pi1);
            Ok(Plan::Apex(with_t(scaled(pi, -bb / (a * nu)), 0.0)))
        }
        ConvexBody::PCone { p, .. } => match axis_of(pi) {
            Some((k, lambda)) => {
                let (lo, hi) = axis_interval(lambda, split.pi0, split.pi1);
                let tol = case_tol(&[lo, hi]);
                if lo >= -tol || hi <= tol {
                    return Ok(Plan::Apex(vec![0.0; n + 1]));
                }
                let mut e = vec![0.0; n + 1];
                if (lo + hi).abs() <= tol {
                    e[k] = 1.0;
                    return Ok(Plan::Direction(e));
                }
                let h = homogeneous_coeffs(lo, hi)?;
                e[k] = -h.b / h.a;
                Ok(Plan::Apex(e))
            }
            None if *p == 2 => plan_for(&ConvexBody::Cone { b: Mat::identity(n), c: vec![0.0; n] }, split, point),
            None => Err(QcutError::UnsupportedFamily("p-cone with a non-axis split".into())),
        },
        ConvexBody::PBall { p, r, .. } => match axis_of(pi) {
            Some((k, lambda)) => {
                let (lo, hi) = axis_interval(lambda, split.pi0, split.pi1);
                let e = crate::linalg::unit(n, k);
                let (p, r) = (*p, *r);
                Ok(level_friends(point, point[k], &e, lo, hi, |v| p_ball_slice(p, r, v)))
            }
            None if *p == 2 => {
                let ell = ConvexBody::Ellipsoid { b: Mat::identity(n), c: vec![0.0; n], r: *r, form: Default::default() };
                plan_for(&ell, split, point)
            }
            None => Err(QcutError::UnsupportedFamily("p-ball with a non-axis split".into())),
        },
        ConvexBody::Cylinder { .. } => unreachable!("cylinders are reduced first"),
    }
}

/// Standard paraboloid `‖x‖² ≤ t`.
fn paraboloid_plan(pi: &[f64], nu: f64, pi_hat: f64, pi0: f64, pi1: f64) -> Result<Plan> {
    if pi_hat == 0.0 {
        // slope-following: u and t move together along the secant
        let a = (pi0 + pi1) / nu;
        return Ok(Plan::Direction(with_t(pi.to_vec(), a * nu)));
    }
    let k = paraboloid_conic_coeffs(nu, pi_hat, pi0, pi1);
    if k.d == 0.0 {
        return Err(QcutError::UnsupportedFamily("degenerate conic paraboloid cut".into()));
    }
    let t_star = (k.b * k.c - k.e) / k.d;
    Ok(Plan::Apex(with_t(scaled(pi, -1.0 / (2.0 * pi_hat)), t_star)))
}

/// Standard cone `‖x‖ ≤ t`.
fn cone_plan(pi: &[f64], nu: f64, pi_hat: f64, pi0: f64, pi1: f64) -> Result<Plan> {
    let n = pi.len();
    let tol = case_tol(&[pi0, pi1]);
    if pi0 >= -tol || pi1 <= tol {
        return Ok(Plan::Apex(vec![0.0; n + 1]));
    }
    let symmetric = (pi0 + pi1).abs() <= tol;
    if pi_hat == 0.0 {
        if symmetric {
            return Ok(Plan::Direction(with_t(pi.to_vec(), 0.0)));
        }
        let h = homogeneous_coeffs(pi0, pi1)?;
        return Ok(Plan::Apex(with_t(scaled(pi, -h.b / (h.a * nu)), 0.0)));
    }
    let k = cone_conic_coeffs(nu, pi_hat, pi0, pi1);
    if !(k.d.is_finite() && k.d != 0.0) {
        return Err(QcutError::UnsupportedFamily("degenerate conic cone cut".into()));
    }
    if symmetric {
        return Ok(Plan::Direction(with_t(pi.to_vec(), -k.c * nu / k.d)));
    }
    let u_star = -k.b / k.a;
    let t_star = -(k.c * u_star + k.e) / k.d;
    Ok(Plan::Apex(with_t(scaled(pi, u_star / nu), t_star)))
}

/// Certificate that `point` lies in the hull of the body minus the strip
/// interior.
pub fn friends_split(body: &ConvexBody, split: &SplitDisjunction, point: &[f64]) -> Result<FriendsCertificate> {
    split.validate()?;
    if let ConvexBody::Cylinder { base, free, n } = body {
        if point.len() != body.point_dim() {
            return Err(QcutError::DimMismatch { expected: body.point_dim(), got: point.len() });
        }
        let mut reduced_point = quotient(&point[..*n], free);
        reduced_point.extend_from_slice(&point[*n..]);
        let reduced = SplitDisjunction { pi: quotient(&split.pi, free), ..split.clone() };
        let cert = friends_split(base, &reduced, &reduced_point)?;
        let kept = kept_indices(*n, free);
        let embed = |q: &[f64]| {
            let mut full = point.to_vec();
            for (j, &i) in kept.iter().enumerate() {
                full[i] = q[j];
            }
            full[*n..].copy_from_slice(&q[kept.len()..]);
            full
        };
        return Ok(FriendsCertificate { p0: embed(&cert.p0), p1: embed(&cert.p1), ..cert });
    }
    let defect = eval_body(body, point)?;
    let scale = scale_of(point);
    if defect > CERT_TOL * scale {
        return Err(QcutError::OutsideBody(defect));
    }
    let v = split.value(point)?;
    let btol = BOUNDARY_TOL * split.pi0.abs().max(split.pi1.abs()).max(1.0);
    if (v - split.pi0).abs() <= btol || (v - split.pi1).abs() <= btol {
        let side = split_position(split, point, BOUNDARY_TOL)?;
        return Ok(FriendsCertificate { p0: point.to_vec(), p1: point.to_vec(), alpha: 1.0, sides: Some((side, side)) });
    }
    if v < split.pi0 || v > split.pi1 {
        return Err(QcutError::NotInside);
    }
    let (cut, _) = split_cut(body, split)?;
    let cv = eval_cut(&cut, point)?;
    if cv > CERT_TOL * scale {
        return Err(QcutError::CutViolated(cv));
    }
    let (a, b, alpha) = match plan_for(body, split, point)? {
        Plan::Direction(d) => along_line(split, point, v, &d, false)?,
        Plan::Apex(apex) => {
            let d: Vec<f64> = point.iter().zip(&apex).map(|(p, a)| p - a).collect();
            along_line(split, point, v, &d, true)?
        }
        Plan::Explicit(a, b, alpha) => (a, b, alpha),
    };
    // p0 is the friend on the π0 side
    let (p0, p1, alpha) = if split.value(&a)? <= split.value(&b)? { (a, b, alpha) } else { (b, a, 1.0 - alpha) };
    let sides = (split_position(split, &p0, CERT_TOL)?, split_position(split, &p1, CERT_TOL)?);
    Ok(FriendsCertificate { p0, p1, alpha, sides: Some(sides) })
}

fn check_generic(
    point: &[f64],
    cert: &FriendsCertificate,
    in_body: impl Fn(&[f64]) -> Result<f64>,
    outside_forbidden: impl Fn(&[f64]) -> Result<bool>,
) -> bool {
    if cert.p0.len() != point.len() || cert.p1.len() != point.len() {
        return false;
    }
    if !(cert.alpha >= -1e-12 && cert.alpha <= 1.0 + 1e-12) {
        return false;
    }
    let gap: f64 = cert.combination().iter().zip(point).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if !(gap <= CERT_TOL * scale_of(point)) {
        return false;
    }
    [&cert.p0, &cert.p1].iter().all(|p| {
        let body_ok = matches!(in_body(p), Ok(d) if d <= CERT_TOL * scale_of(p));
        body_ok && matches!(outside_forbidden(p), Ok(true))
    })
}

/// True iff the certificate recombines to `point`, both friends are in the
/// body and neither is strictly inside the strip (all at [`CERT_TOL`]).
pub fn check_certificate(body: &ConvexBody, split: &SplitDisjunction, point: &[f64], cert: &FriendsCertificate) -> bool {
    let tol = CERT_TOL * split.pi0.abs().max(split.pi1.abs()).max(1.0);
    check_generic(
        point,
        cert,
        |p| eval_body(body, p),
        |p| {
            let v = split.value(p)?;
            Ok(v <= split.pi0 + tol || v >= split.pi1 - tol)
        },
    )
}

fn aggregation_parts(form: &AggregationForm, point: &[f64]) -> Result<(bool, f64)> {
    let n = form.n();
    match point.len() {
        l if l == n + 1 => Ok((false, point[n])),
        l if l == n => Ok((true, 0.0)),
        l => Err(QcutError::DimMismatch { expected: n + 1, got: l }),
    }
}

/// Same checks for a certificate from [`friends_aggregation`]: friends
/// satisfy `F ≤ t` and `G ≤ γt`.
pub fn check_aggregation_certificate(form: &AggregationForm, point: &[f64], cert: &FriendsCertificate) -> bool {
    let n = form.n();
    let Ok((level, _)) = aggregation_parts(form, point) else { return false };
    let gamma = if level { 0.0 } else { form.gamma };
    check_generic(
        point,
        cert,
        |p| Ok(form.eval_f(&p[..n]) - if level { 0.0 } else { p[n] }),
        |p| {
            let t = if level { 0.0 } else { p[n] };
            Ok(form.eval_g(&p[..n]) - gamma * t <= CERT_TOL * scale_of(p))
        },
    )
}

const BRACKET_LIMIT: f64 = 1e6;

/// Friends along `±aₙ` with `t` following the slope of the aggregated cut.
/// A point with `n` entries is treated as a level-set instance.
pub fn friends_aggregation(form: &AggregationForm, point: &[f64]) -> Result<FriendsCertificate> {
    form.validate()?;
    let n = form.n();
    let (level, t) = aggregation_parts(form, point)?;
    let x = &point[..n];
    let scale = scale_of(point);
    let f_defect = form.eval_f(x) - t;
    if f_defect > CERT_TOL * scale {
        return Err(QcutError::OutsideBody(f_defect));
    }
    let h_defect = form.eval_h(x, level) - t;
    if h_defect > CERT_TOL * scale {
        return Err(QcutError::CutViolated(h_defect));
    }
    let (gamma, k) = if level { (0.0, 0.0) } else { (form.gamma, form.slope_k()) };
    let a = &form.directions[form.directions.len() - 1];
    let moved = |s: f64| {
        let mut p = axpy(x, s, a);
        p.extend_from_slice(&point[n..]);
        if !level {
            p[n] += s * k;
        }
        p
    };
    let phi = |s: f64| {
        let p = moved(s);
        form.eval_g(&p[..n]) - gamma * if level { 0.0 } else { p[n] }
    };
    if phi(0.0) <= 0.0 {
        return Err(QcutError::NotInForbidden);
    }
    let crossing = |sign: f64| -> Result<f64> {
        let mut inner = 0.0;
        let mut outer = sign * 1e-3;
        while phi(outer) > 0.0 {
            inner = outer;
            outer *= 2.0;
            if outer.abs() > BRACKET_LIMIT {
                return Err(QcutError::BisectionFailure(outer));
            }
        }
        while (outer - inner).abs() > 1e-10 * outer.abs().max(1.0) {
            let mid = 0.5 * (inner + outer);
            if phi(mid) > 0.0 {
                inner = mid;
            } else {
                outer = mid;
            }
        }
        Ok(outer)
    };
    let (s0, s1) = (crossing(-1.0)?, crossing(1.0)?);
    Ok(FriendsCertificate { p0: moved(s0), p1: moved(s1), alpha: s1 / (s1 - s0), sides: None })
}
