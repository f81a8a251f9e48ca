//! Intersection cuts obtained by aggregating a convex base function with a
//! concave forbidden-set function.

use std::fmt;
use std::sync::Arc;

use crate::error::{QcutError, Result};
use crate::linalg::{dot, eig_sym, inverse, min_eigenvalue, norm2, norm2_sq, outer_sum, sub, Mat};
use crate::model::{CaseLabel, Cut};

/// Univariate convex function applied to `a_iᵀx`.
#[derive(Clone)]
pub enum Piece {
    /// `κ·s²` with `κ ≥ 0`.
    Quadratic(f64),
    /// Arbitrary convex evaluator.
    Convex(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Piece {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Self::Quadratic(k) => k * s * s,
            Self::Convex(f) => f(s),
        }
    }
}

impl fmt::Debug for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Quadratic(k) => write!(f, "Quadratic({k})"),
            Self::Convex(_) => f.write_str("Convex(..)"),
        }
    }
}

/// `F(x) = Σ gᵢ(aᵢᵀx) + mᵀx + r` and `G(x) = −Σ αᵢgᵢ(aᵢᵀx) − lᵀx − q`,
/// with forbidden set `{ γt ≤ G(x) }` (or `{ G(x) ≥ 0 }` for level sets).
/// The last direction carries the largest weight.
#[derive(Clone, Debug)]
pub struct AggregationForm {
    pub directions: Vec<Vec<f64>>,
    pub pieces: Vec<Piece>,
    pub weights: Vec<f64>,
    pub m: Vec<f64>,
    pub l: Vec<f64>,
    pub r: f64,
    pub q: f64,
    pub gamma: f64,
}

impl AggregationForm {
    pub fn n(&self) -> usize {
        self.m.len()
    }

    fn last(&self) -> usize {
        self.directions.len() - 1
    }

    fn alpha_n(&self) -> f64 {
        self.weights[self.last()]
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.directions.len();
        let n = self.m.len();
        if k == 0 || self.pieces.len() != k || self.weights.len() != k {
            return Err(QcutError::BadForm("directions, pieces and weights must have equal nonzero length".into()));
        }
        if self.l.len() != n || self.directions.iter().any(|a| a.len() != n) {
            return Err(QcutError::DimMismatch { expected: n, got: self.l.len() });
        }
        if norm2(&self.directions[k - 1]) == 0.0 {
            return Err(QcutError::BadForm("last direction must be nonzero".into()));
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let (ai, aj) = (&self.directions[i], &self.directions[j]);
                if dot(ai, aj).abs() > 1e-10 * (norm2(ai) * norm2(aj)).max(1.0) {
                    return Err(QcutError::BadForm(format!("directions {i} and {j} are not orthogonal")));
                }
            }
        }
        for p in &self.pieces {
            if let Piece::Quadratic(kappa) = p {
                if !(*kappa >= 0.0) {
                    return Err(QcutError::BadForm("quadratic pieces need kappa >= 0".into()));
                }
            }
        }
        let an = self.alpha_n();
        if self.weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(QcutError::BadWeights("weights must be nonnegative".into()));
        }
        if !(an > 0.0) {
            return Err(QcutError::BadWeights("last weight must be positive".into()));
        }
        if self.weights.iter().any(|w| *w > an) {
            return Err(QcutError::BadWeights("last weight must be the largest".into()));
        }
        if !(self.gamma >= 0.0) || !(1.0 + self.gamma / an > 0.0) {
            return Err(QcutError::BadForm("gamma must be nonnegative".into()));
        }
        Ok(())
    }

    fn sum_pieces(&self, x: &[f64], w: impl Fn(usize) -> f64) -> f64 {
        self.directions
            .iter()
            .zip(&self.pieces)
            .enumerate()
            .map(|(i, (a, g))| {
                let c = w(i);
                if c == 0.0 {
                    0.0
                } else {
                    c * g.eval(dot(a, x))
                }
            })
            .sum()
    }

    pub fn eval_f(&self, x: &[f64]) -> f64 {
        self.sum_pieces(x, |_| 1.0) + dot(&self.m, x) + self.r
    }

    pub fn eval_g(&self, x: &[f64]) -> f64 {
        -self.sum_pieces(x, |i| self.weights[i]) - dot(&self.l, x) - self.q
    }

    /// `(m − l/αₙ)ᵀaₙ / (1 + γ/αₙ)`: slope of `t` along `aₙ` on the cut surface.
    pub fn slope_k(&self) -> f64 {
        let an = self.alpha_n();
        let a = &self.directions[self.last()];
        let v: Vec<f64> = self.m.iter().zip(&self.l).map(|(m, l)| m - l / an).collect();
        dot(&v, a) / (1.0 + self.gamma / an)
    }

    /// `H(x)` for the epigraph (`level = false`) or level-set variant.
    pub fn eval_h(&self, x: &[f64], level: bool) -> f64 {
        let an = self.alpha_n();
        let num = self.sum_pieces(x, |i| 1.0 - self.weights[i] / an) + dot(&self.m, x) - dot(&self.l, x) / an
            + self.r
            - self.q / an;
        if level {
            num
        } else {
            num / (1.0 + self.gamma / an)
        }
    }
}

/// Growth test on the last piece along its direction.
pub fn recession_ok(form: &AggregationForm) -> bool {
    if form.validate().is_err() {
        return false;
    }
    let n = form.last();
    let an = form.alpha_n();
    let a = &form.directions[n];
    let aa = norm2_sq(a);
    let lin = dot(&form.l, a) + form.gamma * form.slope_k();
    match &form.pieces[n] {
        Piece::Quadratic(kappa) => *kappa > 0.0,
        Piece::Convex(g) => {
            let phi = |s: f64| -an * g(s * aa) - s * lin;
            [1.0, -1.0].iter().all(|&sign| {
                let vals: Vec<f64> = (1..=8).map(|k| phi(sign * 10f64.powi(k))).collect();
                let finite = vals.iter().all(|v| v.is_finite() || *v == f64::NEG_INFINITY);
                let decreasing = vals[3..].windows(2).all(|w| w[1] < w[0]);
                finite && decreasing && vals[7] <= vals[3] - 1e3
            })
        }
    }
}

/// Aggregated cut `H(x) ≤ t` (epigraph) or `H(x) ≤ 0` (level set).
#[derive(Clone, Debug)]
pub struct AggregateCut {
    pub form: AggregationForm,
    pub level: bool,
}

impl AggregateCut {
    /// Defect of the cut at a point (`n + 1` entries for epigraphs).
    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        let n = self.form.n();
        let want = if self.level { n } else { n + 1 };
        if point.len() != want {
            return Err(QcutError::DimMismatch { expected: want, got: point.len() });
        }
        let h = self.form.eval_h(&point[..n], self.level);
        Ok(if self.level { h } else { h - point[n] })
    }

    /// Closed form when every piece is quadratic.
    pub fn to_cut(&self) -> Option<Cut> {
        let f = &self.form;
        let n = f.n();
        let an = f.alpha_n();
        let scale = if self.level { 1.0 } else { 1.0 + f.gamma / an };
        let mut e = Mat::zeros(n, n);
        for ((a, piece), w) in f.directions.iter().zip(&f.pieces).zip(&f.weights) {
            let Piece::Quadratic(kappa) = piece else { return None };
            let coef = (1.0 - w / an) * kappa / scale;
            if coef != 0.0 {
                e = outer_sum(&e, coef, a, a);
            }
        }
        let lin: Vec<f64> = f.m.iter().zip(&f.l).map(|(m, l)| (m - l / an) / scale).collect();
        let constant = (f.r - f.q / an) / scale;
        if self.level && e.max_abs() == 0.0 && lin.iter().all(|v| *v == 0.0) {
            return Some(if constant <= 0.0 { Cut::NoCut } else { Cut::EmptyHull });
        }
        Some(Cut::Quadratic { quad: e, lin, constant, t_coef: if self.level { 0.0 } else { 1.0 } })
    }
}

fn checked(form: &AggregationForm) -> Result<()> {
    form.validate()?;
    if !recession_ok(form) {
        return Err(QcutError::RecessionFailure);
    }
    Ok(())
}

/// `H = (F + G/αₙ)/(1 + γ/αₙ) ≤ t`.
pub fn aggregate_epigraph(form: &AggregationForm) -> Result<AggregateCut> {
    checked(form)?;
    Ok(AggregateCut { form: form.clone(), level: false })
}

/// `H = F + G/αₙ ≤ 0`; requires `l = αₙ·m` and ignores `γ`.
pub fn aggregate_levelset(form: &AggregationForm) -> Result<AggregateCut> {
    let mut f = form.clone();
    f.gamma = 0.0;
    f.validate()?;
    let an = f.alpha_n();
    let gap = norm2(&sub(&f.l, &crate::linalg::scale(&f.m, an)));
    if gap > 1e-9 * norm2(&f.l).max(1.0) {
        return Err(QcutError::BadForm("level-set aggregation needs l = alpha_n * m".into()));
    }
    checked(&f)?;
    Ok(AggregateCut { form: f, level: true })
}

/// Hull of `‖B(x − c)‖² ≤ t` minus the interior of
/// `{ γt + q ≤ −‖A(x − d)‖² }`.
pub fn intersection_cut_quadratic(b: &Mat, c: &[f64], a: &Mat, d: &[f64], q: f64, gamma: f64) -> Result<Cut> {
    let n = c.len();
    if b.rows() != n || !b.is_square() || a.cols() != n || d.len() != n {
        return Err(QcutError::DimMismatch { expected: n, got: d.len() });
    }
    if !(gamma >= 0.0) {
        return Err(QcutError::InvalidInput("gamma must be nonnegative".into()));
    }
    let binv = inverse(b)?;
    let ab = a.matmul(&binv)?;
    let mut m = ab.transpose().matmul(&ab)?;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    let (alpha, v) = eig_sym(&m)?;
    let an = alpha[n - 1];
    let mut h = Mat::zeros(n, n);
    for i in 0..n {
        let vi = v.col(i);
        h = outer_sum(&h, an - alpha[i], &vi, &vi);
    }
    let y0 = b.matvec(&sub(c, d))?;
    let e_vec = m.matvec(&y0)?;
    let w = dot(&y0, &e_vec);
    let e = b.transpose().matmul(&h)?.matmul(b)?;
    let ec = e.matvec(c)?;
    let bte = b.tr_matvec(&e_vec)?;
    let lin = bte.iter().zip(&ec).map(|(u, v)| -2.0 * u - 2.0 * v).collect();
    let constant = dot(c, &ec) + 2.0 * dot(&bte, c) - w - q;
    Ok(Cut::Quadratic { quad: e, lin, constant, t_coef: an + gamma })
}

/// Hull of `‖B(x − c)‖² ≤ r1` minus the interior of `{ ‖B(x − c)‖² ≥ r2 }`.
pub fn concentric_ellipsoid_cut(b: &Mat, c: &[f64], r1: f64, r2: f64) -> Result<(Cut, CaseLabel)> {
    if !(r1 > 0.0 && r2 > 0.0) {
        return Err(QcutError::InvalidInput("radii must be positive".into()));
    }
    inverse(b)?;
    if r2 > r1 * (1.0 + 1e-12) {
        return Ok((Cut::NoCut, CaseLabel::ConcentricNoCut));
    }
    let e = b.transpose().matmul(b)?;
    let ec = e.matvec(c)?;
    let lin = ec.iter().map(|v| -2.0 * v).collect();
    let constant = dot(c, &ec) - r2;
    Ok((Cut::Quadratic { quad: e, lin, constant, t_coef: 0.0 }, CaseLabel::ConcentricEllipsoid))
}

/// `xᵀQx + linᵀx + constant ≤ t_coef·t`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadForm {
    pub q: Mat,
    pub lin: Vec<f64>,
    pub constant: f64,
    pub t_coef: f64,
}

impl QuadForm {
    pub fn new(q: Mat, lin: Vec<f64>, constant: f64, t_coef: f64) -> Result<Self> {
        if !q.is_square() || q.rows() != lin.len() {
            return Err(QcutError::DimMismatch { expected: lin.len(), got: q.rows() });
        }
        if q.asymmetry() > 1e-10 * q.max_abs().max(1.0) {
            return Err(QcutError::NotSymmetric { asymmetry: q.asymmetry() });
        }
        Ok(Self { q, lin, constant, t_coef })
    }

    pub fn eval(&self, x: &[f64], t: f64) -> Result<f64> {
        Ok(self.q.quad_form(x)? + dot(&self.lin, x) + self.constant - self.t_coef * t)
    }

    /// `(1 − λ)·self + λ·other`.
    pub fn combine(&self, other: &QuadForm, lambda: f64) -> Result<QuadForm> {
        let mix = |a: f64, b: f64| (1.0 - lambda) * a + lambda * b;
        Ok(QuadForm {
            q: self.q.scale(1.0 - lambda).add(&other.q.scale(lambda))?,
            lin: self.lin.iter().zip(&other.lin).map(|(a, b)| mix(*a, *b)).collect(),
            constant: mix(self.constant, other.constant),
            t_coef: mix(self.t_coef, other.t_coef),
        })
    }

    pub fn scaled(&self, s: f64) -> QuadForm {
        QuadForm {
            q: self.q.scale(s),
            lin: self.lin.iter().map(|v| v * s).collect(),
            constant: self.constant * s,
            t_coef: self.t_coef * s,
        }
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        min_eigenvalue(&self.q)
    }

    pub fn from_cut(cut: &Cut) -> Option<QuadForm> {
        match cut {
            Cut::Quadratic { quad, lin, constant, t_coef } => {
                Some(QuadForm { q: quad.clone(), lin: lin.clone(), constant: *constant, t_coef: *t_coef })
            }
            _ => None,
        }
    }

    /// `‖Mx + m‖² − (qᵀx + k)²` from a 2-norm cut without `t`.
    pub fn from_norm_cut_squared(cut: &Cut) -> Option<QuadForm> {
        match cut {
            Cut::Norm { matrix, offset, p: 2, slope, t_coef, constant } if *t_coef == 0.0 => {
                let mtm = matrix.transpose().matmul(matrix).ok()?;
                let q = outer_sum(&mtm, -1.0, slope, slope);
                let mtm_off = matrix.tr_matvec(offset).ok()?;
                let lin = mtm_off.iter().zip(slope).map(|(a, s)| 2.0 * a - 2.0 * constant * s).collect();
                Some(QuadForm { q, lin, constant: norm2_sq(offset) - constant * constant, t_coef: 0.0 })
            }
            _ => None,
        }
    }

    fn coefficients(&self) -> Vec<f64> {
        let mut v = self.q.as_slice().to_vec();
        v.extend(&self.lin);
        v.push(self.constant);
        v.push(self.t_coef);
        v
    }
}

/// Largest `λ ∈ [0, 1]` with `(1 − λ)Q_F + λQ_G` positive semidefinite.
pub fn max_convex_lambda(qf: &QuadForm, qg: &QuadForm) -> Result<f64> {
    let scale = qf.q.max_abs().max(qg.q.max_abs()).max(f64::MIN_POSITIVE);
    let slack = 1e-12 * scale;
    let min_eig = |lambda: f64| -> Result<f64> { min_eigenvalue(&qf.q.scale(1.0 - lambda).add(&qg.q.scale(lambda))?) };
    if min_eig(0.0)? < -1e-9 * scale {
        return Err(QcutError::InvalidInput("Q_F must be positive semidefinite".into()));
    }
    if min_eig(1.0)? >= -slack {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if min_eig(mid)? >= -slack {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Least-squares `(λ, s)` with `(1 − λ)F + λG ≈ s·T`; also returns the
/// residual norm.
pub fn match_aggregation_weight(f: &QuadForm, g: &QuadForm, target: &QuadForm) -> Result<(f64, f64, f64)> {
    let (fv, gv, tv) = (f.coefficients(), g.coefficients(), target.coefficients());
    if fv.len() != gv.len() || fv.len() != tv.len() {
        return Err(QcutError::DimMismatch { expected: fv.len(), got: tv.len() });
    }
    // λ·(G − F) − s·T = −F
    let d: Vec<f64> = gv.iter().zip(&fv).map(|(g, f)| g - f).collect();
    let nt: Vec<f64> = tv.iter().map(|v| -v).collect();
    let rhs: Vec<f64> = fv.iter().map(|v| -v).collect();
    let (a11, a12, a22) = (dot(&d, &d), dot(&d, &nt), dot(&nt, &nt));
    let (b1, b2) = (dot(&d, &rhs), dot(&nt, &rhs));
    let det = a11 * a22 - a12 * a12;
    if det.abs() <= 1e-14 * (a11 * a22).max(f64::MIN_POSITIVE) {
        return Err(QcutError::Singular { column: 1, pivot: det });
    }
    let lambda = (b1 * a22 - a12 * b2) / det;
    let s = (a11 * b2 - a12 * b1) / det;
    let resid: Vec<f64> = (0..fv.len()).map(|i| lambda * d[i] + s * nt[i] - rhs[i]).collect();
    Ok((lambda, s, norm2(&resid)))
}
