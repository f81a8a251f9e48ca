//! Convex bodies, split disjunctions, forbidden sets and cuts.
//!
//! Points are flat slices. For epigraphical bodies a point has `n + 1`
//! entries with the epigraph variable `t` last; level-set bodies use `n`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{QcutError, Result};
use crate::linalg::{dot, norm2, norm2_sq, norm_p, sub, Mat};

/// Default tolerance for [`split_position`].
pub const SPLIT_TOL: f64 = 1e-9;

/// Which power of the norm a level-set body compares against its radius.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelForm {
    /// `‖B(x − c)‖ − r`.
    #[default]
    Norm,
    /// `‖B(x − c)‖² − r`, so `r` is the squared radius.
    Squared,
}

/// Base convex set.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBody {
    /// `‖B(x − c)‖² ≤ t`.
    Paraboloid { b: Mat, c: Vec<f64> },
    /// `‖B(x − c)‖ ≤ t`.
    Cone { b: Mat, c: Vec<f64> },
    /// `‖B(x − c)‖ ≤ r`, or `‖B(x − c)‖² ≤ r` with [`LevelForm::Squared`].
    Ellipsoid { b: Mat, c: Vec<f64>, r: f64, form: LevelForm },
    /// `√(‖x‖² + l²) ≤ t`.
    Hyperboloid { n: usize, l: f64 },
    /// `‖x‖_p ≤ t`.
    PCone { n: usize, p: u32 },
    /// `‖x‖_p ≤ r`.
    PBall { n: usize, p: u32, r: f64 },
    /// `base + L` where `L` is spanned by the coordinates listed in `free`.
    /// `n` is the full x-dimension; the base lives on the remaining ones.
    Cylinder { base: Box<ConvexBody>, free: Vec<usize>, n: usize },
}

impl ConvexBody {
    pub fn paraboloid(b: Mat, c: Vec<f64>) -> Result<Self> {
        check_affine(&b, &c)?;
        Ok(Self::Paraboloid { b, c })
    }

    pub fn cone(b: Mat, c: Vec<f64>) -> Result<Self> {
        check_affine(&b, &c)?;
        Ok(Self::Cone { b, c })
    }

    pub fn ellipsoid(b: Mat, c: Vec<f64>, r: f64) -> Result<Self> {
        check_affine(&b, &c)?;
        check_positive("r", r)?;
        Ok(Self::Ellipsoid { b, c, r, form: LevelForm::Norm })
    }

    /// `‖B(x − c)‖² ≤ r1`.
    pub fn ellipsoid_squared(b: Mat, c: Vec<f64>, r1: f64) -> Result<Self> {
        check_affine(&b, &c)?;
        check_positive("r1", r1)?;
        Ok(Self::Ellipsoid { b, c, r: r1, form: LevelForm::Squared })
    }

    pub fn hyperboloid(n: usize, l: f64) -> Result<Self> {
        check_dim(n)?;
        if l == 0.0 || !l.is_finite() {
            return Err(QcutError::InvalidInput("hyperboloid needs a finite l != 0".into()));
        }
        Ok(Self::Hyperboloid { n, l })
    }

    pub fn p_cone(n: usize, p: u32) -> Result<Self> {
        check_dim(n)?;
        check_order(p)?;
        Ok(Self::PCone { n, p })
    }

    pub fn p_ball(n: usize, p: u32, r: f64) -> Result<Self> {
        check_dim(n)?;
        check_order(p)?;
        check_positive("r", r)?;
        Ok(Self::PBall { n, p, r })
    }

    pub fn cylinder(base: ConvexBody, free: Vec<usize>) -> Result<Self> {
        if matches!(base, ConvexBody::Cylinder { .. }) {
            return Err(QcutError::InvalidInput("nested cylinders are not supported".into()));
        }
        let n = base.n() + free.len();
        let mut sorted = free.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != free.len() || sorted.iter().any(|&i| i >= n) {
            return Err(QcutError::InvalidInput("cylinder free indices must be distinct and < n".into()));
        }
        Ok(Self::Cylinder { base: Box::new(base), free: sorted, n })
    }

    /// Dimension of the x-part.
    pub fn n(&self) -> usize {
        match self {
            Self::Paraboloid { c, .. } | Self::Cone { c, .. } | Self::Ellipsoid { c, .. } => c.len(),
            Self::Hyperboloid { n, .. }
            | Self::PCone { n, .. }
            | Self::PBall { n, .. }
            | Self::Cylinder { n, .. } => *n,
        }
    }

    pub fn is_epigraph(&self) -> bool {
        match self {
            Self::Paraboloid { .. } | Self::Cone { .. } | Self::Hyperboloid { .. } | Self::PCone { .. } => true,
            Self::Ellipsoid { .. } | Self::PBall { .. } => false,
            Self::Cylinder { base, .. } => base.is_epigraph(),
        }
    }

    /// Length of a point of this body, including `t` for epigraphs.
    pub fn point_dim(&self) -> usize {
        self.n() + usize::from(self.is_epigraph())
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Self::Paraboloid { .. } => "paraboloid",
            Self::Cone { .. } => "cone",
            Self::Ellipsoid { .. } => "ellipsoid",
            Self::Hyperboloid { .. } => "hyperboloid",
            Self::PCone { .. } => "p_cone",
            Self::PBall { .. } => "p_ball",
            Self::Cylinder { .. } => "cylinder",
        }
    }

    /// Defining function value at `x` (the part compared against `t` or `r`).
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n() {
            return Err(QcutError::DimMismatch { expected: self.n(), got: x.len() });
        }
        Ok(match self {
            Self::Paraboloid { b, c } => norm2_sq(&b.matvec(&sub(x, c))?),
            Self::Cone { b, c } => norm2(&b.matvec(&sub(x, c))?),
            Self::Ellipsoid { b, c, form, .. } => {
                let y = b.matvec(&sub(x, c))?;
                match form {
                    LevelForm::Norm => norm2(&y),
                    LevelForm::Squared => norm2_sq(&y),
                }
            }
            Self::Hyperboloid { l, .. } => (norm2_sq(x) + l * l).sqrt(),
            Self::PCone { p, .. } | Self::PBall { p, .. } => norm_p(x, *p),
            Self::Cylinder { base, free, .. } => base.value(&quotient(x, free))?,
        })
    }

    /// Radius of a level-set body in its own norm power (`r` for
    /// [`LevelForm::Norm`], `√r` for [`LevelForm::Squared`]).
    pub fn radius(&self) -> Option<f64> {
        match self {
            Self::Ellipsoid { r, form: LevelForm::Norm, .. } | Self::PBall { r, .. } => Some(*r),
            Self::Ellipsoid { r, form: LevelForm::Squared, .. } => Some(r.sqrt()),
            Self::Cylinder { base, .. } => base.radius(),
            _ => None,
        }
    }

    /// Right-hand side the defining value is compared against for level sets.
    fn level(&self) -> f64 {
        match self {
            Self::Ellipsoid { r, .. } | Self::PBall { r, .. } => *r,
            Self::Cylinder { base, .. } => base.level(),
            _ => 0.0,
        }
    }
}

fn check_affine(b: &Mat, c: &[f64]) -> Result<()> {
    check_dim(c.len())?;
    if b.rows() != c.len() || b.cols() != c.len() {
        return Err(QcutError::DimMismatch { expected: c.len(), got: b.rows().max(b.cols()) });
    }
    if !b.is_finite() || c.iter().any(|v| !v.is_finite()) {
        return Err(QcutError::InvalidInput("non-finite entries in B or c".into()));
    }
    Ok(())
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > crate::linalg::MAX_DIM {
        return Err(QcutError::InvalidInput(format!(
            "dimension {n} outside 1..={}",
            crate::linalg::MAX_DIM
        )));
    }
    Ok(())
}

fn check_order(p: u32) -> Result<()> {
    if p == 0 {
        return Err(QcutError::InvalidInput("p must be >= 1".into()));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(QcutError::InvalidInput(format!("{name} must be positive and finite")));
    }
    Ok(())
}

/// Drops the coordinates listed in `free` (sorted).
pub fn quotient(x: &[f64], free: &[usize]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .filter(|(i, _)| free.binary_search(i).is_err())
        .map(|(_, v)| *v)
        .collect()
}

/// Positions of the non-free coordinates within `0..n`.
pub fn kept_indices(n: usize, free: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| free.binary_search(i).is_err()).collect()
}

/// Splits a point into its x-part and `t` (0 for level sets).
pub fn split_point<'a>(body: &ConvexBody, point: &'a [f64]) -> Result<(&'a [f64], f64)> {
    if point.len() != body.point_dim() {
        return Err(QcutError::DimMismatch { expected: body.point_dim(), got: point.len() });
    }
    let n = body.n();
    Ok((&point[..n], if body.is_epigraph() { point[n] } else { 0.0 }))
}

/// Defect of the body's defining inequality; `≤ 0` iff the point belongs to it.
pub fn eval_body(body: &ConvexBody, point: &[f64]) -> Result<f64> {
    let (x, t) = split_point(body, point)?;
    let v = body.value(x)?;
    Ok(if body.is_epigraph() { v - t } else { v - body.level() })
}

/// Strip `{ πᵀx + π̂t ∈ [π0, π1] }` whose interior is removed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitDisjunction {
    pub pi: Vec<f64>,
    #[serde(default)]
    pub pi_hat: f64,
    pub pi0: f64,
    pub pi1: f64,
}

impl SplitDisjunction {
    pub fn new(pi: Vec<f64>, pi0: f64, pi1: f64) -> Result<Self> {
        Self::with_t(pi, 0.0, pi0, pi1)
    }

    pub fn with_t(pi: Vec<f64>, pi_hat: f64, pi0: f64, pi1: f64) -> Result<Self> {
        let s = Self { pi, pi_hat, pi0, pi1 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.pi.iter().all(|v| v.is_finite())
            && self.pi_hat.is_finite()
            && self.pi0.is_finite()
            && self.pi1.is_finite();
        if !finite {
            return Err(QcutError::InvalidInput("non-finite split data".into()));
        }
        if self.pi0 >= self.pi1 {
            return Err(QcutError::DegenerateInterval { pi0: self.pi0, pi1: self.pi1 });
        }
        if self.pi_hat == 0.0 && self.pi.iter().all(|v| *v == 0.0) {
            return Err(QcutError::ZeroVector);
        }
        Ok(())
    }

    /// `πᵀx + π̂t`; a point without `t` is accepted when `π̂ = 0`.
    pub fn value(&self, point: &[f64]) -> Result<f64> {
        let n = self.pi.len();
        if point.len() == n + 1 {
            Ok(dot(&self.pi, &point[..n]) + self.pi_hat * point[n])
        } else if point.len() == n && self.pi_hat == 0.0 {
            Ok(dot(&self.pi, point))
        } else {
            Err(QcutError::DimMismatch { expected: n + 1, got: point.len() })
        }
    }

    fn scaled_tol(&self, tol: f64) -> f64 {
        tol * 1f64.max(self.pi0.abs()).max(self.pi1.abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Below,
    Inside,
    Above,
}

/// Classifies a point against the strip. `tol` is scaled by `max(1, |π0|, |π1|)`.
pub fn split_position(split: &SplitDisjunction, point: &[f64], tol: f64) -> Result<Side> {
    let v = split.value(point)?;
    let tol = split.scaled_tol(tol);
    Ok(if v <= split.pi0 + tol && v < split.pi1 - tol {
        Side::Below
    } else if v >= split.pi1 - tol {
        Side::Above
    } else {
        Side::Inside
    })
}

/// Region whose interior is removed from a body. `defect > 0` means interior.
#[derive(Clone)]
pub enum Forbidden {
    Split(SplitDisjunction),
    /// `{ γt + q ≤ −‖A(x − d)‖² }`.
    QuadraticHypograph { a: Mat, d: Vec<f64>, q: f64, gamma: f64 },
    /// `{ ‖B(x − c)‖² ≥ r2 }`.
    EllipsoidExterior { b: Mat, c: Vec<f64>, r2: f64 },
    /// Arbitrary interior test supplied as a closure.
    Custom(Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>),
}

impl fmt::Debug for Forbidden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Split(s) => f.debug_tuple("Split").field(s).finish(),
            Self::QuadraticHypograph { a, d, q, gamma } => f
                .debug_struct("QuadraticHypograph")
                .field("a", a)
                .field("d", d)
                .field("q", q)
                .field("gamma", gamma)
                .finish(),
            Self::EllipsoidExterior { b, c, r2 } => {
                f.debug_struct("EllipsoidExterior").field("b", b).field("c", c).field("r2", r2).finish()
            }
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl Forbidden {
    /// Positive strictly inside the forbidden region, `≤ 0` outside its interior.
    pub fn defect(&self, point: &[f64]) -> Result<f64> {
        match self {
            Self::Split(s) => {
                let v = s.value(point)?;
                Ok((v - s.pi0).min(s.pi1 - v))
            }
            Self::QuadraticHypograph { a, d, q, gamma } => {
                let n = d.len();
                if point.len() != n + 1 {
                    return Err(QcutError::DimMismatch { expected: n + 1, got: point.len() });
                }
                let y = a.matvec(&sub(&point[..n], d))?;
                Ok(-norm2_sq(&y) - q - gamma * point[n])
            }
            Self::EllipsoidExterior { b, c, r2 } => {
                let n = c.len();
                if point.len() != n && point.len() != n + 1 {
                    return Err(QcutError::DimMismatch { expected: n, got: point.len() });
                }
                let y = b.matvec(&sub(&point[..n], c))?;
                Ok(norm2_sq(&y) - r2)
            }
            Self::Custom(f) => Ok(f(point)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Le,
    Ge,
}

/// Inequality valid for the closed convex hull.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cut {
    /// `‖Mx + m‖_p ≤ qᵀx + h·t + k`.
    Norm {
        #[serde(rename = "M")]
        matrix: Mat,
        #[serde(rename = "m")]
        offset: Vec<f64>,
        p: u32,
        #[serde(rename = "q")]
        slope: Vec<f64>,
        #[serde(rename = "h")]
        t_coef: f64,
        #[serde(rename = "k")]
        constant: f64,
    },
    /// `xᵀEx + aᵀx + f ≤ γt·t`.
    Quadratic {
        #[serde(rename = "E")]
        quad: Mat,
        #[serde(rename = "a")]
        lin: Vec<f64>,
        #[serde(rename = "f")]
        constant: f64,
        #[serde(rename = "gamma_t")]
        t_coef: f64,
    },
    /// `gᵀx + h·t {≤,≥} k`.
    Linear {
        #[serde(rename = "g")]
        coef: Vec<f64>,
        #[serde(rename = "h")]
        t_coef: f64,
        #[serde(rename = "k")]
        rhs: f64,
        sense: Sense,
    },
    /// The hull equals the body.
    NoCut,
    /// The hull is empty.
    EmptyHull,
}

impl Cut {
    /// x-dimension the cut acts on, if it has coefficients.
    pub fn n(&self) -> Option<usize> {
        match self {
            Self::Norm { matrix, .. } => Some(matrix.cols()),
            Self::Quadratic { lin, .. } => Some(lin.len()),
            Self::Linear { coef, .. } => Some(coef.len()),
            Self::NoCut | Self::EmptyHull => None,
        }
    }

    fn t_coef(&self) -> f64 {
        match self {
            Self::Norm { t_coef, .. } | Self::Quadratic { t_coef, .. } | Self::Linear { t_coef, .. } => *t_coef,
            Self::NoCut | Self::EmptyHull => 0.0,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Norm { .. } => "norm",
            Self::Quadratic { .. } => "quadratic",
            Self::Linear { .. } => "linear",
            Self::NoCut => "no_cut",
            Self::EmptyHull => "empty_hull",
        }
    }

    /// Checks internal shape consistency and finiteness.
    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match self {
            Self::Norm { matrix, offset, p, slope, t_coef, constant } => {
                let n = matrix.cols();
                if offset.len() != matrix.rows() {
                    return Err(QcutError::DimMismatch { expected: matrix.rows(), got: offset.len() });
                }
                if slope.len() != n {
                    return Err(QcutError::DimMismatch { expected: n, got: slope.len() });
                }
                if *p == 0 {
                    return Err(QcutError::InvalidInput("norm cut needs p >= 1".into()));
                }
                if !(matrix.is_finite() && finite(offset) && finite(slope) && t_coef.is_finite() && constant.is_finite()) {
                    return Err(QcutError::InvalidInput("non-finite cut coefficients".into()));
                }
            }
            Self::Quadratic { quad, lin, constant, t_coef } => {
                if !quad.is_square() || quad.rows() != lin.len() {
                    return Err(QcutError::DimMismatch { expected: lin.len(), got: quad.rows() });
                }
                if !(quad.is_finite() && finite(lin) && constant.is_finite() && t_coef.is_finite()) {
                    return Err(QcutError::InvalidInput("non-finite cut coefficients".into()));
                }
            }
            Self::Linear { coef, t_coef, rhs, .. } => {
                if !(finite(coef) && t_coef.is_finite() && rhs.is_finite()) {
                    return Err(QcutError::InvalidInput("non-finite cut coefficients".into()));
                }
            }
            Self::NoCut | Self::EmptyHull => {}
        }
        Ok(())
    }
}

/// Defect of the cut; `≤ 0` iff the inequality holds. `NoCut` gives `−∞`,
/// `EmptyHull` gives `+∞`.
pub fn eval_cut(cut: &Cut, point: &[f64]) -> Result<f64> {
    let Some(n) = cut.n() else {
        return Ok(match cut {
            Cut::EmptyHull => f64::INFINITY,
            _ => f64::NEG_INFINITY,
        });
    };
    let (x, t) = if point.len() == n + 1 {
        (&point[..n], point[n])
    } else if point.len() == n && cut.t_coef() == 0.0 {
        (point, 0.0)
    } else {
        return Err(QcutError::DimMismatch { expected: n + 1, got: point.len() });
    };
    Ok(match cut {
        Cut::Norm { matrix, offset, p, slope, t_coef, constant } => {
            let y: Vec<f64> = matrix.matvec(x)?.iter().zip(offset).map(|(a, b)| a + b).collect();
            norm_p(&y, *p) - (dot(slope, x) + t_coef * t + constant)
        }
        Cut::Quadratic { quad, lin, constant, t_coef } => {
            quad.quad_form(x)? + dot(lin, x) + constant - t_coef * t
        }
        Cut::Linear { coef, t_coef, rhs, sense } => {
            let lhs = dot(coef, x) + t_coef * t;
            match sense {
                Sense::Le => lhs - rhs,
                Sense::Ge => rhs - lhs,
            }
        }
        Cut::NoCut | Cut::EmptyHull => unreachable!(),
    })
}

/// Branch of a case analysis that produced a cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    EllipsoidProper,
    #[serde(rename = "ellipsoid_cg_above")]
    EllipsoidCgAbove,
    #[serde(rename = "ellipsoid_cg_below")]
    EllipsoidCgBelow,
    EllipsoidNoCut,
    EllipsoidEmpty,
    ParaboloidSimple,
    ParaboloidNoCut,
    ParaboloidLinearHi,
    ParaboloidLinearLo,
    ParaboloidConic,
    ConeSimpleNoCut,
    ConeSimpleConic,
    ConeNoCut,
    ConeLinearLo,
    ConeLinearHi,
    ConeConic,
    HyperSymmetric,
    HyperAsymmetric,
    PConeNoCut,
    PConeConic,
    PBallProper,
    SeparableGeneric,
    IntersectionQuadratic,
    Aggregation,
    ConcentricEllipsoid,
    ConcentricNoCut,
}

impl CaseLabel {
    /// Label name as used in JSON output.
    pub fn name(&self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }

    /// Whether the label is compatible with the tag of `cut`.
    pub fn matches(&self, cut: &Cut) -> bool {
        use CaseLabel::*;
        match self {
            EllipsoidNoCut | ParaboloidNoCut | ConeSimpleNoCut | ConeNoCut | PConeNoCut | ConcentricNoCut => {
                matches!(cut, Cut::NoCut)
            }
            EllipsoidEmpty => matches!(cut, Cut::EmptyHull),
            EllipsoidCgAbove | EllipsoidCgBelow | ParaboloidLinearHi | ParaboloidLinearLo | ConeLinearLo
            | ConeLinearHi => matches!(cut, Cut::Linear { .. }),
            ParaboloidSimple | IntersectionQuadratic | ConcentricEllipsoid => matches!(cut, Cut::Quadratic { .. }),
            EllipsoidProper | ParaboloidConic | ConeSimpleConic | ConeConic | HyperSymmetric | HyperAsymmetric
            | PConeConic | PBallProper => matches!(cut, Cut::Norm { .. }),
            SeparableGeneric | Aggregation => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_examples() {
        let par = ConvexBody::paraboloid(Mat::identity(2), vec![0.0; 2]).unwrap();
        assert_eq!(eval_body(&par, &[0.0, 0.0, 0.0]).unwrap(), 0.0);
        let cone = ConvexBody::cone(Mat::identity(2), vec![0.0; 2]).unwrap();
        assert_eq!(eval_body(&cone, &[3.0, 4.0, 5.0]).unwrap(), 0.0);
        let ell = ConvexBody::ellipsoid(Mat::identity(2), vec![0.0; 2], 2.0).unwrap();
        assert_eq!(eval_body(&ell, &[0.0, 3.0]).unwrap(), 1.0);
        assert!(matches!(eval_body(&ell, &[0.0, 3.0, 1.0]), Err(QcutError::DimMismatch { .. })));
    }

    #[test]
    fn squared_ellipsoid_defect() {
        let ell = ConvexBody::ellipsoid_squared(Mat::identity(2), vec![0.0; 2], 4.0).unwrap();
        assert_eq!(eval_body(&ell, &[0.0, 3.0]).unwrap(), 5.0);
        assert_eq!(ell.radius(), Some(2.0));
    }

    #[test]
    fn cylinder_ignores_free_coordinates() {
        let base = ConvexBody::cone(Mat::identity(1), vec![0.0]).unwrap();
        let cyl = ConvexBody::cylinder(base, vec![1]).unwrap();
        assert_eq!(cyl.n(), 2);
        assert_eq!(eval_body(&cyl, &[3.0, 100.0, 3.0]).unwrap(), 0.0);
    }

    #[test]
    fn cut_examples() {
        let lin = Cut::Linear { coef: vec![1.0, 0.0], t_coef: 0.0, rhs: 1.0, sense: Sense::Ge };
        assert_eq!(eval_cut(&lin, &[2.0, 5.0]).unwrap(), -1.0);
        let norm = Cut::Norm {
            matrix: Mat::diag(&[0.0, 1.0]),
            offset: vec![1.0, 0.0],
            p: 2,
            slope: vec![0.0, 0.0],
            t_coef: 1.0,
            constant: 0.0,
        };
        assert_eq!(eval_cut(&norm, &[0.0, 0.0, 1.0]).unwrap(), 0.0);
        let quad = Cut::Quadratic { quad: Mat::zeros(1, 1), lin: vec![0.0], constant: 1.0, t_coef: 1.0 };
        assert_eq!(eval_cut(&quad, &[0.0, 0.5]).unwrap(), 0.5);
        assert_eq!(eval_cut(&Cut::NoCut, &[1.0]).unwrap(), f64::NEG_INFINITY);
        assert_eq!(eval_cut(&Cut::EmptyHull, &[1.0]).unwrap(), f64::INFINITY);
        assert!(eval_cut(&quad, &[0.0]).is_err());
    }

    #[test]
    fn position_examples() {
        let s = SplitDisjunction::new(vec![1.0, 0.0], 0.0, 1.0).unwrap();
        assert_eq!(split_position(&s, &[-1.0, 0.0], SPLIT_TOL).unwrap(), Side::Below);
        assert_eq!(split_position(&s, &[0.5, 0.0], SPLIT_TOL).unwrap(), Side::Inside);
        let st = SplitDisjunction::with_t(vec![1.0, 0.0], 1.0, 0.0, 1.0).unwrap();
        assert_eq!(split_position(&st, &[0.2, 0.0, 0.9], SPLIT_TOL).unwrap(), Side::Above);
        assert!(split_position(&st, &[0.2, 0.0], SPLIT_TOL).is_err());
    }

    #[test]
    fn split_validation() {
        assert!(matches!(
            SplitDisjunction::new(vec![1.0], 1.0, 1.0),
            Err(QcutError::DegenerateInterval { .. })
        ));
        assert_eq!(SplitDisjunction::new(vec![0.0], 0.0, 1.0), Err(QcutError::ZeroVector));
    }

    #[test]
    fn cut_json_uses_short_names() {
        let cut = Cut::Linear { coef: vec![1.0], t_coef: 0.0, rhs: 0.5, sense: Sense::Ge };
        let s = serde_json::to_string(&cut).unwrap();
        assert_eq!(s, r#"{"kind":"linear","g":[1.0],"h":0.0,"k":0.5,"sense":"ge"}"#);
        assert_eq!(serde_json::from_str::<Cut>(&s).unwrap(), cut);
        assert_eq!(CaseLabel::EllipsoidCgAbove.name(), "ellipsoid_cg_above");
    }
}
