//! JSON file formats read and written by the command line.

use serde::{Deserialize, Serialize};

use crate::error::{QcutError, Result};
use crate::interscuts::{concentric_ellipsoid_cut, intersection_cut_quadratic};
use crate::linalg::Mat;
use crate::model::{CaseLabel, ConvexBody, Cut, Forbidden, LevelForm, SplitDisjunction};
use crate::splitcuts::split_cut;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodySpec {
    pub family: String,
    pub n: usize,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Mat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<LevelForm>,
    /// Coordinates along which the body is a cylinder; `n` counts them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ForbiddenSpec {
    /// `{ γt + q ≤ −‖A(x − d)‖² }`.
    Quadratic {
        #[serde(rename = "A")]
        a: Mat,
        d: Vec<f64>,
        q: f64,
        #[serde(default)]
        gamma: f64,
    },
    /// `{ ‖B(x − c)‖² ≥ r2 }`, sharing the body's `B` and `c` when omitted.
    EllipsoidExterior {
        #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
        b: Option<Mat>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<Vec<f64>>,
        r2: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub body: BodySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitDisjunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<ForbiddenSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub operation: String,
    pub parameters: serde_json::Value,
}

/// A cut together with its case label and how it was produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutFile {
    #[serde(flatten)]
    pub cut: Cut,
    pub case: CaseLabel,
    pub provenance: Provenance,
}

fn need<T>(v: Option<T>, what: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| QcutError::InvalidInput(format!("{family} needs field '{what}'")))
}

impl BodySpec {
    pub fn build(&self) -> Result<ConvexBody> {
        match &self.free {
            Some(free) if !free.is_empty() => {
                let base_n = self.n.checked_sub(free.len()).filter(|m| *m > 0).ok_or_else(|| {
                    QcutError::InvalidInput("cylinder needs at least one non-free coordinate".into())
                })?;
                let base = BodySpec { n: base_n, free: None, ..self.clone() }.build()?;
                ConvexBody::cylinder(base, free.clone())
            }
            _ => self.build_base(),
        }
    }

    fn build_base(&self) -> Result<ConvexBody> {
        let n = self.n;
        let fam = self.family.as_str();
        let b = || self.b.clone().unwrap_or_else(|| Mat::identity(n));
        let c = || self.c.clone().unwrap_or_else(|| vec![0.0; n]);
        match fam {
            "paraboloid" => ConvexBody::paraboloid(b(), c()),
            "cone" => ConvexBody::cone(b(), c()),
            "ellipsoid" => {
                let r = need(self.r, "r", fam)?;
                match self.form.unwrap_or_default() {
                    LevelForm::Norm => ConvexBody::ellipsoid(b(), c(), r),
                    LevelForm::Squared => ConvexBody::ellipsoid_squared(b(), c(), r),
                }
            }
            "hyperboloid" => ConvexBody::hyperboloid(n, need(self.l, "l", fam)?),
            "p_cone" => ConvexBody::p_cone(n, need(self.p, "p", fam)?),
            "p_ball" => ConvexBody::p_ball(n, need(self.p, "p", fam)?, need(self.r, "r", fam)?),
            other => Err(QcutError::UnsupportedFamily(other.to_string())),
        }
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| QcutError::InvalidInput(format!("instance: {e}")))
    }

    /// The removed region, in the form the verifier uses.
    pub fn forbidden_region(&self, body: &ConvexBody) -> Result<Forbidden> {
        match (&self.split, &self.forbidden) {
            (Some(s), None) => {
                s.validate()?;
                Ok(Forbidden::Split(s.clone()))
            }
            (None, Some(ForbiddenSpec::Quadratic { a, d, q, gamma })) => {
                Ok(Forbidden::QuadraticHypograph { a: a.clone(), d: d.clone(), q: *q, gamma: *gamma })
            }
            (None, Some(ForbiddenSpec::EllipsoidExterior { b, c, r2 })) => {
                let (bb, cc) = ellipsoid_frame(body, b, c)?;
                Ok(Forbidden::EllipsoidExterior { b: bb, c: cc, r2: *r2 })
            }
            _ => Err(QcutError::InvalidInput("instance needs exactly one of 'split' and 'forbidden'".into())),
        }
    }

    pub fn generate(&self) -> Result<CutFile> {
        let body = self.body.build()?;
        let params = serde_json::to_value(self).map_err(|e| QcutError::InvalidInput(e.to_string()))?;
        let (cut, case, operation) = match (&self.split, &self.forbidden) {
            (Some(split), None) => {
                let (cut, case) = split_cut(&body, split)?;
                (cut, case, "split_cut")
            }
            (None, Some(ForbiddenSpec::Quadratic { a, d, q, gamma })) => {
                let ConvexBody::Paraboloid { b, c } = &body else {
                    return Err(QcutError::UnsupportedCombination("quadratic forbidden sets need a paraboloid body".into()));
                };
                let cut = intersection_cut_quadratic(b, c, a, d, *q, *gamma)?;
                (cut, CaseLabel::IntersectionQuadratic, "intersection_cut_quadratic")
            }
            (None, Some(ForbiddenSpec::EllipsoidExterior { b, c, r2 })) => {
                let (bb, cc) = ellipsoid_frame(&body, b, c)?;
                let r1 = body.radius().map(|r| r * r).unwrap_or_default();
                let (cut, case) = concentric_ellipsoid_cut(&bb, &cc, r1, *r2)?;
                (cut, case, "concentric_ellipsoid_cut")
            }
            _ => return Err(QcutError::InvalidInput("instance needs exactly one of 'split' and 'forbidden'".into())),
        };
        Ok(CutFile { cut, case, provenance: Provenance { operation: operation.into(), parameters: params } })
    }
}

/// `B, c` of an ellipsoid body; an explicit frame must match it.
fn ellipsoid_frame(body: &ConvexBody, b: &Option<Mat>, c: &Option<Vec<f64>>) -> Result<(Mat, Vec<f64>)> {
    let ConvexBody::Ellipsoid { b: bb, c: cc, .. } = body else {
        return Err(QcutError::UnsupportedCombination("ellipsoid exterior needs an ellipsoid body".into()));
    };
    let same_b = b.as_ref().map_or(true, |m| m == bb);
    let same_c = c.as_ref().map_or(true, |v| v == cc);
    if !(same_b && same_c) {
        return Err(QcutError::UnsupportedCombination("ellipsoid exterior must be concentric with the body".into()));
    }
    Ok((bb.clone(), cc.clone()))
}

impl CutFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: CutFile = serde_json::from_str(text).map_err(|e| QcutError::InvalidInput(format!("cut file: {e}")))?;
        file.cut.validate()?;
        Ok(file)
    }
}
