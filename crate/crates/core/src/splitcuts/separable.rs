//! Split cuts for user-supplied separable sets `g(P⊥x) + f(πᵀx) ≤ t` (or `≤ 0`).
//!
//! Only the secant is computed here; validity of the result for a given
//! `(g, f)` is checked by sampling, not proved.

use std::fmt;
use std::sync::Arc;

use crate::error::{QcutError, Result};
use crate::linalg::{dot, project_perp};

use super::interp::{secant_coeffs, SecantCoeffs};

pub type VecFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Separable set `g(P⊥_π x) + f(πᵀx) ≤ t`, or `≤ 0` when `epigraph` is false.
#[derive(Clone)]
pub struct SeparableSet {
    pub pi: Vec<f64>,
    pub g: VecFn,
    pub f: ScalarFn,
    pub epigraph: bool,
}

impl fmt::Debug for SeparableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeparableSet").field("pi", &self.pi).field("epigraph", &self.epigraph).finish()
    }
}

impl SeparableSet {
    fn parts<'a>(&self, point: &'a [f64]) -> Result<(&'a [f64], f64)> {
        let n = self.pi.len();
        let want = n + usize::from(self.epigraph);
        if point.len() != want {
            return Err(QcutError::DimMismatch { expected: want, got: point.len() });
        }
        Ok((&point[..n], if self.epigraph { point[n] } else { 0.0 }))
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        let (x, t) = self.parts(point)?;
        Ok((self.g)(&project_perp(&self.pi, x)?) + (self.f)(dot(&self.pi, x)) - t)
    }
}

/// Cut `g(P⊥x) + a·πᵀx + b ≤ t` obtained by replacing `f` with its secant.
#[derive(Clone, Debug)]
pub struct SeparableSplitCut {
    pub set: SeparableSet,
    pub secant: SecantCoeffs,
}

impl SeparableSplitCut {
    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        let (x, t) = self.set.parts(point)?;
        let u = dot(&self.set.pi, x);
        Ok((self.set.g)(&project_perp(&self.set.pi, x)?) + self.secant.a * u + self.secant.b - t)
    }
}

pub fn separable_split_cut(set: SeparableSet, pi0: f64, pi1: f64) -> Result<SeparableSplitCut> {
    if set.pi.iter().all(|v| *v == 0.0) {
        return Err(QcutError::ZeroVector);
    }
    let secant = secant_coeffs((set.f)(pi0), (set.f)(pi1), pi0, pi1)?;
    Ok(SeparableSplitCut { set, secant })
}
