use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QcutError, Result};
use crate::linalg::{inverse, Mat};
use crate::model::{eval_body, ConvexBody};

/// Attempts per requested sample before rejection sampling gives up.
const ATTEMPTS_PER_SAMPLE: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    /// Per-coordinate bounds on `x`.
    pub bounds: Vec<(f64, f64)>,
    /// Upper bound on `t` for epigraphical bodies.
    pub t_cap: Option<f64>,
}

impl SampleConfig {
    pub fn new(seed: u64, count: usize, bounds: Vec<(f64, f64)>, t_cap: Option<f64>) -> Result<Self> {
        let cfg = Self { seed, count, bounds, t_cap };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(QcutError::InvalidInput("sample count must be >= 1".into()));
        }
        if self.bounds.is_empty() || self.bounds.iter().any(|(lo, hi)| !(lo <= hi) || !lo.is_finite() || !hi.is_finite()) {
            return Err(QcutError::InvalidInput("sample box must be nonempty and finite".into()));
        }
        Ok(())
    }

    /// Circumscribing box for level sets; a box of radius 2 (in the body's
    /// own coordinates) with `t_cap = 4·max value` for epigraphs.
    pub fn for_body(body: &ConvexBody, seed: u64, count: usize) -> Result<Self> {
        let bounds = default_bounds(body)?;
        let t_cap = if body.is_epigraph() { Some(4.0 * max_on_box(body, &bounds)?.max(1.0)) } else { None };
        Self::new(seed, count, bounds, t_cap)
    }
}

fn row_box(b: &Mat, c: &[f64], radius: f64) -> Result<Vec<(f64, f64)>> {
    let binv = inverse(b)?;
    Ok(c.iter()
        .enumerate()
        .map(|(i, ci)| {
            let w = radius * crate::linalg::norm2(&binv.row(i));
            (ci - w, ci + w)
        })
        .collect())
}

pub fn default_bounds(body: &ConvexBody) -> Result<Vec<(f64, f64)>> {
    Ok(match body {
        ConvexBody::Paraboloid { b, c } | ConvexBody::Cone { b, c } => row_box(b, c, 2.0)?,
        ConvexBody::Ellipsoid { b, c, .. } => row_box(b, c, body.radius().unwrap_or(1.0))?,
        ConvexBody::Hyperboloid { n, .. } | ConvexBody::PCone { n, .. } => vec![(-2.0, 2.0); *n],
        ConvexBody::PBall { n, r, .. } => vec![(-r, *r); *n],
        ConvexBody::Cylinder { base, free, n } => {
            let inner = default_bounds(base)?;
            let mut it = inner.into_iter();
            (0..*n).map(|i| if free.binary_search(&i).is_ok() { (-2.0, 2.0) } else { it.next().unwrap_or((-2.0, 2.0)) }).collect()
        }
    })
}

/// Largest body value over the box corners (all corners up to 10
/// coordinates, 1024 fixed pseudo-random corners beyond).
fn max_on_box(body: &ConvexBody, bounds: &[(f64, f64)]) -> Result<f64> {
    let n = bounds.len();
    let corner = |mask: u64, rng: Option<&mut ChaCha8Rng>| -> Vec<f64> {
        match rng {
            Some(r) => bounds.iter().map(|(lo, hi)| if r.gen::<bool>() { *hi } else { *lo }).collect(),
            None => bounds.iter().enumerate().map(|(i, (lo, hi))| if mask >> i & 1 == 1 { *hi } else { *lo }).collect(),
        }
    };
    let mut best = f64::NEG_INFINITY;
    if n <= 10 {
        for mask in 0..(1u64 << n) {
            best = best.max(body.value(&corner(mask, None))?);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1024 {
            let x = corner(0, Some(&mut rng));
            best = best.max(body.value(&x)?);
        }
    }
    Ok(best)
}

/// Interior point used to push level-set samples onto the boundary.
fn center(body: &ConvexBody) -> Vec<f64> {
    match body {
        ConvexBody::Ellipsoid { c, .. } | ConvexBody::Paraboloid { c, .. } | ConvexBody::Cone { c, .. } => c.clone(),
        ConvexBody::Cylinder { n, free, base } => {
            let inner = center(base);
            let mut it = inner.into_iter();
            (0..*n).map(|i| if free.binary_search(&i).is_ok() { 0.0 } else { it.next().unwrap_or(0.0) }).collect()
        }
        _ => vec![0.0; body.n()],
    }
}

/// Moves `x` outward from `center` until just inside the boundary.
fn push_to_boundary(body: &ConvexBody, center: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    let at = |s: f64| -> Vec<f64> { center.iter().zip(x).map(|(c, v)| c + s * (v - c)).collect() };
    let (mut inside, mut outside) = (1.0, 2.0);
    while eval_body(body, &at(outside))? <= 0.0 {
        inside = outside;
        outside *= 2.0;
        if outside > 1e6 {
            return Ok(x.to_vec());
        }
    }
    for _ in 0..60 {
        let mid = 0.5 * (inside + outside);
        if eval_body(body, &at(mid))? <= 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(at(inside))
}

/// Rejection sample of body points in the box. Every other level-set hit is
/// pushed to the boundary; epigraph `t` is drawn between the body value and
/// `t_cap`, skewed toward the surface, with every fourth point on it.
pub fn sample_body(body: &ConvexBody, cfg: &SampleConfig) -> Result<Vec<Vec<f64>>> {
    cfg.validate()?;
    let n = body.n();
    if cfg.bounds.len() != n {
        return Err(QcutError::DimMismatch { expected: n, got: cfg.bounds.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let centre = center(body);
    let mut out = Vec::with_capacity(cfg.count);
    for _ in 0..cfg.count * ATTEMPTS_PER_SAMPLE {
        if out.len() == cfg.count {
            break;
        }
        let x: Vec<f64> =
            cfg.bounds.iter().map(|(lo, hi)| if lo == hi { *lo } else { rng.gen_range(*lo..*hi) }).collect();
        let u: f64 = rng.gen();
        if body.is_epigraph() {
            let cap = cfg.t_cap.ok_or_else(|| QcutError::InvalidInput("epigraph sampling needs t_cap".into()))?;
            let v = body.value(&x)?;
            if v > cap {
                continue;
            }
            let t = if out.len() % 4 == 0 { v } else { v + (cap - v) * u * u };
            let mut p = x;
            p.push(t);
            out.push(p);
        } else {
            if eval_body(body, &x)? > 0.0 {
                continue;
            }
            let p = if out.len() % 2 == 1 { push_to_boundary(body, &centre, &x)? } else { x };
            out.push(p);
        }
    }
    if out.is_empty() {
        return Err(QcutError::EmptySample);
    }
    Ok(out)
}
