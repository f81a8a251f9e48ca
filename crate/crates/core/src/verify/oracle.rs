//! Brute-force hull of a 2D feasible region on a grid, for cross-checking
//! closed-form cuts.

use serde::{Deserialize, Serialize};

use crate::error::{QcutError, Result};
use crate::model::{eval_body, eval_cut, ConvexBody, Cut, Forbidden};

use super::hull::ConvexPolygon;
use super::sample::{default_bounds, SampleConfig};

/// Axis-aligned rectangle `[lo₀, hi₀] × [lo₁, hi₁]` in point coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridRegion {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

/// Slightly enlarged circumscribing box for 2D level sets; for `n = 1`
/// epigraphs the default sampling box in `x` and `t` up to its cap.
pub fn default_region(body: &ConvexBody) -> Result<GridRegion> {
    if body.point_dim() != 2 {
        return Err(QcutError::DimUnsupported(body.point_dim()));
    }
    let bounds = default_bounds(body)?;
    if body.is_epigraph() {
        let cfg = SampleConfig::for_body(body, 0, 1)?;
        let (lo, hi) = bounds[0];
        let t_min = (0..=200)
            .map(|i| body.value(&[lo + (hi - lo) * f64::from(i) / 200.0]))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let t_cap = cfg.t_cap.unwrap_or(t_min + 1.0);
        let pad = 0.05 * (t_cap - t_min);
        Ok(GridRegion { lo: [lo, t_min - pad], hi: [hi, t_cap] })
    } else {
        let pad = |(lo, hi): (f64, f64)| 0.05 * (hi - lo);
        let (p0, p1) = (pad(bounds[0]), pad(bounds[1]));
        Ok(GridRegion { lo: [bounds[0].0 - p0, bounds[1].0 - p1], hi: [bounds[0].1 + p0, bounds[1].1 + p1] })
    }
}

/// Membership predicate for the hull of grid points of the body lying
/// outside the open forbidden region. The polygon is kept in grid-index
/// coordinates so distances are measured in cells.
#[derive(Clone, Debug)]
pub struct HullOracle {
    pub region: GridRegion,
    pub grid: usize,
    pub polygon: ConvexPolygon,
}

impl HullOracle {
    fn step(&self, axis: usize) -> f64 {
        (self.region.hi[axis] - self.region.lo[axis]) / (self.grid - 1) as f64
    }

    pub fn to_index(&self, p: &[f64]) -> [f64; 2] {
        [(p[0] - self.region.lo[0]) / self.step(0), (p[1] - self.region.lo[1]) / self.step(1)]
    }

    pub fn point(&self, i: usize, j: usize) -> [f64; 2] {
        [self.region.lo[0] + i as f64 * self.step(0), self.region.lo[1] + j as f64 * self.step(1)]
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.polygon.contains(self.to_index(p))
    }

    /// Distance to the hull boundary in grid cells.
    pub fn boundary_cells(&self, p: &[f64]) -> f64 {
        self.polygon.boundary_distance(self.to_index(p))
    }

    /// Polygon vertices in point coordinates.
    pub fn vertices(&self) -> Vec<[f64; 2]> {
        self.polygon
            .vertices
            .iter()
            .map(|v| [self.region.lo[0] + v[0] * self.step(0), self.region.lo[1] + v[1] * self.step(1)])
            .collect()
    }
}

pub fn hull_oracle_2d(body: &ConvexBody, forbidden: &Forbidden, grid: usize) -> Result<HullOracle> {
    hull_oracle_2d_in(body, forbidden, grid, default_region(body)?)
}

pub fn hull_oracle_2d_in(body: &ConvexBody, forbidden: &Forbidden, grid: usize, region: GridRegion) -> Result<HullOracle> {
    if body.point_dim() != 2 {
        return Err(QcutError::DimUnsupported(body.point_dim()));
    }
    if grid < 2 {
        return Err(QcutError::InvalidInput("grid must have at least 2 points per axis".into()));
    }
    let mut oracle = HullOracle { region, grid, polygon: ConvexPolygon::default() };
    let mut kept = Vec::new();
    for i in 0..grid {
        for j in 0..grid {
            let p = oracle.point(i, j);
            if eval_body(body, &p)? <= 0.0 && forbidden.defect(&p)? <= 0.0 {
                kept.push([i as f64, j as f64]);
            }
        }
    }
    oracle.polygon = ConvexPolygon::hull(&kept);
    Ok(oracle)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub compared: usize,
    pub excluded: usize,
    /// Points the cut keeps but the oracle hull excludes.
    pub too_big: usize,
    /// Points in the oracle hull that the cut removes.
    pub too_tight: usize,
}

impl OracleReport {
    pub fn mismatches(&self) -> usize {
        self.too_big + self.too_tight
    }
}

pub fn compare_to_oracle(body: &ConvexBody, forbidden: &Forbidden, cut: &Cut, grid: usize, band: f64) -> Result<OracleReport> {
    compare_with(body, forbidden, |p| Ok(eval_cut(cut, p)? <= 0.0), grid, band, default_region(body)?)
}

/// Region the hull is built on. Epigraph hulls depend on body points
/// outside the compared window, so the window is widened threefold in `x`
/// and fourfold in `t`.
fn hull_region(body: &ConvexBody, window: GridRegion) -> GridRegion {
    if !body.is_epigraph() {
        return window;
    }
    let (mid, half) = (0.5 * (window.lo[0] + window.hi[0]), 1.5 * (window.hi[0] - window.lo[0]));
    let top = window.lo[1] + 4.0 * (window.hi[1] - window.lo[1]);
    GridRegion { lo: [mid - half, window.lo[1]], hi: [mid + half, top] }
}

/// Grid comparison of `body ∩ cut` against the oracle hull. Points within
/// `band` cells of either boundary are skipped; for epigraphs only the
/// lower half of the `t` range is compared, and the hull is built on a
/// larger region at twice the resolution with `band` counted in its cells.
pub fn compare_with(
    body: &ConvexBody,
    forbidden: &Forbidden,
    in_cut: impl Fn(&[f64]) -> Result<bool>,
    grid: usize,
    band: f64,
    region: GridRegion,
) -> Result<OracleReport> {
    let big = hull_region(body, region);
    let oracle = if big == region {
        hull_oracle_2d_in(body, forbidden, grid, region)?
    } else {
        hull_oracle_2d_in(body, forbidden, 2 * grid, big)?
    };
    let window = HullOracle { region, grid, polygon: ConvexPolygon::default() };
    let mut inside = vec![false; grid * grid];
    for i in 0..grid {
        for j in 0..grid {
            let p = window.point(i, j);
            inside[i * grid + j] = eval_body(body, &p)? <= 0.0 && in_cut(&p)?;
        }
    }
    let rows = if body.is_epigraph() { grid / 2 } else { grid };
    let w = band.ceil() as isize;
    let mut report = OracleReport::default();
    for i in 0..grid {
        for j in 0..rows {
            let p = window.point(i, j);
            let here = inside[i * grid + j];
            let near_cut = (-w..=w).any(|di| {
                (-w..=w).any(|dj| {
                    let (a, b) = (i as isize + di, j as isize + dj);
                    a >= 0 && b >= 0 && (a as usize) < grid && (b as usize) < grid && inside[a as usize * grid + b as usize] != here
                })
            });
            if near_cut || oracle.boundary_cells(&p) <= band {
                report.excluded += 1;
                continue;
            }
            report.compared += 1;
            match (here, oracle.contains(&p)) {
                (true, false) => report.too_big += 1,
                (false, true) => report.too_tight += 1,
                _ => {}
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::model::{Sense, SplitDisjunction};

    fn disk_case() -> (ConvexBody, Forbidden) {
        let body = ConvexBody::ellipsoid(Mat::identity(2), vec![0.0; 2], 2.0).unwrap();
        (body, Forbidden::Split(SplitDisjunction::new(vec![1.0, 0.0], 0.0, 1.0).unwrap()))
    }

    fn disk_cut(b: f64) -> Cut {
        // |y| ≤ (√3 − 2)z + b
        Cut::Norm {
            matrix: Mat::diag(&[0.0, 1.0]),
            offset: vec![0.0, 0.0],
            p: 2,
            slope: vec![3f64.sqrt() - 2.0, 0.0],
            t_coef: 0.0,
            constant: b,
        }
    }

    #[test]
    fn disk_oracle() {
        let (body, forb) = disk_case();
        let oracle = hull_oracle_2d(&body, &forb, 400).unwrap();
        assert!(!oracle.contains(&[0.5, 1.99]));
        assert!(oracle.contains(&[0.5, 1.8]));
        let report = compare_to_oracle(&body, &forb, &disk_cut(2.0), 300, 2.0).unwrap();
        assert_eq!(report.mismatches(), 0, "{report:?}");
        let loose = compare_to_oracle(&body, &forb, &disk_cut(2.2), 300, 2.0).unwrap();
        assert!(loose.too_big > 0 && loose.too_tight == 0);
        let tight = compare_to_oracle(&body, &forb, &disk_cut(1.8), 300, 2.0).unwrap();
        assert!(tight.too_tight > 0);
    }

    #[test]
    fn trivial_forbidden_regions() {
        let (body, _) = disk_case();
        let none = Forbidden::Custom(std::sync::Arc::new(|_: &[f64]| -1.0));
        let oracle = hull_oracle_2d(&body, &none, 100).unwrap();
        assert!(oracle.contains(&[1.3, 1.3]));
        let all = Forbidden::Custom(std::sync::Arc::new(|_: &[f64]| 1.0));
        assert!(hull_oracle_2d(&body, &all, 100).unwrap().polygon.is_empty());
        let cut = Cut::Linear { coef: vec![1.0, 0.0], t_coef: 0.0, rhs: 5.0, sense: Sense::Le };
        assert_eq!(compare_to_oracle(&body, &none, &cut, 100, 2.0).unwrap().mismatches(), 0);
    }

    #[test]
    fn needs_planar_slice() {
        let body = ConvexBody::paraboloid(Mat::identity(2), vec![0.0; 2]).unwrap();
        assert!(matches!(default_region(&body), Err(QcutError::DimUnsupported(3))));
    }
}
