//! Sampling-based validity checks and a planar hull oracle.

mod hull;
mod oracle;
mod sample;

pub use hull::ConvexPolygon;
pub use oracle::{
    compare_to_oracle, compare_with, default_region, hull_oracle_2d, hull_oracle_2d_in, GridRegion, HullOracle,
    OracleReport,
};
pub use sample::{default_bounds, sample_body, SampleConfig};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{eval_cut, ConvexBody, Cut, Forbidden};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Samples outside the open forbidden region.
    pub checked: usize,
    /// Largest positive cut defect (0 when none).
    pub max_violation: f64,
    pub worst_point: Option<Vec<f64>>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks that every sampled body point outside the forbidden interior
/// satisfies the cut within `tol`.
pub fn check_validity(body: &ConvexBody, forbidden: &Forbidden, cut: &Cut, cfg: &SampleConfig, tol: f64) -> Result<VerifyReport> {
    check_validity_with(body, forbidden, |p| eval_cut(cut, p), cfg, tol)
}

/// [`check_validity`] for a cut given as a defect evaluator.
pub fn check_validity_with(
    body: &ConvexBody,
    forbidden: &Forbidden,
    cut: impl Fn(&[f64]) -> Result<f64>,
    cfg: &SampleConfig,
    tol: f64,
) -> Result<VerifyReport> {
    let points = sample_body(body, cfg)?;
    let mut checked = 0;
    let mut max_violation = 0.0;
    let mut worst_point = None;
    for p in points {
        if forbidden.defect(&p)? > 0.0 {
            continue;
        }
        checked += 1;
        let v = cut(&p)?;
        if v > max_violation {
            max_violation = v;
            worst_point = Some(p);
        }
    }
    Ok(VerifyReport { checked, max_violation, worst_point, tolerance: tol, pass: max_violation <= tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::model::SplitDisjunction;
    use crate::splitcuts::split_cut;

    #[test]
    fn disk_cut_validity() {
        let body = ConvexBody::ellipsoid(Mat::identity(2), vec![0.0; 2], 2.0).unwrap();
        let split = SplitDisjunction::new(vec![1.0, 0.0], 0.0, 1.0).unwrap();
        let (cut, _) = split_cut(&body, &split).unwrap();
        let cfg = SampleConfig::for_body(&body, 3, 2000).unwrap();
        let forb = Forbidden::Split(split);
        let report = check_validity(&body, &forb, &cut, &cfg, 1e-9).unwrap();
        assert!(report.pass && report.checked > 1000, "{report:?}");

        let Cut::Norm { matrix, offset, p, slope, t_coef, constant } = cut else { panic!() };
        let wrong = Cut::Norm { matrix, offset, p, slope, t_coef, constant: constant - 0.1 };
        let report = check_validity(&body, &forb, &wrong, &cfg, 1e-9).unwrap();
        assert!(!report.pass && report.max_violation > 0.05);

        let report = check_validity(&body, &forb, &Cut::NoCut, &cfg, 1e-9).unwrap();
        assert!(report.pass);
        assert_eq!(report, check_validity(&body, &forb, &Cut::NoCut, &cfg, 1e-9).unwrap());
    }
}
