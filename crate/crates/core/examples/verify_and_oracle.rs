//! Sampling check of a cut's validity and a brute-force hull comparison.

use qcut::linalg::Mat;
use qcut::model::{ConvexBody, Cut, Forbidden, SplitDisjunction};
use qcut::splitcuts::split_cut;
use qcut::verify::{check_validity, compare_to_oracle, SampleConfig};

fn main() -> qcut::error::Result<()> {
    let body = ConvexBody::paraboloid(Mat::diag(&[1.5]), vec![0.2])?;
    let split = SplitDisjunction::new(vec![1.0], -0.4, 0.7)?;
    let forbidden = Forbidden::Split(split.clone());
    let (cut, _) = split_cut(&body, &split)?;
    let cfg = SampleConfig::for_body(&body, 1, 5000)?;
    let report = check_validity(&body, &forbidden, &cut, &cfg, 1e-7)?;
    println!("validity: {}", serde_json::to_string(&report).unwrap());
    println!("oracle:   {:?}", compare_to_oracle(&body, &forbidden, &cut, 300, 2.0)?);
    // a cut through the body vertex is invalid
    let bad = Cut::Quadratic { quad: Mat::zeros(1, 1), lin: vec![0.0], constant: 1.0, t_coef: 1.0 };
    let report = check_validity(&body, &forbidden, &bad, &cfg, 1e-7)?;
    println!("t ≥ 1 passes: {} (worst point {:?})", report.pass, report.worst_point);
    Ok(())
}
