//! Splits that involve the epigraph variable: πᵀx + π̂t.

use qcut::model::CaseLabel;
use qcut::splitcuts::{split_cut_cone_general, split_cut_paraboloid_general};

fn main() -> qcut::error::Result<()> {
    let pi = [1.0, -0.5];
    for (pi_hat, lo, hi) in [(1.0, -0.5, 0.5), (1.0, -2.0, -1.0), (-1.0, 0.5, 2.0), (1.0, 0.5, 2.0), (-0.5, -3.0, 1.0)] {
        let (cut, case) = split_cut_paraboloid_general(&pi, pi_hat, lo, hi)?;
        println!("paraboloid π̂ = {pi_hat:+}, [{lo}, {hi}]: {:<22} {}", case.name(), serde_json::to_string(&cut).unwrap());
    }
    for pi_hat in [0.3, 1.118_033_988_749_895, 2.0, -2.0] {
        let (_, case) = split_cut_cone_general(&pi, pi_hat, -1.0, 1.0)?;
        let tag = if case == CaseLabel::ConeLinearHi || case == CaseLabel::ConeLinearLo { " (one side empty)" } else { "" };
        println!("cone π̂ = {pi_hat:+.4}: {}{tag}", case.name());
    }
    Ok(())
}
