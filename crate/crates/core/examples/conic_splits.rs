//! Simple splits on paraboloids, cones and p-order cones, in each regime
//! of the split interval.

use qcut::linalg::Mat;
use qcut::splitcuts::{split_cut_cone_simple, split_cut_p_cone, split_cut_paraboloid_simple};

fn main() -> qcut::error::Result<()> {
    let b = Mat::from_rows(vec![vec![2.0, 0.5], vec![0.0, 1.0]])?;
    let c = vec![0.3, -0.1];
    let pi = vec![1.0, 1.0];
    for (lo, hi) in [(-1.0, 1.0), (0.2, 0.8), (-3.0, -2.0)] {
        let (_, case) = split_cut_paraboloid_simple(&b, &c, &pi, lo, hi)?;
        println!("paraboloid [{lo}, {hi}]: {}", case.name());
        let (_, case) = split_cut_cone_simple(&b, &c, &pi, lo, hi)?;
        println!("cone       [{lo}, {hi}]: {}", case.name());
    }
    for p in [1, 2, 3] {
        let (cut, case) = split_cut_p_cone(3, 1, p, -0.5, 1.5)?;
        println!("p = {p}: {} {}", case.name(), serde_json::to_string(&cut).unwrap());
    }
    Ok(())
}
