//! Split cut for the disk of radius 2 and the split 0 ≤ z ≤ 1.

use qcut::linalg::Mat;
use qcut::model::{eval_cut, ConvexBody, SplitDisjunction};
use qcut::splitcuts::split_cut;

fn main() -> qcut::error::Result<()> {
    let body = ConvexBody::ellipsoid(Mat::identity(2), vec![0.0, 0.0], 2.0)?;
    let split = SplitDisjunction::new(vec![1.0, 0.0], 0.0, 1.0)?;
    let (cut, case) = split_cut(&body, &split)?;
    println!("case: {}", case.name());
    println!("{}", serde_json::to_string_pretty(&cut).unwrap());
    // (0.5, 1.9) is in the disk and in the strip, but not in the hull
    for p in [[0.5, 1.9], [0.5, 1.0], [1.0, 3f64.sqrt()]] {
        println!("{p:?}: cut value {:+.6}", eval_cut(&cut, &p)?);
    }
    Ok(())
}
