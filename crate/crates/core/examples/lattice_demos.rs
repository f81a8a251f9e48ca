//! Lower bounds for closest and shortest vector problems.

use qcut::cli::{demo_cvp, demo_svp};
use qcut::linalg::Mat;

fn main() -> qcut::error::Result<()> {
    let b = Mat::from_rows(vec![vec![1.0, 0.4], vec![0.0, 1.3]])?;
    let cvp = demo_cvp(&b, &[0.3, 0.6])?;
    for s in &cvp.splits {
        println!("x{} in {:?}: bound {:.6}", s.coordinate, s.interval, s.bound);
    }
    println!("all splits: {:.6}, exact: {:?}", cvp.combined_bound, cvp.enumerated_value);
    let svp = demo_svp(&b, 1.0)?;
    println!("svp: splits give {:.3}, intersection cut gives {:.6}", svp.split_bound, svp.intersection_bound);
    Ok(())
}
