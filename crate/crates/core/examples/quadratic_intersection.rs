//! Intersection cuts from a quadratic forbidden set and from a concentric
//! ellipsoid shell.

use qcut::interscuts::{concentric_ellipsoid_cut, intersection_cut_quadratic};
use qcut::linalg::Mat;

fn main() -> qcut::error::Result<()> {
    let b = Mat::from_rows(vec![vec![1.0, 0.3], vec![0.0, 0.8]])?;
    let c = vec![0.2, 0.1];
    let a = Mat::diag(&[1.5, 0.5]);
    let cut = intersection_cut_quadratic(&b, &c, &a, &[0.0, 0.0], -1.0, 0.5)?;
    println!("{}", serde_json::to_string_pretty(&cut).unwrap());
    for (r1, r2) in [(4.0, 1.0), (1.0, 4.0)] {
        let (cut, case) = concentric_ellipsoid_cut(&b, &c, r1, r2)?;
        println!("shell r1 = {r1}, r2 = {r2}: {} {}", case.name(), serde_json::to_string(&cut).unwrap());
    }
    Ok(())
}
