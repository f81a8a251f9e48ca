//! Hyperboloid t ≥ √(‖x‖² + l²) and a p-ball, split along a coordinate.

use qcut::model::{eval_cut, ConvexBody, SplitDisjunction};
use qcut::splitcuts::split_cut;

fn main() -> qcut::error::Result<()> {
    let hyp = ConvexBody::hyperboloid(2, 0.5)?;
    for (lo, hi) in [(-1.0, 1.0), (0.25, 1.5)] {
        let split = SplitDisjunction::new(vec![1.0, 0.0], lo, hi)?;
        let (cut, case) = split_cut(&hyp, &split)?;
        let mid = 0.5 * (lo + hi);
        let t = (mid * mid + 0.25f64).sqrt();
        println!("hyperboloid [{lo}, {hi}]: {} ; cut at ({mid}, 0, {t:.4}) = {:+.4}", case.name(), eval_cut(&cut, &[mid, 0.0, t])?);
    }
    let ball = ConvexBody::p_ball(2, 4, 1.0)?;
    let (cut, case) = split_cut(&ball, &SplitDisjunction::new(vec![0.0, 1.0], -0.2, 0.6)?)?;
    println!("4-ball: {} {}", case.name(), serde_json::to_string(&cut).unwrap());
    Ok(())
}
