//! Aggregated cut for F = z² + 2y² ≤ t against G = 1 − (z − 1)² − y² ≥ t,
//! and the convexity threshold of F + λ(G − F).

use qcut::interscuts::{aggregate_epigraph, max_convex_lambda, AggregationForm, Piece, QuadForm};
use qcut::linalg::Mat;

fn main() -> qcut::error::Result<()> {
    let form = AggregationForm {
        directions: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        pieces: vec![Piece::Quadratic(2.0), Piece::Quadratic(1.0)],
        weights: vec![0.5, 1.0],
        m: vec![0.0, 0.0],
        l: vec![-2.0, 0.0],
        r: 0.0,
        q: 0.0,
        gamma: 1.0,
    };
    let agg = aggregate_epigraph(&form)?;
    println!("{}", serde_json::to_string_pretty(&agg.to_cut()).unwrap());
    for p in [[0.5, 0.0, 0.2], [0.5, 0.0, 1.0]] {
        println!("{p:?}: {:+.4}", agg.eval(&p)?);
    }
    let f = QuadForm::new(Mat::diag(&[1.0, 2.0]), vec![0.0; 2], 0.0, 1.0)?;
    let g = QuadForm::new(Mat::diag(&[-1.0, -1.0]), vec![2.0, 0.0], 0.0, 1.0)?;
    println!("largest convex λ: {:.6}", max_convex_lambda(&f, &g)?);
    Ok(())
}
