//! Certificates that a point kept by a split cut lies in the hull: two
//! body points on opposite sides of the split whose combination is it.

use qcut::certify::{check_certificate, friends_split};
use qcut::linalg::Mat;
use qcut::model::{ConvexBody, SplitDisjunction};

fn main() -> qcut::error::Result<()> {
    let body = ConvexBody::ellipsoid(Mat::identity(2), vec![0.0, 0.0], 2.0)?;
    let split = SplitDisjunction::new(vec![1.0, 0.0], 0.0, 1.0)?;
    for point in [[0.5, 1.0], [0.25, -1.5], [0.9, 0.0]] {
        let cert = friends_split(&body, &split, &point)?;
        println!(
            "{point:?} = {:.4}·{:?} + {:.4}·{:?}  valid: {}",
            cert.alpha,
            cert.p0,
            1.0 - cert.alpha,
            cert.p1,
            check_certificate(&body, &split, &point, &cert)
        );
    }
    match friends_split(&body, &split, &[0.5, 1.9]) {
        Ok(_) => println!("unexpected certificate"),
        Err(e) => println!("[0.5, 1.9]: {e}"),
    }
    Ok(())
}
