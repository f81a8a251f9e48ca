use crate::error::{QcutError, Result};
use crate::linalg::{dot, sub, Mat};
use crate::model::Cut;

/// Rewrites a cut stated in `x̃ = B(x − c)` in terms of `x`.
pub fn lift_affine(cut: &Cut, b: &Mat, c: &[f64]) -> Result<Cut> {
    if !b.is_square() || b.rows() != c.len() {
        return Err(QcutError::DimMismatch { expected: c.len(), got: b.rows() });
    }
    if let Some(n) = cut.n() {
        if n != c.len() {
            return Err(QcutError::DimMismatch { expected: n, got: c.len() });
        }
    }
    let bc = b.matvec(c)?;
    Ok(match cut {
        Cut::Norm { matrix, offset, p, slope, t_coef, constant } => {
            let mb = matrix.matmul(b)?;
            let mbc = mb.matvec(c)?;
            Cut::Norm {
                offset: sub(offset, &mbc),
                matrix: mb,
                p: *p,
                slope: b.tr_matvec(slope)?,
                t_coef: *t_coef,
                constant: constant - dot(slope, &bc),
            }
        }
        Cut::Quadratic { quad, lin, constant, t_coef } => {
            let e = b.transpose().matmul(quad)?.matmul(b)?;
            let ec = e.matvec(c)?;
            let lin_x: Vec<f64> = b.tr_matvec(lin)?.iter().zip(&ec).map(|(l, v)| l - 2.0 * v).collect();
            Cut::Quadratic {
                constant: dot(c, &ec) - dot(lin, &bc) + constant,
                quad: e,
                lin: lin_x,
                t_coef: *t_coef,
            }
        }
        Cut::Linear { coef, t_coef, rhs, sense } => Cut::Linear {
            coef: b.tr_matvec(coef)?,
            t_coef: *t_coef,
            rhs: rhs + dot(coef, &bc),
            sense: *sense,
        },
        Cut::NoCut => Cut::NoCut,
        Cut::EmptyHull => Cut::EmptyHull,
    })
}

/// Extends a cut on the kept coordinates of a cylinder to all `n`
/// coordinates, leaving the free ones unconstrained.
pub fn embed_cut(cut: &Cut, n: usize, kept: &[usize]) -> Result<Cut> {
    if let Some(m) = cut.n() {
        if m != kept.len() {
            return Err(QcutError::DimMismatch { expected: kept.len(), got: m });
        }
    }
    let spread = |v: &[f64]| {
        let mut out = vec![0.0; n];
        for (j, &i) in kept.iter().enumerate() {
            out[i] = v[j];
        }
        out
    };
    Ok(match cut {
        Cut::Norm { matrix, offset, p, slope, t_coef, constant } => {
            let mut big = Mat::zeros(matrix.rows(), n);
            for r in 0..matrix.rows() {
                for (j, &i) in kept.iter().enumerate() {
                    big[(r, i)] = matrix[(r, j)];
                }
            }
            Cut::Norm {
                matrix: big,
                offset: offset.clone(),
                p: *p,
                slope: spread(slope),
                t_coef: *t_coef,
                constant: *constant,
            }
        }
        Cut::Quadratic { quad, lin, constant, t_coef } => {
            let mut big = Mat::zeros(n, n);
            for (a, &i) in kept.iter().enumerate() {
                for (b, &j) in kept.iter().enumerate() {
                    big[(i, j)] = quad[(a, b)];
                }
            }
            Cut::Quadratic { quad: big, lin: spread(lin), constant: *constant, t_coef: *t_coef }
        }
        Cut::Linear { coef, t_coef, rhs, sense } => {
            Cut::Linear { coef: spread(coef), t_coef: *t_coef, rhs: *rhs, sense: *sense }
        }
        Cut::NoCut => Cut::NoCut,
        Cut::EmptyHull => Cut::EmptyHull,
    })
}
