//! Small dense real linear algebra.
//!
//! Vectors are plain `[f64]` slices / `Vec<f64>`; matrices are the row-major
//! [`Mat`]. Everything here targets desk-scale problems (dimension at most
//! [`MAX_DIM`]), so the algorithms favour accuracy and simplicity: cyclic
//! Jacobi for symmetric eigenproblems and Gauss-Jordan elimination with
//! partial pivoting for inverses.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{QcutError, Result};

/// Largest ambient dimension accepted from external input.
pub const MAX_DIM: usize = 64;

/// Sweep budget for [`eig_sym`].
pub const JACOBI_MAX_SWEEPS: usize = 30;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(QcutError::DimMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    /// `u vᵀ`.
    pub fn outer(u: &[f64], v: &[f64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(QcutError::DimMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `self · x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(QcutError::DimMismatch { expected: self.cols, got: x.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// `selfᵀ · y`.
    pub fn tr_matvec(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.rows {
            return Err(QcutError::DimMismatch { expected: self.rows, got: y.len() });
        }
        let mut out = vec![0.0; self.cols];
        for (i, yi) in y.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a * yi;
            }
        }
        Ok(out)
    }

    /// `xᵀ · self · x` for square `self`.
    pub fn quad_form(&self, x: &[f64]) -> Result<f64> {
        Ok(dot(x, &self.matvec(x)?))
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(f64, f64) -> f64) -> Result<Mat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(QcutError::DimMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.rows.min(self.cols) {
            for j in (i + 1)..self.cols.min(self.rows) {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl TryFrom<Vec<Vec<f64>>> for Mat {
    type Error = QcutError;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Mat::from_rows(rows)
    }
}

impl From<Mat> for Vec<Vec<f64>> {
    fn from(m: Mat) -> Self {
        m.to_rows()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub fn norm2_sq(x: &[f64]) -> f64 {
    dot(x, x)
}

/// `(Σ |xᵢ|ᵖ)^(1/p)`; `p = 1` and `p = 2` take exact fast paths.
pub fn norm_p(x: &[f64], p: u32) -> f64 {
    match p {
        1 => x.iter().map(|v| v.abs()).sum(),
        2 => norm2(x),
        _ => {
            // scale by the max entry to avoid overflow in |x|^p
            let m = norm_inf(x);
            if m == 0.0 {
                return 0.0;
            }
            let pf = f64::from(p);
            m * x.iter().map(|v| (v.abs() / m).powf(pf)).sum::<f64>().powf(1.0 / pf)
        }
    }
}

pub fn norm_inf(x: &[f64]) -> f64 {
    x.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s·b`.
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn unit(n: usize, k: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[k] = 1.0;
    e
}

fn check_projection_args(v: &[f64], x: &[f64]) -> Result<f64> {
    if v.len() != x.len() {
        return Err(QcutError::DimMismatch { expected: v.len(), got: x.len() });
    }
    let vv = norm2_sq(v);
    if vv == 0.0 {
        return Err(QcutError::ZeroVector);
    }
    Ok(vv)
}

/// Projection of `x` onto `span{v}`: `(vᵀx / ‖v‖²) v`.
pub fn project_par(v: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    let vv = check_projection_args(v, x)?;
    Ok(scale(v, dot(v, x) / vv))
}

/// Projection of `x` onto the orthogonal complement of `v`.
pub fn project_perp(v: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    let par = project_par(v, x)?;
    Ok(sub(x, &par))
}

/// Matrix of `x ↦ project_par(v, x)`.
pub fn par_matrix(v: &[f64]) -> Result<Mat> {
    let vv = norm2_sq(v);
    if vv == 0.0 {
        return Err(QcutError::ZeroVector);
    }
    Ok(Mat::outer(v, v).scale(1.0 / vv))
}

/// Matrix of `x ↦ project_perp(v, x)`.
pub fn perp_matrix(v: &[f64]) -> Result<Mat> {
    Mat::identity(v.len()).sub(&par_matrix(v)?)
}

/// `m + s·u vᵀ`.
pub fn outer_sum(m: &Mat, s: f64, u: &[f64], v: &[f64]) -> Mat {
    let mut out = m.clone();
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            out[(i, j)] += s * ui * vj;
        }
    }
    out
}

/// Symmetric eigendecomposition.
///
/// Values are returned in ascending order and the columns of the second
/// component are the matching orthonormal eigenvectors, so the last index
/// carries the largest eigenvalue.
pub fn eig_sym(m: &Mat) -> Result<(Vec<f64>, Mat)> {
    if !m.is_square() {
        return Err(QcutError::DimMismatch { expected: m.rows(), got: m.cols() });
    }
    let n = m.rows();
    let scale = m.frobenius_norm();
    let asym = m.asymmetry();
    if asym > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(QcutError::NotSymmetric { asymmetry: asym });
    }
    let mut a = m.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let mut v = Mat::identity(n);
    let threshold = 1e-12 * scale;
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(QcutError::NoConvergence { sweeps: JACOBI_MAX_SWEEPS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Mat::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new_j)] = v[(i, old_j)];
        }
    }
    Ok((values, vectors))
}

fn off_diagonal_norm(a: &Mat) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

// A <- Jᵀ A J, V <- V J with J the (p, q) plane rotation [[c, s], [-s, c]].
fn rotate(a: &mut Mat, v: &mut Mat, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(m: &Mat) -> Result<f64> {
    if m.rows() == 0 {
        return Ok(0.0);
    }
    Ok(eig_sym(m)?.0[0])
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse(b: &Mat) -> Result<Mat> {
    if !b.is_square() {
        return Err(QcutError::DimMismatch { expected: b.rows(), got: b.cols() });
    }
    let n = b.rows();
    let tol = 1e-12 * b.max_abs();
    let mut a = b.clone();
    let mut inv = Mat::identity(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
            .unwrap_or(col);
        let pivot = a[(pivot_row, col)];
        if pivot.abs() <= tol || pivot == 0.0 {
            return Err(QcutError::Singular { column: col, pivot });
        }
        if pivot_row != col {
            for j in 0..n {
                a.data.swap(pivot_row * n + j, col * n + j);
                inv.data.swap(pivot_row * n + j, col * n + j);
            }
        }
        let inv_pivot = 1.0 / pivot;
        for j in 0..n {
            a[(col, j)] *= inv_pivot;
            inv[(col, j)] *= inv_pivot;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let factor = a[(i, col)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                a[(i, j)] -= factor * a[(col, j)];
                inv[(i, j)] -= factor * inv[(col, j)];
            }
        }
    }
    Ok(inv)
}
