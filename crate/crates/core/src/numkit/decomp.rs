use alloc::vec::Vec;

use super::matrix::Matrix;
use super::tolerance::Tolerance;
use super::vector::{self, Vector};
use crate::error::{Error, Result};

fn require_square(m: &Matrix, op: &'static str) -> Result<usize> {
    if m.is_square() {
        Ok(m.rows())
    } else {
        Err(Error::Dimension {
            op,
            expected: m.rows(),
            found: m.cols(),
        })
    }
}

/// In-place LU with partial pivoting. Returns the permutation sign, or
/// `None` when an exactly zero pivot column is met.
fn lu_in_place(a: &mut Matrix, perm: &mut [usize]) -> Option<f64> {
    let n = a.rows();
    let mut sign = 1.0;
    for col in 0..n {
        let mut piv = col;
        let mut best = a[(col, col)].abs();
        for r in col + 1..n {
            let v = a[(r, col)].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return None;
        }
        if piv != col {
            for j in 0..n {
                let t = a[(col, j)];
                a[(col, j)] = a[(piv, j)];
                a[(piv, j)] = t;
            }
            perm.swap(col, piv);
            sign = -sign;
        }
        let p = a[(col, col)];
        for r in col + 1..n {
            let f = a[(r, col)] / p;
            a[(r, col)] = f;
            if f != 0.0 {
                for j in col + 1..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
            }
        }
    }
    Some(sign)
}

/// Determinant by LU factorization with partial pivoting.
pub fn determinant(m: &Matrix) -> Result<f64> {
    let n = require_square(m, "determinant")?;
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    Ok(match lu_in_place(&mut a, &mut perm) {
        None => 0.0,
        Some(sign) => (0..n).fold(sign, |d, i| d * a[(i, i)]),
    })
}

/// Inverse of a square matrix. Pivots below `1e-14 · max|entry|` are
/// treated as singular.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = require_square(m, "inverse")?;
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    lu_in_place(&mut a, &mut perm).ok_or(Error::Singular)?;
    let floor = 1e-14 * m.max_abs();
    if (0..n).any(|i| a[(i, i)].abs() <= floor) {
        return Err(Error::Singular);
    }
    let mut inv = Matrix::zeros(n, n);
    for col in 0..n {
        // Solve L U x = P e_col.
        let mut x: Vector = perm.iter().map(|&p| if p == col { 1.0 } else { 0.0 }).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= a[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= a[(i, j)] * x[j];
            }
            x[i] /= a[(i, i)];
        }
        for i in 0..n {
            inv[(i, col)] = x[i];
        }
    }
    Ok(inv)
}

/// Numerical rank by Gaussian elimination with complete pivoting.
///
/// A pivot counts when `|pivot| > tol.abs + tol.rel * max|m|`, the
/// threshold being fixed from the initial entries.
pub fn rank(m: &Matrix, tol: &Tolerance) -> usize {
    let threshold = tol.bound(m.max_abs());
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    while r < rows.min(cols) {
        let (mut pi, mut pj, mut best) = (r, r, -1.0);
        for i in r..rows {
            for j in r..cols {
                let v = a[(i, j)].abs();
                if v > best {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if best <= threshold {
            break;
        }
        for j in 0..cols {
            let t = a[(r, j)];
            a[(r, j)] = a[(pi, j)];
            a[(pi, j)] = t;
        }
        for i in 0..rows {
            let t = a[(i, r)];
            a[(i, r)] = a[(i, pj)];
            a[(i, pj)] = t;
        }
        let p = a[(r, r)];
        for i in r + 1..rows {
            let f = a[(i, r)] / p;
            for j in r..cols {
                let v = a[(r, j)];
                a[(i, j)] -= f * v;
            }
        }
        r += 1;
    }
    r
}

/// Greedy maximal independent column set, scanning columns in index order.
pub fn independent_columns(m: &Matrix, tol: &Tolerance) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for j in 0..m.cols() {
        chosen.push(j);
        if rank(&m.select_columns(&chosen), tol) < chosen.len() {
            chosen.pop();
        }
    }
    chosen
}

/// Householder reflections for the columns of `m`; returns the full
/// orthogonal factor (`rows × rows`) and the reduced matrix.
fn householder(m: &Matrix) -> (Matrix, Matrix) {
    let (n, k) = (m.rows(), m.cols());
    let mut r = m.clone();
    let mut reflectors: Vec<Option<Vector>> = Vec::new();
    for j in 0..k.min(n) {
        let x: Vector = (j..n).map(|i| r[(i, j)]).collect();
        let nx = vector::norm(&x);
        if nx == 0.0 {
            reflectors.push(None);
            continue;
        }
        let alpha = if x[0] > 0.0 { -nx } else { nx };
        let mut v = x;
        v[0] -= alpha;
        let nv = vector::norm(&v);
        if nv == 0.0 {
            reflectors.push(None);
            continue;
        }
        for e in v.iter_mut() {
            *e /= nv;
        }
        for c in j..k {
            let s: f64 = (j..n).map(|i| v[i - j] * r[(i, c)]).sum();
            for i in j..n {
                r[(i, c)] -= 2.0 * v[i - j] * s;
            }
        }
        for i in j + 1..n {
            r[(i, j)] = 0.0;
        }
        reflectors.push(Some(v));
    }
    let mut q = Matrix::identity(n);
    for (j, v) in reflectors.iter().enumerate().rev() {
        let Some(v) = v else { continue };
        for c in 0..n {
            let s: f64 = (j..n).map(|i| v[i - j] * q[(i, c)]).sum();
            for i in j..n {
                q[(i, c)] -= 2.0 * v[i - j] * s;
            }
        }
    }
    (q, r)
}

/// Thin QR factorization `m = Q R` of an `n × k` matrix with independent
/// columns: `Q` is `n × k` with orthonormal columns and `R` is `k × k` upper
/// triangular with a strictly positive diagonal, which makes the pair unique.
pub fn qr_decompose(m: &Matrix, tol: &Tolerance) -> Result<(Matrix, Matrix)> {
    let (n, k) = (m.rows(), m.cols());
    if k > n {
        return Err(Error::Degenerate {
            required: k,
            rank: rank(m, tol),
        });
    }
    let (qf, rf) = householder(m);
    let threshold = tol.bound(m.max_abs());
    let mut q = Matrix::zeros(n, k);
    let mut r = Matrix::zeros(k, k);
    for j in 0..k {
        let d = rf[(j, j)];
        if d.abs() <= threshold {
            return Err(Error::Degenerate {
                required: k,
                rank: rank(m, tol),
            });
        }
        let s = if d < 0.0 { -1.0 } else { 1.0 };
        for c in j..k {
            r[(j, c)] = s * rf[(j, c)];
        }
        for i in 0..n {
            q[(i, j)] = s * qf[(i, j)];
        }
    }
    Ok((q, r))
}

/// Orthonormal basis of the orthogonal complement of the span of `basis`
/// (given as columns of equal length `n`, assumed independent).
pub fn orthonormal_complement(n: usize, basis: &[Vector]) -> Vec<Vector> {
    if basis.is_empty() {
        return Matrix::identity(n).columns();
    }
    let m = Matrix::from_columns(basis).expect("basis columns share one length");
    let (q, _) = householder(&m);
    (basis.len()..n).map(|j| q.column(j)).collect()
}
