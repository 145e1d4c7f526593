//! Generalized cross products and `(n-1)`-st compound matrices.
//!
//! `compound(m)[(i, j)]` is the minor of `m` with row `i` and column `j`
//! deleted. The signed variant multiplies entry `(i, j)` by
//! `(-1)^(n+i+j)` (1-based indices), so it equals `(-1)^n` times the cofactor
//! matrix, and its column `j` is `(-1)^(n+j+1)` times the cross product of the
//! remaining columns. For odd `n` that sign is `(-1)^j`.

use super::decomp::determinant;
use super::matrix::Matrix;
use super::vector::Vector;
use crate::error::{Error, Result};

fn minor(m: &Matrix, skip_row: usize, skip_col: usize) -> f64 {
    let n = m.rows();
    if n == 1 {
        return 1.0;
    }
    let mut sub = Matrix::zeros(n - 1, n - 1);
    for (ii, i) in (0..n).filter(|&i| i != skip_row).enumerate() {
        for (jj, j) in (0..m.cols()).filter(|&j| j != skip_col).enumerate() {
            sub[(ii, jj)] = m[(i, j)];
        }
    }
    determinant(&sub).expect("square minor")
}

/// Generalized cross product of `n - 1` vectors in `R^n`.
///
/// Component `i` (1-based) is `(-1)^(i+1)` times the minor obtained by
/// deleting row `i` from the `n × (n-1)` matrix of the inputs. The result is
/// orthogonal to every input and its norm is the `(n-1)`-volume of the
/// parallelotope they span.
pub fn cross_product<V: AsRef<[f64]>>(vs: &[V]) -> Result<Vector> {
    let n = vs.len() + 1;
    if n < 2 {
        return Err(Error::Dimension {
            op: "cross product arity",
            expected: 1,
            found: 0,
        });
    }
    let mut m = Matrix::zeros(n, n - 1);
    for (j, v) in vs.iter().enumerate() {
        let v = v.as_ref();
        if v.len() != n {
            return Err(Error::Dimension {
                op: "cross product operand",
                expected: n,
                found: v.len(),
            });
        }
        for (i, x) in v.iter().enumerate() {
            m[(i, j)] = *x;
        }
    }
    Ok((0..n)
        .map(|i| {
            let mut sub = Matrix::zeros(n - 1, n - 1);
            for (ii, r) in (0..n).filter(|&r| r != i).enumerate() {
                for j in 0..n - 1 {
                    sub[(ii, j)] = m[(r, j)];
                }
            }
            let d = if n == 1 { 1.0 } else { determinant(&sub).expect("square") };
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect())
}

fn require_square(m: &Matrix) -> Result<usize> {
    if m.is_square() {
        Ok(m.rows())
    } else {
        Err(Error::Dimension {
            op: "compound",
            expected: m.rows(),
            found: m.cols(),
        })
    }
}

/// The `(n-1)`-st compound: entry `(i, j)` is the minor deleting row `i`
/// and column `j`.
pub fn compound(m: &Matrix) -> Result<Matrix> {
    let n = require_square(m)?;
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = minor(m, i, j);
        }
    }
    Ok(out)
}

/// The compound with entry `(i, j)` multiplied by `(-1)^(n+i+j)`.
pub fn signed_compound(m: &Matrix) -> Result<Matrix> {
    let n = require_square(m)?;
    let mut out = compound(m)?;
    for i in 0..n {
        for j in 0..n {
            // 1-based i + j has the same parity as 0-based i + j.
            if (n + i + j) % 2 == 1 {
                out[(i, j)] = -out[(i, j)];
            }
        }
    }
    Ok(out)
}
