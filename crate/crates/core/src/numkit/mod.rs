//! Dense real linear algebra used by every other module.
//!
//! Matrices are small and dense. All summations run in a fixed index order so
//! repeated runs produce bit-identical results.

mod decomp;
mod exterior;
mod matrix;
mod tolerance;
pub mod vector;

pub use decomp::{
    determinant, independent_columns, inverse, orthonormal_complement, qr_decompose, rank,
};
pub use exterior::{compound, cross_product, signed_compound};
pub use matrix::Matrix;
pub use tolerance::Tolerance;
pub use vector::Vector;

/// `mᵀm`, the shape matrix of the zonotope defined by `m`.
pub fn gram(m: &Matrix) -> Matrix {
    let k = m.cols();
    let mut g = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let mut s = 0.0;
            for r in 0..m.rows() {
                s += m[(r, i)] * m[(r, j)];
            }
            g[(i, j)] = s;
            g[(j, i)] = s;
        }
    }
    g
}
