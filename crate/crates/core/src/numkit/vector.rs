//! Plain `Vec<f64>` vectors and the handful of operations the crate needs.

use alloc::vec::Vec;

/// A real column vector.
pub type Vector = Vec<f64>;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

pub fn add(a: &[f64], b: &[f64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vector {
    a.iter().map(|x| x * s).collect()
}

/// `acc += s * x`
pub fn axpy(acc: &mut [f64], s: f64, x: &[f64]) {
    for (a, v) in acc.iter_mut().zip(x) {
        *a += s * v;
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Sum of the given vectors in index order; `dim` fixes the length when the
/// list is empty.
pub fn sum<'a, I>(dim: usize, vs: I) -> Vector
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let mut acc = alloc::vec![0.0; dim];
    for v in vs {
        axpy(&mut acc, 1.0, v);
    }
    acc
}
