//! Zonotopes given by defining matrices.
//!
//! A zonotope `Z(A)` is the image of the unit cube `[0, 1]^k` under an
//! `n × k` matrix `A`, equivalently the Minkowski sum of the segments
//! `[0, a_i]` on the columns of `A`. This crate computes with them directly
//! from the matrix:
//!
//! * [`numkit`]: determinants, numerical rank, generalized cross products,
//!   sign-normalized QR, Gram matrices and `(n-1)`-st compound matrices.
//! * [`zonotope`]: generating faces, bounding and geometric facets, unit
//!   normals, minor-sum volumes, zones, vertices and facet signatures.
//! * [`symmetry`]: point reflections, symmetric cones, central-symmetry
//!   decisions for point sets and closed segment loops, zonogon recognition.
//! * [`congruence`]: shape-matrix congruence with explicit signed-permutation
//!   and orthogonal witnesses, and the row/column comparison conditions.
//! * [`tiling`]: tilings of a zonotope by translates of its generating
//!   parallelotopes, built one generator at a time, plus a validator.
//! * [`rigidity`]: exterior roots, parallelotopes from facet data, Minkowski
//!   balance and facet-congruence checks.
//!
//! Everything works in `f64` with an explicit [`Tolerance`]. The crate is
//! `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod subsets;

pub mod congruence;
pub mod numkit;
pub mod rigidity;
pub mod symmetry;
pub mod tiling;
pub mod zonotope;

pub use error::{Error, Result};
pub use numkit::{Matrix, Tolerance, Vector};
pub use zonotope::Zonotope;
