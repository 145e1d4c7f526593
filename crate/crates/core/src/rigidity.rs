//! Exterior roots, parallelotopes from facet data, and facet-based
//! congruence checks.

use alloc::vec;
use alloc::vec::Vec;

use crate::congruence::{self, CongruenceWitness, SignVector};
use crate::error::{Error, Result};
use crate::numkit::{self, vector, Matrix, Tolerance, Vector};
use crate::zonotope::{FacetSignature, Zonotope};

/// Relative residual accepted for an exterior root.
pub const ROOT_RESIDUAL: f64 = 1e-8;

/// A facet normal with its facet volume.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetDatum {
    pub unit_normal: Vector,
    pub volume: f64,
}

impl FacetDatum {
    /// Requires `‖normal‖ = 1` within `tol` and a positive volume.
    pub fn new(unit_normal: Vector, volume: f64, tol: &Tolerance) -> Result<Self> {
        if let Some(i) = unit_normal.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        if !tol.eq(vector::norm(&unit_normal), 1.0) {
            return Err(Error::Inconsistent("facet normal is not a unit vector"));
        }
        if !(volume > 0.0 && volume.is_finite()) {
            return Err(Error::Parameter {
                what: "facet volume",
                value: volume,
            });
        }
        Ok(FacetDatum {
            unit_normal,
            volume,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorRoot {
    pub root: Matrix,
    /// `‖∧ⁿ⁻¹(root) − B′‖ / ‖B′‖` (Frobenius) where `B′` is the target after
    /// the column signs below were applied.
    pub residual: f64,
    /// Column signs applied to the input; all `+1` unless a flip was needed
    /// for a real root.
    pub signs: SignVector,
    /// Other matrices with the same compound (`-root` when `n` is odd).
    pub alternatives: Vec<Matrix>,
}

/// Sign patterns in lexicographic order with `+` before `-`, column 0 most
/// significant.
fn sign_patterns(n: usize) -> impl Iterator<Item = SignVector> {
    (0u32..(1 << n)).map(move |code| {
        let mask = (0..n).fold(0u32, |m, i| m | ((code >> (n - 1 - i) & 1) << i));
        SignVector::from_mask(n, mask)
    })
}

/// A matrix `A` with `∧ⁿ⁻¹(A) = b` (entry `(i, j)` of the compound is the
/// minor deleting row `i` and column `j`).
///
/// The cofactor matrix `K` of `A` is `K_ij = (−1)^(i+j) b_ij`, so
/// `det K = det(A)^(n−1)` and `A = det(A)·(Kᵀ)⁻¹`. For odd `n` the root needs
/// `det K > 0`; column sign patterns of `b` are then tried in order and the
/// one used is reported.
pub fn exterior_root(b: &Matrix, tol: &Tolerance) -> Result<ExteriorRoot> {
    let n = b.rows();
    if !b.is_square() {
        return Err(Error::Dimension {
            op: "exterior root",
            expected: n,
            found: b.cols(),
        });
    }
    if n < 2 {
        return Err(Error::Dimension {
            op: "exterior root",
            expected: 2,
            found: n,
        });
    }
    numkit::inverse(b)?;
    let mut last_det = 0.0;
    for signs in sign_patterns(n) {
        let target = b.mul(&signs.diagonal());
        let mut k = target.clone();
        for i in 0..n {
            for j in 0..n {
                if (i + j) % 2 == 1 {
                    k[(i, j)] = -k[(i, j)];
                }
            }
        }
        let det_k = numkit::determinant(&k)?;
        last_det = det_k;
        let p = (n - 1) as f64;
        let d = if (n - 1).is_multiple_of(2) {
            if det_k <= 0.0 {
                continue;
            }
            libm::pow(det_k, 1.0 / p)
        } else {
            det_k.signum() * libm::pow(det_k.abs(), 1.0 / p)
        };
        let root = numkit::inverse(&k.transpose())?.scale(d);
        let back = numkit::compound(&root)?;
        let residual = back.sub(&target).frobenius_norm() / target.frobenius_norm();
        if residual > ROOT_RESIDUAL.max(tol.rel) {
            return Err(Error::Inconsistent("exterior root residual"));
        }
        let alternatives = if n % 2 == 1 {
            vec![root.scale(-1.0)]
        } else {
            Vec::new()
        };
        return Ok(ExteriorRoot {
            root,
            residual,
            signs,
            alternatives,
        });
    }
    Err(Error::NoRealRoot { det: last_det })
}

/// The parallelotope whose facets have the given outward normals (up to
/// orientation) and volumes. The matrix `B` with columns `volume_i·u_i` is
/// the signed compound of the result, up to column signs.
pub fn parallelotope_from_facets(data: &[FacetDatum], tol: &Tolerance) -> Result<Matrix> {
    let n = data.len();
    if n < 2 {
        return Err(Error::Dimension {
            op: "parallelotope from facets",
            expected: 2,
            found: n,
        });
    }
    if let Some(d) = data.iter().find(|d| d.unit_normal.len() != n) {
        return Err(Error::Dimension {
            op: "facet normal",
            expected: n,
            found: d.unit_normal.len(),
        });
    }
    let normals = Matrix::from_columns(&data.iter().map(|d| &d.unit_normal[..]).collect::<Vec<_>>())?;
    let r = numkit::rank(&normals, tol);
    if r < n {
        return Err(Error::Degenerate { required: n, rank: r });
    }
    let mut b = Matrix::zeros(n, n);
    for (j, d) in data.iter().enumerate() {
        for i in 0..n {
            let v = d.volume * d.unit_normal[i];
            b[(i, j)] = if (n + i + j) % 2 == 1 { -v } else { v };
        }
    }
    let root = exterior_root(&b, tol)?.root;

    let z = Zonotope::new(root.clone(), *tol)?;
    let expected = FacetSignature::from_entries(
        data.iter().map(|d| (d.unit_normal.clone(), d.volume)).collect(),
        tol,
    );
    if !z.facet_signature()?.approx_eq(&expected, tol) {
        return Err(Error::Inconsistent("reconstructed facets differ from the data"));
    }
    Ok(root)
}

/// `Σ volume_i · normal_i`; zero for the facet data of a closed polytope.
pub fn minkowski_balance(data: &[FacetDatum]) -> Result<Vector> {
    let Some(first) = data.first() else {
        return Ok(Vec::new());
    };
    let dim = first.unit_normal.len();
    let mut acc = vec![0.0; dim];
    for d in data {
        if d.unit_normal.len() != dim {
            return Err(Error::Dimension {
                op: "minkowski balance",
                expected: dim,
                found: d.unit_normal.len(),
            });
        }
        vector::axpy(&mut acc, d.volume, &d.unit_normal);
    }
    Ok(acc)
}

/// Facet data (outward normal, volume) of every bounding facet.
pub fn facet_data(z: &Zonotope) -> Result<Vec<FacetDatum>> {
    Ok(z.bounding_facets()?
        .iter()
        .map(|f| FacetDatum {
            unit_normal: f.unit_normal.clone(),
            volume: f.volume,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FacetPair {
    pub columns: Vec<usize>,
    /// `A_Cᵀ A_C = B_Cᵀ B_C`.
    pub congruent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FacetCongruenceReport {
    /// Both matrices have the same generating-facet column sets.
    pub census_match: bool,
    pub facets: Vec<FacetPair>,
    pub all_congruent: bool,
    /// Present when every facet pair is congruent and the zonotopes are too.
    pub witness: Option<CongruenceWitness>,
}

/// Compares corresponding generating facets of `Z(A)` and `Z(B)` (same
/// column sets) and, when all are congruent, searches for a witness that
/// the zonotopes are congruent.
pub fn facet_congruence_check(a: &Matrix, b: &Matrix, tol: &Tolerance) -> Result<FacetCongruenceReport> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Dimension {
            op: "facet congruence",
            expected: a.cols(),
            found: b.cols(),
        });
    }
    let za = Zonotope::new(a.clone(), *tol)?;
    let zb = Zonotope::new(b.clone(), *tol)?;
    for z in [&za, &zb] {
        if z.rank() < z.dim() || !z.stripped_columns().is_empty() {
            return Err(Error::Degenerate {
                required: z.dim(),
                rank: z.rank(),
            });
        }
    }
    let r = za.rank();
    let fa = za.generating_faces(r - 1)?;
    let fb = zb.generating_faces(r - 1)?;
    if fa != fb {
        return Ok(FacetCongruenceReport {
            census_match: false,
            facets: Vec::new(),
            all_congruent: false,
            witness: None,
        });
    }
    let facets: Vec<FacetPair> = fa
        .iter()
        .map(|f| {
            let congruent = congruence::same_shape(
                &a.select_columns(&f.columns),
                &b.select_columns(&f.columns),
                tol,
            )?;
            Ok(FacetPair {
                columns: f.columns.clone(),
                congruent,
            })
        })
        .collect::<Result<_>>()?;
    let all_congruent = facets.iter().all(|p| p.congruent);
    let witness = if all_congruent {
        congruence::congruent_zonotopes(a, b, tol)?
    } else {
        None
    };
    Ok(FacetCongruenceReport {
        census_match: true,
        facets,
        all_congruent,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignatureReport {
    /// Facet signatures agree as given (no alignment).
    pub signatures_equal: bool,
    /// Same number of generating facets.
    pub census_match: bool,
    pub witness: Option<CongruenceWitness>,
    /// With a witness `Q`, whether `Q·Z₁` has the signature of `Z₂`.
    pub aligned_signatures_equal: Option<bool>,
}

/// Compares facet signatures and searches for a congruence witness.
pub fn signature_congruence_check(z1: &Zonotope, z2: &Zonotope, tol: &Tolerance) -> Result<SignatureReport> {
    if z1.rank() != z2.rank() {
        return Err(Error::Dimension {
            op: "signature congruence (rank)",
            expected: z1.rank(),
            found: z2.rank(),
        });
    }
    let (s1, s2) = (z1.facet_signature()?, z2.facet_signature()?);
    let signatures_equal = s1.approx_eq(&s2, tol);
    let r = z1.rank();
    let census_match = z1.generating_faces(r - 1)?.len() == z2.generating_faces(r - 1)?.len();
    let comparable = z1.generator_count() == z2.generator_count()
        && z1.dim() <= z2.dim()
        && z1.generator_count() <= congruence::MAX_SEARCH_COLUMNS;
    let witness = if comparable {
        congruence::congruent_zonotopes(z1.matrix(), z2.matrix(), tol)?
    } else {
        None
    };
    let aligned_signatures_equal = match &witness {
        Some(w) => {
            let moved = Zonotope::new(w.q.mul(z1.matrix()), *tol)?;
            Some(moved.facet_signature()?.approx_eq(&s2, tol))
        }
        None => None,
    };
    Ok(SignatureReport {
        signatures_equal,
        census_match,
        witness,
        aligned_signatures_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn m<R: AsRef<[f64]>>(rows: &[R]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn sign_pattern_order() {
        let p: Vec<Vec<i8>> = sign_patterns(2).map(|s| s.entries().to_vec()).collect();
        assert_eq!(p, vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]);
    }

    #[test]
    fn root_of_identity() {
        let r = exterior_root(&Matrix::identity(3), &tol()).unwrap();
        assert!(r.root.max_abs_diff(&Matrix::identity(3)) < 1e-15);
        assert!(r.residual < 1e-15);
        assert_eq!(r.alternatives.len(), 1);
    }

    #[test]
    fn root_of_diagonal_compound() {
        let a = Matrix::diagonal(&[2.0, 1.0, 1.0]);
        let b = numkit::compound(&a).unwrap();
        let r = exterior_root(&b, &tol()).unwrap();
        assert!(r.root.max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn negative_target_is_resigned() {
        // det K < 0 for n = 3 until a column sign is flipped.
        let b = Matrix::diagonal(&[1.0, 1.0, -1.0]);
        let r = exterior_root(&b, &tol()).unwrap();
        assert_eq!(r.signs.entries(), &[1, 1, -1]);
        let back = numkit::compound(&r.root).unwrap();
        assert!(back.max_abs_diff(&b.mul(&r.signs.diagonal())) < 1e-12);
        assert_eq!(exterior_root(&Matrix::zeros(3, 3), &tol()), Err(Error::Singular));
    }

    #[test]
    fn even_dimension_root_is_unique() {
        let a = m(&[[1.0, 2.0, 0.0, 1.0], [0.0, 1.0, 3.0, 0.0], [2.0, 0.0, 1.0, 1.0], [1.0, 1.0, 0.0, 2.0]]);
        let r = exterior_root(&numkit::compound(&a).unwrap(), &tol()).unwrap();
        assert!(r.root.max_abs_diff(&a) < 1e-10);
        assert!(r.alternatives.is_empty());
    }

    #[test]
    fn box_from_areas() {
        let data: Vec<FacetDatum> = (0..3)
            .map(|i| {
                let mut e = vec![0.0; 3];
                e[i] = 1.0;
                FacetDatum::new(e, (i + 1) as f64, &tol()).unwrap()
            })
            .collect();
        let a = parallelotope_from_facets(&data, &tol()).unwrap();
        let z = Zonotope::new(a, tol()).unwrap();
        assert!((z.volume().value - libm::sqrt(6.0)).abs() < 1e-12);
        let areas: Vec<f64> = z.facet_signature().unwrap().entries.iter().map(|e| e.1).collect();
        assert_eq!(areas.len(), 3);
        let mut sorted = areas.clone();
        sorted.sort_by(f64::total_cmp);
        for (got, want) in sorted.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn dependent_normals_rejected() {
        let e = |v: [f64; 2]| FacetDatum::new(v.to_vec(), 1.0, &tol()).unwrap();
        assert!(matches!(
            parallelotope_from_facets(&[e([1.0, 0.0]), e([-1.0, 0.0])], &tol()),
            Err(Error::Degenerate { .. })
        ));
        assert!(FacetDatum::new(vec![2.0, 0.0], 1.0, &tol()).is_err());
        assert!(FacetDatum::new(vec![1.0, 0.0], 0.0, &tol()).is_err());
    }

    #[test]
    fn balance_examples() {
        let d = |v: [f64; 3], a| FacetDatum {
            unit_normal: v.to_vec(),
            volume: a,
        };
        let paired = [d([0.0, 1.0, 0.0], 2.0), d([0.0, -1.0, 0.0], 2.0)];
        assert_eq!(minkowski_balance(&paired).unwrap(), vec![0.0; 3]);
        let lopsided = [d([1.0, 0.0, 0.0], 1.0), d([0.0, 1.0, 0.0], 1.0)];
        assert_eq!(minkowski_balance(&lopsided).unwrap(), vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn zonogon_edges_do_not_determine_shape() {
        let a = Matrix::identity(2);
        let (c, s) = (0.6, 0.8);
        let b = m(&[[1.0, c], [0.0, s]]);
        let rep = facet_congruence_check(&a, &b, &tol()).unwrap();
        assert!(rep.census_match && rep.all_congruent);
        assert_eq!(rep.witness, None);
    }

    #[test]
    fn rectangles_are_congruent() {
        let z1 = Zonotope::new(Matrix::diagonal(&[1.0, 2.0]), tol()).unwrap();
        let z2 = Zonotope::new(Matrix::diagonal(&[2.0, 1.0]), tol()).unwrap();
        let rep = signature_congruence_check(&z1, &z2, &tol()).unwrap();
        let w = rep.witness.unwrap();
        assert_eq!(w.sigma, vec![1, 0]);
        assert_eq!(rep.aligned_signatures_equal, Some(true));
    }

    #[test]
    fn rotated_square_found_by_search() {
        let (c, s) = (libm::cos(0.5235987755982988), libm::sin(0.5235987755982988));
        let z1 = Zonotope::new(Matrix::identity(2), tol()).unwrap();
        let z2 = Zonotope::new(m(&[[c, -s], [s, c]]), tol()).unwrap();
        let rep = signature_congruence_check(&z1, &z2, &tol()).unwrap();
        assert!(!rep.signatures_equal);
        assert!(rep.witness.is_some());
        assert_eq!(rep.aligned_signatures_equal, Some(true));
    }
}
