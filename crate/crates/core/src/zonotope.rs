//! The zonotope model.
//!
//! A [`Zonotope`] owns its defining matrix and a [`Tolerance`]; every other
//! quantity (faces, facets, normals, volumes, vertices) is derived from the
//! matrix on demand. When the rank `r` is below the ambient dimension `n`,
//! facet geometry is computed in an orthonormal basis of the column space and
//! normals are mapped back to `R^n`.
//!
//! Generator indices are 0-based positions among the kept (nonzero) columns.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::numkit::{self, vector, Matrix, Tolerance, Vector};
use crate::subsets::combinations;

/// Vertex enumeration visits all `2^k` cube corners; this bounds `k`.
pub const MAX_VERTEX_GENERATORS: usize = 16;

/// A maximal set of generators of a given rank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeneratingFace {
    pub columns: Vec<usize>,
    pub dim: usize,
}

/// Which of the two boundary translates of a generating facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Outward normal is the negated reference normal; translated by the
    /// generators with negative projection.
    Minus,
    /// Outward normal is the reference normal; translated by the generators
    /// with positive projection.
    Plus,
}

/// One translate of a generating facet to the boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundingFacet {
    pub face: GeneratingFace,
    /// Outward unit normal in the ambient space.
    pub unit_normal: Vector,
    /// Generators with negative projection on the reference (plus-side) normal.
    pub negative_set: Vec<usize>,
    /// Generators with positive projection on the reference normal.
    pub positive_set: Vec<usize>,
    pub side: Side,
    /// Offset of the facet: it is `translation + Z(face columns)`.
    pub translation: Vector,
    /// `h` with the facet contained in `{x : unit_normal · x = h}`.
    pub support: f64,
    /// `(r-1)`-volume.
    pub volume: f64,
    local_normal: Vector,
}

impl BoundingFacet {
    /// Outward normal in the zonotope's own `r`-dimensional coordinates.
    pub fn local_normal(&self) -> &[f64] {
        &self.local_normal
    }
}

/// Coplanar bounding facets sharing one supporting hyperplane.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricFacet {
    pub constituents: Vec<BoundingFacet>,
    pub unit_normal: Vector,
    pub support: f64,
    pub volume: f64,
}

/// Canonically ordered `(sign-normalized unit normal, volume)` pairs, one per
/// opposite pair of geometric facets.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetSignature {
    pub entries: Vec<(Vector, f64)>,
}

impl FacetSignature {
    /// Sign-normalizes every normal and sorts into canonical order.
    pub fn from_entries(entries: Vec<(Vector, f64)>, tol: &Tolerance) -> Self {
        let mut entries: Vec<(Vector, f64)> = entries
            .into_iter()
            .map(|(n, v)| (sign_normalize(&n, tol), v))
            .collect();
        entries.sort_by(|a, b| compare_entries(a, b, tol));
        FacetSignature { entries }
    }

    pub fn approx_eq(&self, other: &FacetSignature, tol: &Tolerance) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((n1, v1), (n2, v2))| tol.slices_eq(n1, n2) && tol.eq(*v1, *v2))
    }
}

/// Volume in the zonotope's own dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Volume {
    /// The dimension the value is measured in (the rank).
    pub dim: usize,
    pub value: f64,
}

/// A zonotope `Z(A)` with its tolerance and cached rank data.
pub struct Zonotope {
    matrix: Matrix,
    tol: Tolerance,
    stripped: Vec<usize>,
    kept: Vec<usize>,
    rank: usize,
    /// Orthonormal basis of the column space (`n × r`); `None` when `r = n`.
    basis: Option<Matrix>,
    /// Coordinates of the generators in that basis (`r × k`).
    local: Matrix,
    parallel_classes: Vec<Vec<usize>>,
    facets: OnceBox<Vec<BoundingFacet>>,
}

impl Clone for Zonotope {
    fn clone(&self) -> Self {
        Zonotope {
            matrix: self.matrix.clone(),
            tol: self.tol,
            stripped: self.stripped.clone(),
            kept: self.kept.clone(),
            rank: self.rank,
            basis: self.basis.clone(),
            local: self.local.clone(),
            parallel_classes: self.parallel_classes.clone(),
            facets: OnceBox::new(),
        }
    }
}

impl fmt::Debug for Zonotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Zonotope")
            .field("matrix", &self.matrix)
            .field("tol", &self.tol)
            .field("rank", &self.rank)
            .field("stripped", &self.stripped)
            .finish()
    }
}

impl Zonotope {
    /// Zero columns are removed (see [`Zonotope::stripped_columns`]); at least
    /// one nonzero column must remain.
    pub fn new(matrix: Matrix, tol: Tolerance) -> Result<Self> {
        let scale = matrix.max_abs();
        let (mut kept, mut stripped) = (Vec::new(), Vec::new());
        for j in 0..matrix.cols() {
            let col = matrix.column(j);
            if col.iter().all(|x| tol.is_zero(*x, scale)) {
                stripped.push(j);
            } else {
                kept.push(j);
            }
        }
        if kept.is_empty() {
            return Err(Error::Degenerate {
                required: 1,
                rank: 0,
            });
        }
        let matrix = matrix.select_columns(&kept);
        let n = matrix.rows();
        let independent = numkit::independent_columns(&matrix, &tol);
        let rank = independent.len();
        let (basis, local) = if rank == n {
            (None, matrix.clone())
        } else {
            let (q, _) = numkit::qr_decompose(&matrix.select_columns(&independent), &tol)?;
            let local = q.transpose().mul(&matrix);
            (Some(q), local)
        };

        let k = matrix.cols();
        let mut parallel_classes: Vec<Vec<usize>> = Vec::new();
        for j in 0..k {
            let home = parallel_classes.iter_mut().find(|class| {
                numkit::rank(&matrix.select_columns(&[class[0], j]), &tol) == 1
            });
            match home {
                Some(class) => class.push(j),
                None => parallel_classes.push(vec![j]),
            }
        }

        Ok(Zonotope {
            matrix,
            tol,
            stripped,
            kept,
            rank,
            basis,
            local,
            parallel_classes,
            facets: OnceBox::new(),
        })
    }

    /// Defining matrix after zero columns were removed.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of generators `k` (after stripping).
    pub fn generator_count(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator(&self, i: usize) -> Vector {
        self.matrix.column(i)
    }

    /// Input column indices that were dropped as zero generators.
    pub fn stripped_columns(&self) -> &[usize] {
        &self.stripped
    }

    /// Input column index of kept generator `i`.
    pub fn original_index(&self, i: usize) -> usize {
        self.kept[i]
    }

    /// Partition of the generators into classes of mutually parallel vectors.
    pub fn parallel_classes(&self) -> &[Vec<usize>] {
        &self.parallel_classes
    }

    /// Generator coordinates in an orthonormal basis of the column space.
    pub fn local_matrix(&self) -> &Matrix {
        &self.local
    }

    fn embed(&self, local: &[f64]) -> Vector {
        match &self.basis {
            None => local.to_vec(),
            Some(q) => q.mul_vec(local),
        }
    }

    /// Sum of generator norms; the length scale used for tolerance tests on
    /// positions.
    pub fn scale(&self) -> f64 {
        (0..self.generator_count())
            .map(|j| vector::norm(&self.local.column(j)))
            .sum()
    }

    fn local_rank(&self, cols: &[usize]) -> usize {
        if cols.is_empty() {
            return 0;
        }
        numkit::rank(&self.local.select_columns(cols), &self.tol)
    }

    fn sum_of(&self, cols: &[usize]) -> Vector {
        let mut acc = vec![0.0; self.dim()];
        for &j in cols {
            vector::axpy(&mut acc, 1.0, &self.matrix.column(j));
        }
        acc
    }

    /// `(Σ a_i) / 2`, the center of symmetry.
    pub fn center(&self) -> Vector {
        vector::scale(&self.sum_of(&(0..self.generator_count()).collect::<Vec<_>>()), 0.5)
    }

    /// All maximal generator subsets of rank `s`, lexicographically ordered.
    pub fn generating_faces(&self, s: usize) -> Result<Vec<GeneratingFace>> {
        if s > self.rank {
            return Err(Error::OutOfRange {
                what: "face dimension",
                value: s,
                max: self.rank,
            });
        }
        let k = self.generator_count();
        if s == 0 {
            return Ok(vec![GeneratingFace {
                columns: Vec::new(),
                dim: 0,
            }]);
        }
        if s == self.rank {
            return Ok(vec![GeneratingFace {
                columns: (0..k).collect(),
                dim: s,
            }]);
        }
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for subset in combinations(k, s) {
            if self.local_rank(&subset) < s {
                continue;
            }
            // A closure already found contains this basis iff it equals it.
            if faces.iter().any(|f| subset.iter().all(|j| f.binary_search(j).is_ok())) {
                continue;
            }
            let closure: Vec<usize> = (0..k)
                .filter(|j| {
                    subset.binary_search(j).is_ok() || {
                        let mut with = subset.clone();
                        with.push(*j);
                        self.local_rank(&with) == s
                    }
                })
                .collect();
            faces.insert(closure);
        }
        Ok(faces
            .into_iter()
            .map(|columns| GeneratingFace { columns, dim: s })
            .collect())
    }

    fn require_facets(&self) -> Result<()> {
        if self.rank < 2 {
            Err(Error::Degenerate {
                required: 2,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// Both boundary translates of every generating facet, in generating
    /// facet order with the minus side first.
    pub fn bounding_facets(&self) -> Result<&[BoundingFacet]> {
        self.require_facets()?;
        Ok(self
            .facets
            .get_or_init(|| Box::new(self.compute_bounding_facets())))
    }

    fn compute_bounding_facets(&self) -> Vec<BoundingFacet> {
        let r = self.rank;
        let k = self.generator_count();
        let faces = self
            .generating_faces(r - 1)
            .expect("r - 1 is a valid face dimension");
        let mut out = Vec::with_capacity(2 * faces.len());
        for face in faces {
            let sub = self.local.select_columns(&face.columns);
            let spanning: Vec<Vector> = numkit::independent_columns(&sub, &self.tol)
                .into_iter()
                .map(|j| sub.column(j))
                .collect();
            let cross = numkit::cross_product(&spanning).expect("r - 1 vectors in R^r");
            let reference = vector::scale(&cross, 1.0 / vector::norm(&cross));
            let (mut negative_set, mut positive_set) = (Vec::new(), Vec::new());
            for j in (0..k).filter(|j| face.columns.binary_search(j).is_err()) {
                if vector::dot(&reference, &self.local.column(j)) < 0.0 {
                    negative_set.push(j);
                } else {
                    positive_set.push(j);
                }
            }
            let volume = self.sub_volume(&face.columns, r - 1);
            for side in [Side::Minus, Side::Plus] {
                let (local_normal, set) = match side {
                    Side::Minus => (vector::scale(&reference, -1.0), &negative_set),
                    Side::Plus => (reference.clone(), &positive_set),
                };
                let translation = self.sum_of(set);
                let unit_normal = self.embed(&local_normal);
                let support = vector::dot(&unit_normal, &translation);
                out.push(BoundingFacet {
                    face: face.clone(),
                    unit_normal,
                    negative_set: negative_set.clone(),
                    positive_set: positive_set.clone(),
                    side,
                    translation,
                    support,
                    volume,
                    local_normal,
                });
            }
        }
        out
    }

    /// Bounding facets grouped by supporting hyperplane.
    pub fn geometric_facets(&self) -> Result<Vec<GeometricFacet>> {
        let facets = self.bounding_facets()?;
        let scale = self.scale();
        let mut out: Vec<GeometricFacet> = Vec::new();
        for f in facets {
            let home = out.iter_mut().find(|g| {
                self.tol.slices_eq(&g.unit_normal, &f.unit_normal)
                    && self.tol.eq_at_scale(g.support, f.support, scale)
            });
            match home {
                Some(g) => {
                    g.volume += f.volume;
                    g.constituents.push(f.clone());
                }
                None => out.push(GeometricFacet {
                    constituents: vec![f.clone()],
                    unit_normal: f.unit_normal.clone(),
                    support: f.support,
                    volume: f.volume,
                }),
            }
        }
        Ok(out)
    }

    /// Σ over `m`-subsets `S` of `sqrt(det(A_Sᵀ A_S))`, restricted to `cols`.
    fn sub_volume(&self, cols: &[usize], m: usize) -> f64 {
        let mut total = 0.0;
        for subset in combinations(cols.len(), m) {
            let idx: Vec<usize> = subset.iter().map(|&i| cols[i]).collect();
            let g = numkit::gram(&self.local.select_columns(&idx));
            let d = numkit::determinant(&g).expect("gram is square");
            total += libm::sqrt(d.max(0.0));
        }
        total
    }

    /// Volume in the zonotope's own dimension `r`.
    ///
    /// For full rank this is the sum of `|det|` over all `n`-column subsets;
    /// otherwise it is [`Zonotope::m_volume`] at `m = r` and `dim < n` flags
    /// that the `n`-volume is zero.
    pub fn volume(&self) -> Volume {
        let value = if self.rank == self.dim() {
            combinations(self.generator_count(), self.rank)
                .map(|s| {
                    numkit::determinant(&self.matrix.select_columns(&s))
                        .expect("square")
                        .abs()
                })
                .sum()
        } else {
            self.sub_volume(&(0..self.generator_count()).collect::<Vec<_>>(), self.rank)
        };
        Volume {
            dim: self.rank,
            value,
        }
    }

    /// `m`-volume as a sum of Gram-determinant square roots; `m` must equal the rank.
    pub fn m_volume(&self, m: usize) -> Result<f64> {
        if m != self.rank {
            return Err(Error::Dimension {
                op: "m-volume",
                expected: self.rank,
                found: m,
            });
        }
        Ok(self.sub_volume(&(0..self.generator_count()).collect::<Vec<_>>(), m))
    }

    /// `(r-1)`-volume of the sub-zonotope on a generating facet.
    pub fn facet_volume(&self, face: &GeneratingFace) -> Result<f64> {
        if self.rank == 0 || face.dim != self.rank - 1 {
            return Err(Error::Dimension {
                op: "facet volume",
                expected: self.rank.saturating_sub(1),
                found: face.dim,
            });
        }
        if let Some(&bad) = face.columns.iter().find(|&&j| j >= self.generator_count()) {
            return Err(Error::OutOfRange {
                what: "generator index",
                value: bad,
                max: self.generator_count() - 1,
            });
        }
        Ok(self.sub_volume(&face.columns, self.rank - 1))
    }

    /// Generating facets whose column set contains generator `i`.
    pub fn zone(&self, i: usize) -> Result<Vec<GeneratingFace>> {
        if i >= self.generator_count() {
            return Err(Error::OutOfRange {
                what: "generator index",
                value: i,
                max: self.generator_count() - 1,
            });
        }
        self.require_facets()?;
        Ok(self
            .generating_faces(self.rank - 1)?
            .into_iter()
            .filter(|f| f.columns.contains(&i))
            .collect())
    }

    /// The cone decomposition volume: Σ over generating facets of
    /// `(1/r) · facet volume · Σ_j |n · a_j|`. Equals [`Zonotope::volume`].
    pub fn cone_volume(&self) -> Result<f64> {
        let facets = self.bounding_facets()?;
        let r = self.rank as f64;
        let mut total = 0.0;
        for f in facets.iter().filter(|f| f.side == Side::Plus) {
            let height: f64 = (0..self.generator_count())
                .map(|j| vector::dot(&f.local_normal, &self.local.column(j)).abs())
                .sum();
            total += f.volume * height / r;
        }
        Ok(total)
    }

    /// Extreme points among the cube-corner images `Σ ε_i a_i`, in binary
    /// order of `ε`. A corner is a vertex when the facet normals active at it
    /// span the zonotope's dimension.
    pub fn vertices(&self) -> Result<Vec<Vector>> {
        let k = self.generator_count();
        if k > MAX_VERTEX_GENERATORS {
            return Err(Error::Capacity {
                limit: MAX_VERTEX_GENERATORS,
                found: k,
            });
        }
        if self.rank == 1 {
            let (mut lo, mut hi) = (Vec::new(), Vec::new());
            for j in 0..k {
                if self.local[(0, j)] < 0.0 {
                    lo.push(j);
                } else {
                    hi.push(j);
                }
            }
            return Ok(vec![self.sum_of(&lo), self.sum_of(&hi)]);
        }
        let facets = self.geometric_facets()?;
        let scale = self.scale();
        let columns = self.matrix.columns();
        let mut out: Vec<Vector> = Vec::new();
        for mask in 0u32..(1u32 << k) {
            let mut p = vec![0.0; self.dim()];
            for (j, c) in columns.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    vector::axpy(&mut p, 1.0, c);
                }
            }
            let active: Vec<&[f64]> = facets
                .iter()
                .filter(|f| {
                    self.tol
                        .eq_at_scale(vector::dot(&f.unit_normal, &p), f.support, scale)
                })
                .map(|f| f.unit_normal.as_slice())
                .collect();
            if active.len() < self.rank {
                continue;
            }
            let normals = Matrix::from_columns(&active).expect("normals share the ambient dimension");
            if numkit::rank(&normals, &self.tol) < self.rank {
                continue;
            }
            if !out.iter().any(|v| {
                v.iter()
                    .zip(&p)
                    .all(|(a, b)| self.tol.eq_at_scale(*a, *b, scale))
            }) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// One `(normal, volume)` entry per opposite pair of geometric facets,
    /// with the normal's first nonzero coordinate made positive.
    pub fn facet_signature(&self) -> Result<FacetSignature> {
        let facets = self.geometric_facets()?;
        let entries = facets
            .iter()
            .filter(|g| g.constituents[0].side == Side::Plus)
            .map(|g| (g.unit_normal.clone(), g.volume))
            .collect();
        Ok(FacetSignature::from_entries(entries, &self.tol))
    }

    /// Σ over bounding facets of `volume · outward normal`.
    pub fn facet_balance(&self) -> Result<Vector> {
        let mut acc = vec![0.0; self.dim()];
        for f in self.bounding_facets()? {
            vector::axpy(&mut acc, f.volume, &f.unit_normal);
        }
        Ok(acc)
    }

    /// Whether `x` lies in the zonotope, by the support function on every
    /// facet normal (rank ≥ 2) and, for lower rank, the column-space test.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        let scale = self.scale();
        if let Some(q) = &self.basis {
            let local = q.transpose().mul_vec(x);
            let back = q.mul_vec(&local);
            if !back
                .iter()
                .zip(x)
                .all(|(a, b)| self.tol.eq_at_scale(*a, *b, scale))
            {
                return Ok(false);
            }
        }
        if self.rank == 1 {
            let v = self.vertices()?;
            let d = vector::sub(&v[1], &v[0]);
            let t = vector::dot(&vector::sub(x, &v[0]), &d) / vector::dot(&d, &d);
            return Ok((-1e-12..=1.0 + 1e-12).contains(&t));
        }
        Ok(self.bounding_facets()?.iter().all(|f| {
            vector::dot(&f.unit_normal, x) <= f.support + self.tol.bound(scale)
        }))
    }
}

/// Flip `v` so its first coordinate that is nonzero under `tol` is positive;
/// coordinates within `tol.abs` of zero are set to exactly zero.
pub fn sign_normalize(v: &[f64], tol: &Tolerance) -> Vector {
    let mut out: Vector = v
        .iter()
        .map(|x| if x.abs() <= tol.abs { 0.0 } else { *x })
        .collect();
    if let Some(first) = out.iter().find(|x| **x != 0.0) {
        if *first < 0.0 {
            for x in out.iter_mut() {
                *x = -*x;
            }
        }
    }
    out
}

fn compare_entries(a: &(Vector, f64), b: &(Vector, f64), tol: &Tolerance) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        if !tol.eq(*x, *y) {
            return x.total_cmp(y);
        }
    }
    if tol.eq(a.1, b.1) {
        Ordering::Equal
    } else {
        a.1.total_cmp(&b.1)
    }
}
