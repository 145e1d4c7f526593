//! Congruence of zonotopes through shape (Gram) matrices.
//!
//! `Z(A)` and `Z(B)` are congruent when `B = Q A Σ J` for an orthogonal `Q`,
//! a permutation `Σ` and a diagonal sign matrix `J`; equivalently the shape
//! matrices `AᵀA` and `BᵀB` agree up to that signed permutation. Every
//! returned witness has been checked against its defining equation.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numkit::{self, Matrix, Tolerance, Vector};

/// Upper bound on `k` for the signed-permutation search.
pub const MAX_SEARCH_COLUMNS: usize = 10;

/// Upper bound on `k` for the sign search in [`verify_condition3`].
pub const MAX_SIGN_SEARCH: usize = 8;

/// A vector of `±1` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    /// `None` unless every entry is `1` or `-1`.
    pub fn new(entries: Vec<i8>) -> Option<Self> {
        entries
            .iter()
            .all(|s| *s == 1 || *s == -1)
            .then_some(SignVector(entries))
    }

    pub fn ones(k: usize) -> Self {
        SignVector(vec![1; k])
    }

    /// Bit `i` of `mask` set means entry `i` is `-1`.
    pub fn from_mask(k: usize, mask: u32) -> Self {
        SignVector((0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn diagonal(&self) -> Matrix {
        let d: Vec<f64> = self.0.iter().map(|s| f64::from(*s)).collect();
        Matrix::diagonal(&d)
    }
}

/// `B = q · A · Σ(sigma) · diag(signs)`: column `i` of `B` is
/// `signs[i] · q · a_{sigma[i]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceWitness {
    pub sigma: Vec<usize>,
    pub signs: SignVector,
    pub q: Matrix,
}

impl CongruenceWitness {
    /// `A Σ J` for this witness.
    pub fn arrange(&self, a: &Matrix) -> Matrix {
        signed_permutation(a, &self.sigma, self.signs.entries())
    }

    /// Largest entry of `B - q A Σ J`.
    pub fn residual(&self, a: &Matrix, b: &Matrix) -> f64 {
        self.q.mul(&self.arrange(a)).max_abs_diff(b)
    }
}

/// Whether condition (3) `A Q₁ R = B Q₂ S` holds and with which witnesses.
#[derive(Clone, Debug, PartialEq)]
pub enum Condition3 {
    /// Derived from conditions (1) and (2), with `S = Q₁ R` and `Bᵀ = Q₂ Aᵀ`.
    Holds { q1: Matrix, q2: Matrix },
    /// Exactly one of (1), (2) holds, so (3) cannot.
    Fails,
    /// Neither (1) nor (2) holds; (3) is not decided.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    /// `AᵀA = BᵀB`.
    pub c1: bool,
    /// `AAᵀ = BBᵀ`.
    pub c2: bool,
    pub c3: Condition3,
    pub derivation_note: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SquareComparison {
    pub a2_eq_b2: bool,
    pub gram_eq: bool,
    pub rowgram_eq: bool,
    /// `Q = B A⁻¹` with `B = QA` and `Bᵀ = QAᵀ`, when all three equalities hold.
    pub shared_q: Option<Matrix>,
}

/// Columns `signs[i] · a_{sigma[i]}`.
pub fn signed_permutation(a: &Matrix, sigma: &[usize], signs: &[i8]) -> Matrix {
    let mut out = Matrix::zeros(a.rows(), sigma.len());
    for (i, (&src, &s)) in sigma.iter().zip(signs).enumerate() {
        for r in 0..a.rows() {
            out[(r, i)] = f64::from(s) * a[(r, src)];
        }
    }
    out
}

/// Entrywise equality with the relative part measured against the largest
/// entry of either matrix.
pub fn matrices_eq(x: &Matrix, y: &Matrix, tol: &Tolerance) -> bool {
    let scale = x.max_abs().max(y.max_abs());
    x.rows() == y.rows() && x.cols() == y.cols() && x.max_abs_diff(y) <= tol.bound(scale)
}

fn same_columns(a: &Matrix, b: &Matrix, op: &'static str) -> Result<()> {
    if a.cols() != b.cols() {
        return Err(Error::Dimension {
            op,
            expected: a.cols(),
            found: b.cols(),
        });
    }
    Ok(())
}

fn same_size(a: &Matrix, b: &Matrix, op: &'static str) -> Result<()> {
    same_columns(a, b, op)?;
    if a.rows() != b.rows() {
        return Err(Error::Dimension {
            op,
            expected: a.rows(),
            found: b.rows(),
        });
    }
    Ok(())
}

/// `AᵀA = BᵀB` within `tol`.
pub fn same_shape(a: &Matrix, b: &Matrix, tol: &Tolerance) -> Result<bool> {
    same_columns(a, b, "same shape")?;
    Ok(matrices_eq(&numkit::gram(a), &numkit::gram(b), tol))
}

/// An `n × m` matrix `Q` with orthonormal columns and `B = Q A`, for `A`
/// of size `m × k` and `B` of size `n × k` with `m ≤ n`.
///
/// A maximal independent column set of `A` is mapped onto the matching
/// columns of `B`; the orthogonal complement of its span in `R^m` is sent
/// to QR-chosen orthonormal vectors orthogonal to the image. Dependent
/// columns follow from equal Gram matrices.
pub fn find_orthogonal(a: &Matrix, b: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    same_columns(a, b, "find orthogonal")?;
    let (m, n) = (a.rows(), b.rows());
    if m > n {
        return Err(Error::Dimension {
            op: "find orthogonal (rows of A must not exceed rows of B)",
            expected: n,
            found: m,
        });
    }
    if !same_shape(a, b, tol)? {
        return Err(Error::NoWitness);
    }
    let independent = numkit::independent_columns(a, tol);
    let (pa, pb): (Vec<Vector>, Vec<Vector>) = if independent.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let (qa, _) = numkit::qr_decompose(&a.select_columns(&independent), tol)?;
        let (qb, _) = numkit::qr_decompose(&b.select_columns(&independent), tol)
            .map_err(|_| Error::NoWitness)?;
        (qa.columns(), qb.columns())
    };
    let r = pa.len();
    let mut source = pa;
    source.extend(numkit::orthonormal_complement(m, &source));
    let mut target = pb;
    let complement = numkit::orthonormal_complement(n, &target);
    target.extend(complement.into_iter().take(m - r));

    let q = Matrix::from_columns(&target)?.mul(&Matrix::from_columns(&source)?.transpose());
    let scale = a.frobenius_norm().max(b.frobenius_norm());
    if q.mul(a).max_abs_diff(b) > tol.bound(scale) {
        return Err(Error::NoWitness);
    }
    Ok(q)
}

/// Signs `J` with `r = J s` for upper triangular `r`, `s` satisfying
/// `rᵀr = sᵀs`, recovered one row at a time from the diagonal ratios.
pub fn triangular_signs(r: &Matrix, s: &Matrix, tol: &Tolerance) -> Result<SignVector> {
    same_size(r, s, "triangular signs")?;
    if !r.is_square() {
        return Err(Error::Dimension {
            op: "triangular signs",
            expected: r.rows(),
            found: r.cols(),
        });
    }
    let k = r.rows();
    let scale = r.max_abs().max(s.max_abs());
    for m in [r, s] {
        for i in 0..k {
            for j in 0..i {
                if !tol.is_zero(m[(i, j)], scale) {
                    return Err(Error::Hypothesis { row: i, col: j });
                }
            }
        }
    }
    let (gr, gs) = (numkit::gram(r), numkit::gram(s));
    let gscale = gr.max_abs().max(gs.max_abs());
    for i in 0..k {
        for j in 0..k {
            if !tol.eq_at_scale(gr[(i, j)], gs[(i, j)], gscale) {
                return Err(Error::Hypothesis { row: i, col: j });
            }
        }
    }
    let mut signs = Vec::with_capacity(k);
    for i in 0..k {
        if tol.is_zero(s[(i, i)], scale) || tol.is_zero(r[(i, i)], scale) {
            return Err(Error::Hypothesis { row: i, col: i });
        }
        let sign: i8 = if (r[(i, i)] < 0.0) == (s[(i, i)] < 0.0) { 1 } else { -1 };
        for j in i..k {
            if !tol.eq_at_scale(r[(i, j)], f64::from(sign) * s[(i, j)], scale) {
                return Err(Error::Hypothesis { row: i, col: j });
            }
        }
        signs.push(sign);
    }
    Ok(SignVector(signs))
}

fn search_order(gb: &Matrix) -> Vec<usize> {
    let k = gb.rows();
    let profile = |i: usize| {
        let mut p: Vec<f64> = (0..k).filter(|&j| j != i).map(|j| gb[(i, j)].abs()).collect();
        p.sort_by(|x, y| y.total_cmp(x));
        p
    };
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| {
        gb[(y, y)]
            .total_cmp(&gb[(x, x)])
            .then_with(|| {
                let (px, py) = (profile(x), profile(y));
                px.iter()
                    .zip(&py)
                    .map(|(u, v)| v.total_cmp(u))
                    .find(|o| o.is_ne())
                    .unwrap_or(core::cmp::Ordering::Equal)
            })
    });
    order
}

struct Search<'a> {
    ga: &'a Matrix,
    gb: &'a Matrix,
    order: Vec<usize>,
    bound: f64,
    sigma: Vec<usize>,
    signs: Vec<i8>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn fits(&self, depth: usize, cand: usize, sign: i8) -> bool {
        let b = self.order[depth];
        if (self.ga[(cand, cand)] - self.gb[(b, b)]).abs() > self.bound {
            return false;
        }
        (0..depth).all(|p| {
            let bp = self.order[p];
            let expected = f64::from(sign * self.signs[bp]) * self.ga[(cand, self.sigma[bp])];
            (self.gb[(b, bp)] - expected).abs() <= self.bound
        })
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let b = self.order[depth];
        let signs: &[i8] = if depth == 0 { &[1] } else { &[1, -1] };
        for cand in 0..self.order.len() {
            if self.used[cand] {
                continue;
            }
            for &sign in signs {
                if !self.fits(depth, cand, sign) {
                    continue;
                }
                self.used[cand] = true;
                self.sigma[b] = cand;
                self.signs[b] = sign;
                if self.run(depth + 1) {
                    return true;
                }
                self.used[cand] = false;
            }
        }
        false
    }
}

/// Searches signed permutations `(Σ, J)` with `(AΣJ)ᵀ(AΣJ) = BᵀB` by
/// backtracking over the columns of `B` in decreasing norm, then attaches
/// `Q = find_orthogonal(AΣJ, B)`.
pub fn congruent_zonotopes(
    a: &Matrix,
    b: &Matrix,
    tol: &Tolerance,
) -> Result<Option<CongruenceWitness>> {
    same_columns(a, b, "congruent zonotopes")?;
    let k = a.cols();
    if k > MAX_SEARCH_COLUMNS {
        return Err(Error::Capacity {
            limit: MAX_SEARCH_COLUMNS,
            found: k,
        });
    }
    if a.rows() > b.rows() {
        return Err(Error::Dimension {
            op: "congruent zonotopes (rows of A must not exceed rows of B)",
            expected: b.rows(),
            found: a.rows(),
        });
    }
    let (ga, gb) = (numkit::gram(a), numkit::gram(b));
    let mut search = Search {
        ga: &ga,
        gb: &gb,
        order: search_order(&gb),
        bound: tol.bound(ga.max_abs().max(gb.max_abs())),
        sigma: vec![0; k],
        signs: vec![1; k],
        used: vec![false; k],
    };
    if !search.run(0) {
        return Ok(None);
    }
    let sigma = search.sigma;
    let signs = SignVector(search.signs);
    let arranged = signed_permutation(a, &sigma, signs.entries());
    match find_orthogonal(&arranged, b, tol) {
        Ok(q) => Ok(Some(CongruenceWitness { sigma, signs, q })),
        Err(Error::NoWitness) => Ok(None),
        Err(e) => Err(e),
    }
}

fn require_full_column_rank(m: &Matrix, tol: &Tolerance) -> Result<()> {
    let r = numkit::rank(m, tol);
    if r < m.cols() {
        return Err(Error::Degenerate {
            required: m.cols(),
            rank: r,
        });
    }
    Ok(())
}

/// Evaluates conditions (1) `AᵀA = BᵀB` and (2) `AAᵀ = BBᵀ`, and derives
/// condition (3) `A Q₁ R = B Q₂ S` when both hold.
pub fn check_conditions(a: &Matrix, b: &Matrix, tol: &Tolerance) -> Result<ConditionReport> {
    same_size(a, b, "check conditions")?;
    require_full_column_rank(a, tol)?;
    require_full_column_rank(b, tol)?;
    let c1 = matrices_eq(&numkit::gram(a), &numkit::gram(b), tol);
    let c2 = matrices_eq(&numkit::gram(&a.transpose()), &numkit::gram(&b.transpose()), tol);
    let (c3, derivation_note) = match (c1, c2) {
        (true, true) => {
            let (_, r) = numkit::qr_decompose(a, tol)?;
            let (_, s) = numkit::qr_decompose(b, tol)?;
            let q1 = find_orthogonal(&r, &s, tol)?;
            let q2 = find_orthogonal(&a.transpose(), &b.transpose(), tol)?;
            if !verify_condition3_with(a, b, &r, &s, &q1, &q2, tol)? {
                return Err(Error::Inconsistent("A Q1 R = B Q2 S"));
            }
            (
                Condition3::Holds { q1, q2 },
                "(1) and (2) hold: S = Q1 R and B^T = Q2 A^T give A Q1 R = A S = B Q2 S",
            )
        }
        (true, false) => (
            Condition3::Fails,
            "(1) holds and (2) fails; (3) with (1) would force (2)",
        ),
        (false, true) => (
            Condition3::Fails,
            "(2) holds and (1) fails; (3) with (2) would force (1)",
        ),
        (false, false) => (
            Condition3::Undetermined,
            "neither (1) nor (2) holds; (3) is only checked against supplied witnesses",
        ),
    };
    Ok(ConditionReport {
        c1,
        c2,
        c3,
        derivation_note,
    })
}

fn check_orthogonal(q: &Matrix, k: usize, tol: &Tolerance) -> Result<()> {
    if q.rows() != k || q.cols() != k {
        return Err(Error::Dimension {
            op: "orthogonal witness",
            expected: k,
            found: if q.rows() != k { q.rows() } else { q.cols() },
        });
    }
    if !q.has_orthonormal_columns(tol) {
        return Err(Error::Inconsistent("witness is not orthogonal"));
    }
    Ok(())
}

/// Tests `A q1 R = B q2 S` for explicit upper triangular factors with
/// `RᵀR = AᵀA` and `SᵀS = BᵀB`.
pub fn verify_condition3_with(
    a: &Matrix,
    b: &Matrix,
    r: &Matrix,
    s: &Matrix,
    q1: &Matrix,
    q2: &Matrix,
    tol: &Tolerance,
) -> Result<bool> {
    same_size(a, b, "condition (3)")?;
    let k = a.cols();
    for (m, g) in [(r, a), (s, b)] {
        if m.rows() != k || m.cols() != k {
            return Err(Error::Dimension {
                op: "triangular factor",
                expected: k,
                found: m.rows(),
            });
        }
        if !m.is_upper_triangular(tol) {
            return Err(Error::Inconsistent("factor is not upper triangular"));
        }
        if !matrices_eq(&numkit::gram(m), &numkit::gram(g), tol) {
            return Err(Error::Inconsistent("factor does not reproduce the Gram matrix"));
        }
    }
    check_orthogonal(q1, k, tol)?;
    check_orthogonal(q2, k, tol)?;
    let left = a.mul(q1).mul(r);
    let right = b.mul(q2).mul(s);
    Ok(matrices_eq(&left, &right, tol))
}

/// Tests `A q1 R = B q2 S` where `R`, `S` range over the triangular factors
/// of `A`, `B`. Those factors are unique up to a diagonal sign matrix, so
/// every sign choice `(J_a R₊, J_b S₊)` of the positive-diagonal factors is
/// tried. Returns the first pair that works.
pub fn condition3_factors(
    a: &Matrix,
    b: &Matrix,
    q1: &Matrix,
    q2: &Matrix,
    tol: &Tolerance,
) -> Result<Option<(Matrix, Matrix)>> {
    same_size(a, b, "condition (3)")?;
    require_full_column_rank(a, tol)?;
    require_full_column_rank(b, tol)?;
    let k = a.cols();
    if k > MAX_SIGN_SEARCH {
        return Err(Error::Capacity {
            limit: MAX_SIGN_SEARCH,
            found: k,
        });
    }
    check_orthogonal(q1, k, tol)?;
    check_orthogonal(q2, k, tol)?;
    let (_, r) = numkit::qr_decompose(a, tol)?;
    let (_, s) = numkit::qr_decompose(b, tol)?;
    let aq1 = a.mul(q1);
    let bq2 = b.mul(q2);
    for ma in 0u32..(1 << k) {
        let rj = SignVector::from_mask(k, ma).diagonal().mul(&r);
        let left = aq1.mul(&rj);
        for mb in 0u32..(1 << k) {
            let sj = SignVector::from_mask(k, mb).diagonal().mul(&s);
            if matrices_eq(&left, &bq2.mul(&sj), tol) {
                return Ok(Some((rj, sj)));
            }
        }
    }
    Ok(None)
}

/// Whether `A q1 R = B q2 S` for some choice of triangular factors `R`, `S`.
pub fn verify_condition3(
    a: &Matrix,
    b: &Matrix,
    q1: &Matrix,
    q2: &Matrix,
    tol: &Tolerance,
) -> Result<bool> {
    Ok(condition3_factors(a, b, q1, q2, tol)?.is_some())
}

/// Compares `A²`, `AᵀA` and `AAᵀ` with their `B` counterparts for square
/// nonsingular matrices; when all agree, `Q = B A⁻¹` satisfies both
/// `B = QA` and `Bᵀ = QAᵀ`.
pub fn square_comparison(a: &Matrix, b: &Matrix, tol: &Tolerance) -> Result<SquareComparison> {
    same_size(a, b, "square comparison")?;
    if !a.is_square() {
        return Err(Error::Dimension {
            op: "square comparison",
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let a_inv = numkit::inverse(a)?;
    numkit::inverse(b)?;
    let a2_eq_b2 = matrices_eq(&a.mul(a), &b.mul(b), tol);
    let gram_eq = matrices_eq(&numkit::gram(a), &numkit::gram(b), tol);
    let rowgram_eq = matrices_eq(&numkit::gram(&a.transpose()), &numkit::gram(&b.transpose()), tol);
    let shared_q = if a2_eq_b2 && gram_eq && rowgram_eq {
        let q = b.mul(&a_inv);
        let ok = q.has_orthonormal_columns(tol)
            && matrices_eq(&q.mul(a), b, tol)
            && matrices_eq(&q.mul(&a.transpose()), &b.transpose(), tol);
        if !ok {
            return Err(Error::Inconsistent("shared orthogonal factor"));
        }
        Some(q)
    } else {
        None
    };
    Ok(SquareComparison {
        a2_eq_b2,
        gram_eq,
        rowgram_eq,
        shared_q,
    })
}
