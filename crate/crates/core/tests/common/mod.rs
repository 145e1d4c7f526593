//! Test-only oracles and fixtures.
//!
//! Nothing here calls the library's geometry: determinants and ranks use
//! exact fraction-free integer elimination, vertices and facets are found by
//! brute force over the cube-corner images.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zonokit_core::{Matrix, Tolerance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tol() -> Tolerance {
    Tolerance::default()
}

pub fn m<R: AsRef<[f64]>>(rows: &[R]) -> Matrix {
    Matrix::from_rows(rows).unwrap()
}

pub fn a0() -> Matrix {
    m(&[
        [1.0, 0.0, 1.0, 0.0, -1.0],
        [0.0, 1.0, 1.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 1.0, 1.0],
    ])
}

pub fn a0_int() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 1, 0, -1],
        vec![0, 1, 1, 0, 1],
        vec![0, 0, 0, 1, 1],
    ]
}

pub fn a_eps(eps: f64) -> Matrix {
    let mut a = a0();
    a[(2, 2)] = eps;
    a
}

/// The four pairs with equal row and column Gram matrices.
pub fn pairs() -> Vec<(Matrix, Matrix)> {
    let s2 = 2f64.sqrt();
    vec![
        (
            m(&[[5.0, 1.0], [1.0, 3.0]]),
            m(&[[3.0, 2.0], [2.0, -1.0]]).scale(s2),
        ),
        (
            m(&[[3.0, -12.0], [4.0, -3.0], [12.0, 4.0]]).scale(1.0 / 13.0),
            m(&[[15.0, -9.0], [7.0, 1.0], [8.0, 16.0]]).scale(s2 / 26.0),
        ),
        (
            m(&[[1.0, 2.0], [3.0, 4.0]]),
            m(&[[46.0, 48.0], [82.0, 124.0]]).scale(1.0 / 884f64.sqrt()),
        ),
        (
            m(&[[26.0, 8.0], [24.0, 2.0], [18.0, -16.0], [32.0, 26.0]]),
            m(&[[17.0, 9.0], [13.0, 11.0], [1.0, 17.0], [29.0, 3.0]]).scale(s2),
        ),
    ]
}

pub fn to_int(a: &[Vec<i64>]) -> Matrix {
    let rows: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    m(&rows)
}

pub fn select_int(a: &[Vec<i64>], cols: &[usize]) -> Vec<Vec<i64>> {
    a.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect()
}

/// Exact determinant by Bareiss elimination.
pub fn exact_det(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    let mut w: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if w[k][k] == 0 {
            match (k + 1..n).find(|&i| w[i][k] != 0) {
                Some(i) => {
                    w.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
            }
        }
        prev = w[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * w[n - 1][n - 1]
    }
}

/// Exact rank by fraction-free elimination.
pub fn exact_rank(a: &[Vec<i64>]) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut w: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| w[i][c] != 0) else {
            continue;
        };
        w.swap(p, rank);
        for i in rank + 1..rows {
            let (f, g) = (w[i][c], w[rank][c]);
            for j in 0..cols {
                w[i][j] = w[i][j] * g - w[rank][j] * f;
            }
            let d = w[i].iter().fold(0i128, |acc, &x| gcd(acc, x));
            if d > 1 {
                for x in &mut w[i] {
                    *x /= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Σ |det| over all n-column subsets, exactly.
pub fn exact_minor_sum(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    subsets(a[0].len(), n)
        .iter()
        .map(|s| exact_det(&select_int(a, s)).abs())
        .sum()
}

/// Maximal column subsets of exact rank `s`.
pub fn exact_generating_faces(a: &[Vec<i64>], s: usize) -> Vec<Vec<usize>> {
    let k = a[0].len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for size in s..=k {
        for sub in subsets(k, size) {
            if exact_rank(&select_int(a, &sub)) != s {
                continue;
            }
            let maximal = (0..k).filter(|j| !sub.contains(j)).all(|j| {
                let mut with = sub.clone();
                with.push(j);
                exact_rank(&select_int(a, &with)) > s
            });
            if maximal {
                out.push(sub);
            }
        }
    }
    out.sort();
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// All `Σ ε_i a_i`, deduplicated at 1e-9, in binary order of `ε`.
pub fn corner_images(a: &Matrix) -> Vec<Vec<f64>> {
    let k = a.cols();
    let mut out: Vec<Vec<f64>> = Vec::new();
    for mask in 0u32..(1 << k) {
        let mut p = vec![0.0; a.rows()];
        for j in 0..k {
            if mask >> j & 1 == 1 {
                for i in 0..a.rows() {
                    p[i] += a[(i, j)];
                }
            }
        }
        if !out.iter().any(|q| sub(q, &p).iter().all(|d| d.abs() < 1e-9)) {
            out.push(p);
        }
    }
    out
}

/// Solves the small symmetric system `g x = r` by Gaussian elimination;
/// `None` when nearly singular.
fn solve(mut g: Vec<Vec<f64>>, mut r: Vec<f64>) -> Option<Vec<f64>> {
    let n = r.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| g[i][k].abs().total_cmp(&g[j][k].abs()))?;
        if g[p][k].abs() < 1e-10 {
            return None;
        }
        g.swap(p, k);
        r.swap(p, k);
        for i in k + 1..n {
            let f = g[i][k] / g[k][k];
            for j in k..n {
                g[i][j] -= f * g[k][j];
            }
            r[i] -= f * r[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| g[k][j] * x[j]).sum();
        x[k] = (r[k] - s) / g[k][k];
    }
    Some(x)
}

/// Whether `p` lies in the simplex spanned by `qs` (affinely independent).
fn in_simplex(p: &[f64], qs: &[&Vec<f64>]) -> bool {
    let base = qs[0];
    let edges: Vec<Vec<f64>> = qs[1..].iter().map(|q| sub(q, base)).collect();
    let d = edges.len();
    if d == 0 {
        return sub(p, base).iter().all(|x| x.abs() < 1e-9);
    }
    let g: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| dot(&edges[i], &edges[j])).collect()).collect();
    let rel = sub(p, base);
    let r: Vec<f64> = edges.iter().map(|e| dot(e, &rel)).collect();
    let Some(lambda) = solve(g, r) else {
        return false;
    };
    let mut back = base.clone();
    for (l, e) in lambda.iter().zip(&edges) {
        for (b, x) in back.iter_mut().zip(e) {
            *b += l * x;
        }
    }
    let fits = sub(&back, p).iter().all(|x| x.abs() < 1e-9);
    fits && lambda.iter().all(|&l| l >= -1e-9) && lambda.iter().sum::<f64>() <= 1.0 + 1e-9
}

/// Extreme points among `points`: `p` is not extreme iff it lies in a
/// simplex of at most `n + 1` other points.
pub fn hull_vertices(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = points[0].len();
    points
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<&Vec<f64>> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, q)| q)
                .collect();
            !(2..=n + 1).any(|size| {
                subsets(others.len(), size.min(others.len())).iter().any(|s| {
                    let qs: Vec<&Vec<f64>> = s.iter().map(|&j| others[j]).collect();
                    in_simplex(p, &qs)
                })
            })
        })
        .map(|(_, p)| p.clone())
        .collect()
}

fn cross3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// A facet found by the support-function oracle.
#[derive(Clone, Debug)]
pub struct OracleFacet {
    pub normal: [f64; 3],
    pub support: f64,
    /// Points of the candidate set lying on the facet.
    pub points: Vec<Vec<f64>>,
}

/// Facets of the hull of `points` in R³: every plane through three points
/// that supports the set and touches it in a 2-dimensional face.
pub fn facets_3d(points: &[Vec<f64>]) -> Vec<OracleFacet> {
    let scale: f64 = points.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
    let eps = 1e-9 * scale;
    let mut found: Vec<OracleFacet> = Vec::new();
    for t in subsets(points.len(), 3) {
        let (p, q, r) = (&points[t[0]], &points[t[1]], &points[t[2]]);
        let c = cross3(&sub(q, p), &sub(r, p));
        let len = dot(&c, &c).sqrt();
        if len < 1e-9 {
            continue;
        }
        for s in [1.0, -1.0] {
            let u = [s * c[0] / len, s * c[1] / len, s * c[2] / len];
            let h = dot(&u, p);
            if points.iter().any(|x| dot(&u, x) > h + eps) {
                continue;
            }
            if found
                .iter()
                .any(|f| (0..3).all(|i| (f.normal[i] - u[i]).abs() < 1e-9) && (f.support - h).abs() < eps)
            {
                continue;
            }
            let on: Vec<Vec<f64>> = points
                .iter()
                .filter(|x| (dot(&u, x) - h).abs() <= eps)
                .cloned()
                .collect();
            found.push(OracleFacet {
                normal: u,
                support: h,
                points: on,
            });
        }
    }
    found
}

/// Area of a simple polygon given in order.
pub fn shoelace(poly: &[Vec<f64>]) -> f64 {
    let n = poly.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (p, q) = (&poly[i], &poly[(i + 1) % n]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum();
    twice.abs() / 2.0
}

/// Points of a planar convex set sorted by angle about their centroid.
pub fn angular_order(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = points.iter().map(|p| p[1]).sum::<f64>() / n;
    let mut v = points.to_vec();
    v.sort_by(|a, b| (a[1] - cy).atan2(a[0] - cx).total_cmp(&(b[1] - cy).atan2(b[0] - cx)));
    v
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let data: Vec<f64> = (0..rows * cols).map(|_| rng.gen_range(-2.0..2.0)).collect();
    Matrix::new(rows, cols, data).unwrap()
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

/// Random orthogonal `n × n` matrix by modified Gram–Schmidt on a random
/// Gaussian-like matrix.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let mut basis: Vec<Vec<f64>> = Vec::new();
        let mut ok = true;
        for mut v in cols {
            for b in &basis {
                let d = dot(&v, b);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= d * y;
                }
            }
            let len = dot(&v, &v).sqrt();
            if len < 1e-3 {
                ok = false;
                break;
            }
            basis.push(v.iter().map(|x| x / len).collect());
        }
        if ok {
            return Matrix::from_columns(&basis).unwrap();
        }
    }
}

pub fn random_signed_permutation(rng: &mut ChaCha8Rng, k: usize) -> (Vec<usize>, Vec<i8>) {
    let mut sigma: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        let j = rng.gen_range(0..=i);
        sigma.swap(i, j);
    }
    let signs = (0..k).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    (sigma, signs)
}

/// A random point of `Z(A)`: `A x` for uniform `x` in the cube.
pub fn sample_zonotope(rng: &mut ChaCha8Rng, a: &Matrix) -> Vec<f64> {
    let x: Vec<f64> = (0..a.cols()).map(|_| rng.gen_range(0.0..1.0)).collect();
    a.mul_vec(&x)
}

/// Parallelotope coordinates of `p` in `translation + Z(cols)` (square case).
pub fn tile_coordinates(a: &Matrix, cols: &[usize], translation: &[f64], p: &[f64]) -> Option<Vec<f64>> {
    let t = a.select_columns(cols);
    let n = t.rows();
    let g: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| t[(i, j)]).collect()).collect();
    solve(g, sub(p, translation))
}

/// How many tiles contain `p` in their interior (coordinates in `(δ, 1-δ)`)
/// and in their closure (coordinates in `[-δ, 1+δ]`).
pub fn cover_count(a: &Matrix, tiles: &[(Vec<usize>, Vec<f64>)], p: &[f64], delta: f64) -> (usize, usize) {
    let mut interior = 0;
    let mut closure = 0;
    for (cols, t) in tiles {
        let Some(x) = tile_coordinates(a, cols, t, p) else {
            continue;
        };
        if x.iter().all(|&c| c > delta && c < 1.0 - delta) {
            interior += 1;
        }
        if x.iter().all(|&c| c >= -delta && c <= 1.0 + delta) {
            closure += 1;
        }
    }
    (interior, closure)
}
