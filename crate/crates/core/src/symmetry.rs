//! Point reflections, symmetric cones and central-symmetry tests.
//!
//! Point sets are finite lists of vectors of a common dimension. Symmetry of
//! a polytope is decided on its vertex set.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numkit::{vector, Tolerance, Vector};

/// Why a set or loop failed the symmetry test.
#[derive(Clone, Debug, PartialEq)]
pub enum Failure {
    /// `point` has no partner: `missing = 2c - point` is not in the set.
    Unmatched { point: Vector, missing: Vector },
    /// A loop with an odd number of segments is never symmetric.
    OddSegmentCount { count: usize },
    /// Segment `index` is not the reverse of segment `index + t`.
    Segment {
        index: usize,
        displacement: Vector,
        opposite: Vector,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub symmetric: bool,
    /// The center of symmetry when `symmetric`, else the tested candidate
    /// (if one was formed).
    pub center: Option<Vector>,
    pub failure: Option<Failure>,
}

/// A closed polygonal chain of directed segments.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentLoop {
    segments: Vec<(Vector, Vector)>,
}

impl SegmentLoop {
    /// Checks that each segment ends where the next one starts (cyclically).
    pub fn new(segments: Vec<(Vector, Vector)>, tol: &Tolerance) -> Result<Self> {
        let Some(first) = segments.first() else {
            return Err(Error::Dimension {
                op: "segment loop",
                expected: 1,
                found: 0,
            });
        };
        let dim = first.0.len();
        for (s, e) in &segments {
            for p in [s, e] {
                if p.len() != dim {
                    return Err(Error::Dimension {
                        op: "segment loop",
                        expected: dim,
                        found: p.len(),
                    });
                }
            }
        }
        let scale = segments
            .iter()
            .flat_map(|(s, e)| s.iter().chain(e))
            .fold(0.0f64, |m, x| m.max(x.abs()));
        let m = segments.len();
        for j in 0..m {
            let end = &segments[j].1;
            let next = &segments[(j + 1) % m].0;
            if !points_eq(end, next, tol, scale) {
                return Err(Error::Inconsistent("segment loop is not closed"));
            }
        }
        Ok(SegmentLoop { segments })
    }

    /// Walks the displacements from `start`; closure is checked as in [`SegmentLoop::new`].
    pub fn from_displacements(start: &[f64], displacements: &[Vector], tol: &Tolerance) -> Result<Self> {
        let mut at = start.to_vec();
        let mut segments = Vec::with_capacity(displacements.len());
        for d in displacements {
            if d.len() != at.len() {
                return Err(Error::Dimension {
                    op: "segment loop",
                    expected: at.len(),
                    found: d.len(),
                });
            }
            let next = vector::add(&at, d);
            segments.push((at, next.clone()));
            at = next;
        }
        SegmentLoop::new(segments, tol)
    }

    /// The closed boundary of a polygon given by its vertices in order.
    pub fn from_polygon(vertices: &[Vector], tol: &Tolerance) -> Result<Self> {
        let m = vertices.len();
        let segments = (0..m)
            .map(|j| (vertices[j].clone(), vertices[(j + 1) % m].clone()))
            .collect();
        SegmentLoop::new(segments, tol)
    }

    pub fn segments(&self) -> &[(Vector, Vector)] {
        &self.segments
    }
}

fn points_eq(a: &[f64], b: &[f64], tol: &Tolerance, scale: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| tol.eq_at_scale(*x, *y, scale))
}

fn common_dim(x: &[Vector], op: &'static str) -> Result<usize> {
    let Some(first) = x.first() else {
        return Err(Error::Dimension {
            op,
            expected: 1,
            found: 0,
        });
    };
    let dim = first.len();
    if let Some(bad) = x.iter().find(|p| p.len() != dim) {
        return Err(Error::Dimension {
            op,
            expected: dim,
            found: bad.len(),
        });
    }
    Ok(dim)
}

fn check_center(x: &[Vector], c: &[f64], op: &'static str) -> Result<()> {
    let dim = common_dim(x, op)?;
    if c.len() != dim {
        return Err(Error::Dimension {
            op,
            expected: dim,
            found: c.len(),
        });
    }
    Ok(())
}

/// The symmetric image `2c - X`.
pub fn reflect(x: &[Vector], c: &[f64]) -> Result<Vec<Vector>> {
    check_center(x, c, "reflect")?;
    Ok(x.iter()
        .map(|p| c.iter().zip(p).map(|(ci, pi)| 2.0 * ci - pi).collect())
        .collect())
}

/// The section `t·c + (1 - t)·X` of the symmetric cone over `X` at `c`,
/// for `0 ≤ t ≤ 2`.
pub fn cone_section(x: &[Vector], c: &[f64], t: f64) -> Result<Vec<Vector>> {
    if !(0.0..=2.0).contains(&t) {
        return Err(Error::Parameter {
            what: "cone parameter",
            value: t,
        });
    }
    check_center(x, c, "cone section")?;
    Ok(x.iter()
        .map(|p| c.iter().zip(p).map(|(ci, pi)| t * ci + (1.0 - t) * pi).collect())
        .collect())
}

/// Points of `x` with near-duplicates (within `tol`) removed, first occurrence kept.
pub fn dedup_points(x: &[Vector], tol: &Tolerance) -> Vec<Vector> {
    let scale = max_abs(x);
    let mut out: Vec<Vector> = Vec::new();
    for p in x {
        if !out.iter().any(|q| points_eq(p, q, tol, scale)) {
            out.push(p.clone());
        }
    }
    out
}

fn max_abs(x: &[Vector]) -> f64 {
    x.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Decides whether a finite set is centrally symmetric. The only possible
/// center is the centroid of the distinct points.
pub fn central_center(x: &[Vector], tol: &Tolerance) -> Result<SymmetryReport> {
    let dim = common_dim(x, "central center")?;
    let points = dedup_points(x, tol);
    let c = vector::scale(
        &vector::sum(dim, points.iter().map(|p| p.as_slice())),
        1.0 / points.len() as f64,
    );
    let scale = max_abs(&points);
    for p in &points {
        let image: Vector = c.iter().zip(p).map(|(ci, pi)| 2.0 * ci - pi).collect();
        if !points.iter().any(|q| points_eq(q, &image, tol, scale)) {
            return Ok(SymmetryReport {
                symmetric: false,
                center: Some(c),
                failure: Some(Failure::Unmatched {
                    point: p.clone(),
                    missing: image,
                }),
            });
        }
    }
    Ok(SymmetryReport {
        symmetric: true,
        center: Some(c),
        failure: None,
    })
}

/// A loop of `2t` segments is symmetric iff segment `j + t` reverses
/// segment `j` for every `j < t`.
pub fn loop_symmetric(l: &SegmentLoop, tol: &Tolerance) -> SymmetryReport {
    let segs = &l.segments;
    let m = segs.len();
    if m % 2 == 1 {
        return SymmetryReport {
            symmetric: false,
            center: None,
            failure: Some(Failure::OddSegmentCount { count: m }),
        };
    }
    let t = m / 2;
    let scale = segs
        .iter()
        .flat_map(|(s, e)| s.iter().chain(e))
        .fold(0.0f64, |a, x| a.max(x.abs()));
    let center = vector::scale(&vector::add(&segs[0].0, &segs[t].0), 0.5);
    for j in 0..t {
        let d = vector::sub(&segs[j].1, &segs[j].0);
        let o = vector::sub(&segs[j + t].1, &segs[j + t].0);
        let reversed = d.iter().zip(&o).all(|(a, b)| tol.eq_at_scale(*a, -*b, scale));
        if !reversed {
            return SymmetryReport {
                symmetric: false,
                center: Some(center),
                failure: Some(Failure::Segment {
                    index: j,
                    displacement: d,
                    opposite: o,
                }),
            };
        }
    }
    SymmetryReport {
        symmetric: true,
        center: Some(center),
        failure: None,
    }
}

fn cross2(a: &[f64], b: &[f64]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Orders planar points counterclockwise around their centroid, starting
/// from the smallest angle in `(-π, π]`.
pub fn sort_ccw(points: &[Vector]) -> Result<Vec<Vector>> {
    let dim = common_dim(points, "sort ccw")?;
    if dim != 2 {
        return Err(Error::Dimension {
            op: "sort ccw",
            expected: 2,
            found: dim,
        });
    }
    let c = vector::scale(
        &vector::sum(2, points.iter().map(|p| p.as_slice())),
        1.0 / points.len() as f64,
    );
    let mut keyed: Vec<(f64, Vector)> = points
        .iter()
        .map(|p| (libm::atan2(p[1] - c[1], p[0] - c[0]), p.clone()))
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, p)| p).collect())
}

/// Recovers generators of a zonogon from its vertices (strictly convex,
/// counterclockwise) by repeatedly peeling the strip of edge 0.
///
/// Returns `None` when the edge count is odd or an edge is not matched by
/// its opposite.
pub fn zonogon_recognize(polygon: &[Vector], tol: &Tolerance) -> Result<Option<Vec<Vector>>> {
    let dim = common_dim(polygon, "zonogon")?;
    if dim != 2 {
        return Err(Error::Dimension {
            op: "zonogon",
            expected: 2,
            found: dim,
        });
    }
    let m = polygon.len();
    if m < 3 {
        return Err(Error::Dimension {
            op: "zonogon vertices",
            expected: 3,
            found: m,
        });
    }
    let scale = max_abs(polygon);
    let edges: Vec<Vector> = (0..m)
        .map(|j| vector::sub(&polygon[(j + 1) % m], &polygon[j]))
        .collect();
    for j in 0..m {
        let turn = cross2(&edges[j], &edges[(j + 1) % m]);
        if turn <= tol.bound(scale * scale) {
            return Err(Error::NotConvex {
                vertex: (j + 1) % m,
            });
        }
    }
    if m % 2 == 1 {
        return Ok(None);
    }
    let t = m / 2;
    for j in 0..t {
        let paired = edges[j]
            .iter()
            .zip(&edges[j + t])
            .all(|(a, b)| tol.eq_at_scale(*a, -*b, scale));
        if !paired {
            return Ok(None);
        }
    }

    let mut current: Vec<Vector> = polygon.to_vec();
    let mut generators = Vec::with_capacity(t);
    while current.len() > 2 {
        let len = current.len();
        let half = len / 2;
        let g = vector::sub(&current[1], &current[0]);
        let mut next: Vec<Vector> = current[1..=half].to_vec();
        next.extend(current[half + 2..].iter().map(|v| vector::add(v, &g)));
        generators.push(g);
        current = next;
    }
    generators.push(vector::sub(&current[1], &current[0]));
    Ok(Some(generators))
}
