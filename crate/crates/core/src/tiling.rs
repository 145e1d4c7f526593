//! Parallelotope tilings of zonotopes.
//!
//! Generators are added one at a time. A generator outside the span of the
//! current prefix extends every tile to a prism. A generator `g` inside the
//! span sweeps the surface of the prefix zonotope visible from `g`: each
//! visible facet is tiled recursively (in its own dimension) and every facet
//! tile is extended by `g`. The new tiles form the cup of cubes of `g`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numkit::{self, vector, Matrix, Tolerance, Vector};
use crate::subsets::combinations;
use crate::zonotope::{BoundingFacet, Zonotope};

/// `translation + Z(columns)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tile {
    /// Generator indices, ascending.
    pub columns: Vec<usize>,
    pub translation: Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tiling {
    pub tiles: Vec<Tile>,
    /// Generator order used by the induction.
    pub order: Vec<usize>,
}

impl Tiling {
    /// Tiles created when `generator` was added: those whose latest
    /// generator in the construction order is `generator`.
    pub fn cup(&self, generator: usize) -> Vec<&Tile> {
        let position = |g: usize| self.order.iter().position(|&o| o == g);
        self.tiles
            .iter()
            .filter(|t| {
                t.columns.iter().copied().max_by_key(|&c| position(c)) == Some(generator)
            })
            .collect()
    }
}

/// The tiles added by one induction step.
#[derive(Clone, Debug, PartialEq)]
pub struct CupOfCubes {
    pub new_generator: usize,
    pub tiles: Vec<Tile>,
}

/// Bounding facets of `z` whose outward normal makes a positive angle with
/// `direction` (beyond `tol`).
pub fn visible_surface(z: &Zonotope, direction: &[f64], tol: &Tolerance) -> Result<Vec<BoundingFacet>> {
    if direction.len() != z.dim() {
        return Err(Error::Dimension {
            op: "visible surface",
            expected: z.dim(),
            found: direction.len(),
        });
    }
    let norm = vector::norm(direction);
    if norm == 0.0 {
        return Err(Error::Degenerate {
            required: 1,
            rank: 0,
        });
    }
    let threshold = tol.bound(norm);
    Ok(z
        .bounding_facets()?
        .iter()
        .filter(|f| vector::dot(&f.unit_normal, direction) > threshold)
        .cloned()
        .collect())
}

fn rank_of(vectors: &[Vector], tol: &Tolerance) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Matrix::from_columns(vectors).expect("vectors share one length");
    numkit::rank(&m, tol)
}

/// Tiles for adding `v` (labelled `id`) to a prefix whose span contains it.
fn sweep(prefix: &[Vector], ids: &[usize], v: &[f64], id: usize, tol: &Tolerance) -> Result<Vec<Tile>> {
    let s = rank_of(prefix, tol);
    if s == 1 {
        let u = &prefix[0];
        let along = vector::dot(u, v) > 0.0;
        let end: Vec<&[f64]> = prefix
            .iter()
            .filter(|a| (vector::dot(u, a) > 0.0) == along)
            .map(|a| a.as_slice())
            .collect();
        return Ok(vec![Tile {
            columns: vec![id],
            translation: vector::sum(v.len(), end),
        }]);
    }
    let z = Zonotope::new(Matrix::from_columns(prefix)?, *tol)?;
    let mut out = Vec::new();
    for facet in visible_surface(&z, v, tol)? {
        let sub: Vec<Vector> = facet.face.columns.iter().map(|&c| prefix[c].clone()).collect();
        let sub_ids: Vec<usize> = facet.face.columns.iter().map(|&c| ids[c]).collect();
        for t in tile_vectors(&sub, &sub_ids, v.len(), tol)? {
            let mut columns = t.columns;
            columns.push(id);
            columns.sort_unstable();
            out.push(Tile {
                columns,
                translation: vector::add(&facet.translation, &t.translation),
            });
        }
    }
    Ok(out)
}

fn tile_vectors(vectors: &[Vector], ids: &[usize], dim: usize, tol: &Tolerance) -> Result<Vec<Tile>> {
    let mut tiles = vec![Tile {
        columns: Vec::new(),
        translation: vec![0.0; dim],
    }];
    let mut rank = 0;
    for j in 0..vectors.len() {
        let grown = rank_of(&vectors[..=j], tol);
        if grown > rank {
            rank = grown;
            for t in &mut tiles {
                t.columns.push(ids[j]);
                t.columns.sort_unstable();
            }
        } else {
            tiles.extend(sweep(&vectors[..j], &ids[..j], &vectors[j], ids[j], tol)?);
        }
    }
    Ok(tiles)
}

fn check_order(order: &[usize], k: usize) -> Result<()> {
    if order.len() != k {
        return Err(Error::Dimension {
            op: "generator order",
            expected: k,
            found: order.len(),
        });
    }
    let mut seen = vec![false; k];
    for &i in order {
        if i >= k {
            return Err(Error::OutOfRange {
                what: "generator index",
                value: i,
                max: k - 1,
            });
        }
        if seen[i] {
            return Err(Error::Inconsistent("generator order repeats an index"));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Tiles a full-rank zonotope by translates of its generating
/// parallelotopes, adding generators in `order`.
pub fn tile_zonotope(z: &Zonotope, order: &[usize]) -> Result<Tiling> {
    if z.rank() < z.dim() {
        return Err(Error::Degenerate {
            required: z.dim(),
            rank: z.rank(),
        });
    }
    check_order(order, z.generator_count())?;
    let vectors: Vec<Vector> = order.iter().map(|&i| z.generator(i)).collect();
    let tiles = tile_vectors(&vectors, order, z.dim(), z.tolerance())?;
    Ok(Tiling {
        tiles,
        order: order.to_vec(),
    })
}

/// Tiling with generators in their natural order.
pub fn tile_zonotope_natural(z: &Zonotope) -> Result<Tiling> {
    let order: Vec<usize> = (0..z.generator_count()).collect();
    tile_zonotope(z, &order)
}

/// The tiles that fill `Z(prefix, new_gen) \ Z(prefix)` for a full-rank
/// prefix. Prefix generators keep their indices; the new one is `new_index`.
pub fn cup_of_cubes(prefix: &Zonotope, new_gen: &[f64], new_index: usize) -> Result<CupOfCubes> {
    if prefix.rank() < prefix.dim() {
        return Err(Error::Degenerate {
            required: prefix.dim(),
            rank: prefix.rank(),
        });
    }
    if new_gen.len() != prefix.dim() {
        return Err(Error::Dimension {
            op: "cup of cubes",
            expected: prefix.dim(),
            found: new_gen.len(),
        });
    }
    if vector::norm(new_gen) == 0.0 {
        return Err(Error::Degenerate {
            required: 1,
            rank: 0,
        });
    }
    let vectors = prefix.matrix().columns();
    let ids: Vec<usize> = (0..vectors.len()).collect();
    let tiles = sweep(&vectors, &ids, new_gen, new_index, prefix.tolerance())?;
    Ok(CupOfCubes {
        new_generator: new_index,
        tiles,
    })
}

/// Outcome of [`validate_tiling`]; an empty failure list means the check passed.
#[derive(Clone, Debug, PartialEq)]
pub struct TilingReport {
    pub full_rank: bool,
    pub volume: f64,
    pub tile_volume_sum: f64,
    pub volume_ok: bool,
    /// Column sets tiled more than once.
    pub duplicates: Vec<Vec<usize>>,
    /// Independent column sets with no tile.
    pub missing: Vec<Vec<usize>>,
    /// Tiles whose columns are not `n` independent generators (by tile index).
    pub degenerate: Vec<usize>,
    /// Tile pairs whose interiors meet.
    pub overlaps: Vec<(usize, usize)>,
    /// Tiles with a vertex outside the zonotope.
    pub outside: Vec<usize>,
}

impl TilingReport {
    pub fn passed(&self) -> bool {
        self.full_rank
            && self.volume_ok
            && self.duplicates.is_empty()
            && self.missing.is_empty()
            && self.degenerate.is_empty()
            && self.overlaps.is_empty()
            && self.outside.is_empty()
    }
}

fn tile_generators(z: &Zonotope, t: &Tile) -> Vec<Vector> {
    t.columns.iter().map(|&c| z.generator(c)).collect()
}

/// Whether the interiors of two `n`-parallelotopes are disjoint. `P - Q` is
/// the zonotope `c + Z([A_P, A_Q])`; the interiors meet iff the origin is
/// interior to it, which is decided on its facet normals.
fn interiors_disjoint(
    tp: &[f64],
    gp: &[Vector],
    tq: &[f64],
    gq: &[Vector],
    tol: &Tolerance,
) -> bool {
    let n = tp.len();
    let mut gens: Vec<Vector> = gp.to_vec();
    gens.extend(gq.iter().map(|g| vector::scale(g, -1.0)));
    let c = vector::sub(tp, tq);
    let scale: f64 = gens.iter().map(|g| vector::norm(g)).sum::<f64>() + vector::norm(&c);
    for subset in combinations(gens.len(), n - 1) {
        let chosen: Vec<&Vector> = subset.iter().map(|&i| &gens[i]).collect();
        let Ok(cross) = numkit::cross_product(&chosen) else {
            continue;
        };
        let len = vector::norm(&cross);
        if len <= tol.bound(libm::pow(scale, (n - 1) as f64)) {
            continue;
        }
        let u = vector::scale(&cross, 1.0 / len);
        let base = vector::dot(&u, &c);
        let (mut lo, mut hi) = (base, base);
        for g in &gens {
            let p = vector::dot(&u, g);
            if p > 0.0 {
                hi += p;
            } else {
                lo += p;
            }
        }
        if hi <= tol.bound(scale) || lo >= -tol.bound(scale) {
            return true;
        }
    }
    false
}

/// Checks a tiling: volume sum, column-set census, pairwise interior
/// disjointness and containment in the zonotope.
pub fn validate_tiling(z: &Zonotope, t: &Tiling, tol: &Tolerance) -> TilingReport {
    let n = z.dim();
    let full_rank = z.rank() == n;
    let volume = z.volume().value;

    let mut degenerate = Vec::new();
    let mut tile_volume_sum = 0.0;
    for (i, tile) in t.tiles.iter().enumerate() {
        let in_range = tile.columns.iter().all(|&c| c < z.generator_count());
        let ok = in_range && tile.columns.len() == n && tile.translation.len() == n && {
            let m = z.matrix().select_columns(&tile.columns);
            let d = numkit::determinant(&m).unwrap_or(0.0);
            tile_volume_sum += d.abs();
            numkit::rank(&m, tol) == n
        };
        if !ok {
            degenerate.push(i);
        }
    }
    let volume_ok = (tile_volume_sum - volume).abs() <= 1e-8 * volume.max(f64::MIN_POSITIVE);

    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut duplicates = Vec::new();
    for tile in &t.tiles {
        let mut cols = tile.columns.clone();
        cols.sort_unstable();
        if seen.contains(&cols) {
            if !duplicates.contains(&cols) {
                duplicates.push(cols);
            }
        } else {
            seen.push(cols);
        }
    }
    let missing: Vec<Vec<usize>> = if full_rank {
        combinations(z.generator_count(), n)
            .filter(|s| numkit::rank(&z.matrix().select_columns(s), tol) == n)
            .filter(|s| !seen.contains(s))
            .collect()
    } else {
        Vec::new()
    };

    let usable: Vec<usize> = (0..t.tiles.len()).filter(|i| !degenerate.contains(i)).collect();
    let gens: Vec<Vec<Vector>> = t.tiles.iter().map(|tile| {
        if tile.columns.iter().all(|&c| c < z.generator_count()) {
            tile_generators(z, tile)
        } else {
            Vec::new()
        }
    }).collect();
    let mut overlaps = Vec::new();
    if n >= 2 {
        for (a, &i) in usable.iter().enumerate() {
            for &j in &usable[a + 1..] {
                let (ti, tj) = (&t.tiles[i], &t.tiles[j]);
                if !interiors_disjoint(&ti.translation, &gens[i], &tj.translation, &gens[j], tol) {
                    overlaps.push((i, j));
                }
            }
        }
    } else {
        for (a, &i) in usable.iter().enumerate() {
            for &j in &usable[a + 1..] {
                let span = |k: usize| {
                    let t0 = t.tiles[k].translation[0];
                    let t1 = t0 + gens[k][0][0];
                    (t0.min(t1), t0.max(t1))
                };
                let ((a0, a1), (b0, b1)) = (span(i), span(j));
                let slack = tol.bound(z.scale());
                if a1.min(b1) - a0.max(b0) > slack {
                    overlaps.push((i, j));
                }
            }
        }
    }

    let mut outside = Vec::new();
    if full_rank {
        let facets: Vec<(Vector, f64)> = if n >= 2 {
            z.bounding_facets()
                .map(|f| f.iter().map(|b| (b.unit_normal.clone(), b.support)).collect())
                .unwrap_or_default()
        } else {
            let v = z.vertices().unwrap_or_default();
            let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), p| {
                (l.min(p[0]), h.max(p[0]))
            });
            vec![(vec![1.0], hi), (vec![-1.0], -lo)]
        };
        let slack = tol.bound(z.scale());
        for &i in &usable {
            let tile = &t.tiles[i];
            let g = &gens[i];
            let inside = (0u32..(1 << g.len())).all(|mask| {
                let mut p = tile.translation.clone();
                for (b, gb) in g.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        vector::axpy(&mut p, 1.0, gb);
                    }
                }
                facets.iter().all(|(u, h)| vector::dot(u, &p) <= h + slack)
            });
            if !inside {
                outside.push(i);
            }
        }
    }

    TilingReport {
        full_rank,
        volume,
        tile_volume_sum,
        volume_ok,
        duplicates,
        missing,
        degenerate,
        overlaps,
        outside,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[f64]]) -> Zonotope {
        Zonotope::new(Matrix::from_rows(rows).unwrap(), Tolerance::default()).unwrap()
    }

    fn a0() -> Zonotope {
        z(&[
            &[1.0, 0.0, 1.0, 0.0, -1.0],
            &[0.0, 1.0, 1.0, 0.0, 1.0],
            &[0.0, 0.0, 0.0, 1.0, 1.0],
        ])
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn cube_is_one_tile() {
        let cube = Zonotope::new(Matrix::identity(3), tol()).unwrap();
        for order in [[0, 1, 2], [2, 0, 1]] {
            let t = tile_zonotope(&cube, &order).unwrap();
            assert_eq!(t.tiles.len(), 1);
            assert_eq!(t.tiles[0].translation, vec![0.0; 3]);
            assert_eq!(t.tiles[0].columns, vec![0, 1, 2]);
        }
    }

    #[test]
    fn hexagon_has_three_tiles() {
        let hex = z(&[&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]]);
        let t = tile_zonotope_natural(&hex).unwrap();
        assert_eq!(t.tiles.len(), 3);
        let rep = validate_tiling(&hex, &t, &tol());
        assert!(rep.passed(), "{rep:?}");
        assert!((rep.tile_volume_sum - 3.0).abs() < 1e-12);
    }

    #[test]
    fn a0_has_nine_tiles_without_the_dependent_triple() {
        let za = a0();
        let t = tile_zonotope_natural(&za).unwrap();
        assert_eq!(t.tiles.len(), 9);
        assert!(t.tiles.iter().all(|tile| tile.columns != vec![0, 1, 2]));
        let rep = validate_tiling(&za, &t, &tol());
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn visible_surface_examples() {
        let cube = Zonotope::new(Matrix::identity(3), tol()).unwrap();
        let top = visible_surface(&cube, &[0.0, 0.0, 1.0], &tol()).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].face.columns, vec![0, 1]);
        assert_eq!(top[0].translation, vec![0.0, 0.0, 1.0]);
        let diag = visible_surface(&cube, &[1.0, 1.0, 1.0], &tol()).unwrap();
        assert_eq!(diag.len(), 3);
        assert!(visible_surface(&cube, &[0.0; 3], &tol()).is_err());
    }

    #[test]
    fn cup_examples() {
        let cube = Zonotope::new(Matrix::identity(3), tol()).unwrap();
        let cup = cup_of_cubes(&cube, &[1.0, 1.0, 1.0], 3).unwrap();
        assert_eq!(cup.tiles.len(), 3);
        assert!(cup.tiles.iter().all(|t| t.columns.contains(&3)));
        let square = Zonotope::new(Matrix::identity(2), tol()).unwrap();
        assert_eq!(cup_of_cubes(&square, &[1.0, 1.0], 2).unwrap().tiles.len(), 2);
    }

    #[test]
    fn validate_catches_corruption() {
        let za = a0();
        let good = tile_zonotope_natural(&za).unwrap();

        let mut dup = good.clone();
        dup.tiles.push(dup.tiles[3].clone());
        let rep = validate_tiling(&za, &dup, &tol());
        assert!(!rep.passed());
        assert_eq!(rep.duplicates.len(), 1);

        let mut shifted = good.clone();
        shifted.tiles[4].translation[0] += 0.1;
        let rep = validate_tiling(&za, &shifted, &tol());
        assert!(!rep.overlaps.is_empty() || !rep.outside.is_empty());

        let mut dropped = good;
        dropped.tiles.remove(0);
        let rep = validate_tiling(&za, &dropped, &tol());
        assert_eq!(rep.missing.len(), 1);
        assert!(!rep.volume_ok);
    }

    #[test]
    fn one_dimensional_tiling() {
        let seg = z(&[&[1.0, -2.0, 3.0]]);
        let t = tile_zonotope_natural(&seg).unwrap();
        assert_eq!(t.tiles.len(), 3);
        assert!(validate_tiling(&seg, &t, &tol()).passed());
    }

    #[test]
    fn rank_deficient_input_is_rejected() {
        let flat = z(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            tile_zonotope_natural(&flat),
            Err(Error::Degenerate { .. })
        ));
        let za = a0();
        assert!(tile_zonotope(&za, &[0, 1, 2, 3]).is_err());
        assert!(tile_zonotope(&za, &[0, 1, 2, 3, 3]).is_err());
    }
}
