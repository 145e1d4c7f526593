//! Reflection identities, symmetry decisions and zonogon recognition.

mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use zonokit_core::numkit::vector;
use zonokit_core::symmetry::{
    central_center, cone_section, loop_symmetric, reflect, sort_ccw, zonogon_recognize, Failure,
    SegmentLoop,
};
use zonokit_core::{Matrix, Vector, Zonotope};

fn point_set(dim: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(-5.0f64..5.0, dim), 1..12)
}

fn point(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-5.0f64..5.0, dim)
}

fn sets_close(a: &[Vector], b: &[Vector], eps: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(p, q)| vector::max_abs_diff(p, q) <= eps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reflection_compositions(
        (x, c1, c2, c3) in (1usize..=4).prop_flat_map(|d| (point_set(d), point(d), point(d), point(d))),
    ) {
        let back = reflect(&reflect(&x, &c1).unwrap(), &c1).unwrap();
        prop_assert!(sets_close(&back, &x, 1e-10 * 16.0));

        let twice = reflect(&reflect(&x, &c1).unwrap(), &c2).unwrap();
        let shift = vector::scale(&vector::sub(&c2, &c1), 2.0);
        let translated: Vec<Vector> = x.iter().map(|p| vector::add(p, &shift)).collect();
        prop_assert!(sets_close(&twice, &translated, 1e-10 * 16.0));

        let thrice = reflect(&twice, &c3).unwrap();
        let c = vector::add(&vector::sub(&c3, &c2), &c1);
        prop_assert!(sets_close(&thrice, &reflect(&x, &c).unwrap(), 1e-10 * 32.0));
    }

    #[test]
    fn cone_ends_form_a_symmetric_set(
        (x, c) in (1usize..=3).prop_flat_map(|d| (point_set(d), point(d))),
    ) {
        let mut both = cone_section(&x, &c, 0.0).unwrap();
        both.extend(cone_section(&x, &c, 2.0).unwrap());
        let rep = central_center(&both, &tol()).unwrap();
        prop_assert!(rep.symmetric);
        let found = rep.center.unwrap();
        prop_assert!(vector::max_abs_diff(&found, &c) <= 1e-9);
    }

    #[test]
    fn union_and_intersection_keep_the_center(
        (x, y, c) in (1usize..=3).prop_flat_map(|d| (point_set(d), point_set(d), point(d))),
    ) {
        // Symmetrize both about c and share one point pair.
        let mut xs = x.clone();
        xs.extend(reflect(&x, &c).unwrap());
        let mut ys = y.clone();
        ys.extend(reflect(&y, &c).unwrap());
        ys.push(x[0].clone());
        ys.push(reflect(&x[..1], &c).unwrap()[0].clone());

        let mut union = xs.clone();
        union.extend(ys.iter().cloned());
        let inter: Vec<Vector> = xs
            .iter()
            .filter(|p| ys.iter().any(|q| vector::max_abs_diff(p, q) < 1e-12))
            .cloned()
            .collect();
        for set in [&xs, &ys, &union, &inter] {
            let rep = central_center(set, &tol()).unwrap();
            prop_assert!(rep.symmetric);
            prop_assert!(vector::max_abs_diff(&rep.center.unwrap(), &c) <= 1e-9);
        }
    }
}

fn nonparallel_generators(r: &mut rand_chacha::ChaCha8Rng, k: usize) -> Vec<Vector> {
    loop {
        let gens: Vec<Vector> = (0..k)
            .map(|_| {
                let a = r.gen_range(0.0..std::f64::consts::PI);
                let l = r.gen_range(0.3..2.0);
                vec![l * a.cos(), l * a.sin()]
            })
            .collect();
        let separated = (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let c = gens[i][0] * gens[j][1] - gens[i][1] * gens[j][0];
                c.abs() > 0.05 * vector::norm(&gens[i]) * vector::norm(&gens[j])
            })
        });
        if separated {
            return gens;
        }
    }
}

fn same_up_to_sign_and_order(a: &[Vector], b: &[Vector], eps: f64) -> bool {
    let mut used = vec![false; b.len()];
    a.len() == b.len()
        && a.iter().all(|g| {
            let hit = b.iter().enumerate().position(|(j, h)| {
                !used[j]
                    && (vector::max_abs_diff(g, h) < eps
                        || vector::max_abs_diff(g, &vector::scale(h, -1.0)) < eps)
            });
            match hit {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
}

#[test]
fn zonogon_round_trip() {
    let mut r = rng(5);
    for case in 0..100 {
        let k = 2 + case % 5;
        let gens = nonparallel_generators(&mut r, k);
        let a = Matrix::from_columns(&gens).unwrap();
        let z = Zonotope::new(a, tol()).unwrap();
        let polygon = sort_ccw(&z.vertices().unwrap()).unwrap();
        assert_eq!(polygon.len(), 2 * k);
        let found = zonogon_recognize(&polygon, &tol()).unwrap().unwrap();
        assert!(
            same_up_to_sign_and_order(&found, &gens, 1e-9),
            "case {case}: {found:?} vs {gens:?}"
        );
    }
}

#[test]
fn hexagon_recognition_rebuilds_the_vertex_set() {
    let gens = [vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
    let z = Zonotope::new(Matrix::from_columns(&gens).unwrap(), tol()).unwrap();
    let polygon = sort_ccw(&z.vertices().unwrap()).unwrap();
    let found = zonogon_recognize(&polygon, &tol()).unwrap().unwrap();
    let rebuilt = Zonotope::new(Matrix::from_columns(&found).unwrap(), tol()).unwrap();
    // Recognized generators may have flipped signs; compare up to translation.
    let (v1, v2) = (z.vertices().unwrap(), rebuilt.vertices().unwrap());
    let shift = vector::sub(&z.center(), &rebuilt.center());
    assert_eq!(v1.len(), v2.len());
    for v in &v2 {
        let moved = vector::add(v, &shift);
        assert!(v1.iter().any(|w| vector::max_abs_diff(w, &moved) < 1e-12));
    }
}

#[test]
fn loops_accept_symmetric_and_reject_broken() {
    let mut r = rng(9);
    for case in 0..100 {
        let t = 2 + case % 5;
        let disp: Vec<Vector> = (0..t)
            .map(|_| vec![r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)])
            .collect();
        let mut all = disp.clone();
        all.extend(disp.iter().map(|d| vector::scale(d, -1.0)));
        let start = vec![r.gen_range(-1.0..1.0), 0.5, 2.0];
        let l = SegmentLoop::from_displacements(&start, &all, &tol()).unwrap();
        let rep = loop_symmetric(&l, &tol());
        assert!(rep.symmetric);
        let c = rep.center.unwrap();
        let vertices: Vec<Vector> = l.segments().iter().map(|s| s.0.clone()).collect();
        assert!(central_center(&vertices, &tol()).unwrap().symmetric);
        for v in &vertices {
            let image = vector::sub(&vector::scale(&c, 2.0), v);
            assert!(vertices.iter().any(|w| vector::max_abs_diff(w, &image) < 1e-9));
        }

        // Perturb one displacement and its successor so the loop stays closed.
        let mut bent = all.clone();
        let j = r.gen_range(0..all.len() - 1);
        bent[j][0] += 0.25;
        bent[j + 1][0] -= 0.25;
        let l = SegmentLoop::from_displacements(&start, &bent, &tol()).unwrap();
        let rep = loop_symmetric(&l, &tol());
        assert!(!rep.symmetric);
        assert!(matches!(rep.failure, Some(Failure::Segment { .. })));

        // Odd loops: split one segment in two.
        let mut odd = all.clone();
        let half = vector::scale(&odd[0], 0.5);
        odd[0] = half.clone();
        odd.insert(0, half);
        let l = SegmentLoop::from_displacements(&start, &odd, &tol()).unwrap();
        assert!(matches!(
            loop_symmetric(&l, &tol()).failure,
            Some(Failure::OddSegmentCount { .. })
        ));
    }
}

#[test]
fn zonotope_vertex_sets_are_symmetric() {
    let z = Zonotope::new(a0(), tol()).unwrap();
    let rep = central_center(&z.vertices().unwrap(), &tol()).unwrap();
    assert!(rep.symmetric);
    assert!(vector::max_abs_diff(&rep.center.unwrap(), &[0.5, 1.5, 1.0]) < 1e-12);
    let oracle = hull_vertices(&corner_images(&a0()));
    let rep = central_center(&oracle, &tol()).unwrap();
    assert!(vector::max_abs_diff(&rep.center.unwrap(), &[0.5, 1.5, 1.0]) < 1e-12);
}

#[test]
fn random_sets_with_a_missing_partner_fail() {
    let mut r = rng(21);
    for _ in 0..50 {
        let pts: Vec<Vector> = (0..4).map(|_| vec![r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)]).collect();
        let c = vec![0.1, -0.2];
        let mut set = pts.clone();
        set.extend(reflect(&pts, &c).unwrap());
        set.push(vec![5.0, 5.0]);
        let rep = central_center(&set, &tol()).unwrap();
        assert!(!rep.symmetric);
        assert!(matches!(rep.failure, Some(Failure::Unmatched { .. })));
    }
}
