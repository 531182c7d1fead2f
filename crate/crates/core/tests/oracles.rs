//! Values frozen from independent computations: a floating-point orbit search
//! that only applies the four Möbius maps to (α, ᾱ), and symbolic arithmetic
//! in Q(i, √3).

use std::collections::BTreeSet;

use picard_core::field::{rational, FieldElement, ProjectivePoint};
use picard_core::quadratic::rq;
use picard_core::{bfs_orbit_ambiguous, build_graph, enumerate, Generator, RealQuadratic};

const K1: [(i64, i64, i64); 12] = [
    (-1, 1, -2),
    (-1, 1, -1),
    (-1, 1, 1),
    (-1, 1, 2),
    (0, 1, -3),
    (0, 1, -1),
    (0, 1, 1),
    (0, 1, 3),
    (1, 1, -2),
    (1, 1, -1),
    (1, 1, 1),
    (1, 1, 2),
];

const K2: [(i64, i64, i64); 32] = [
    (-3, 2, -3),
    (-3, 2, -1),
    (-3, 2, 1),
    (-3, 2, 3),
    (-2, 2, -1),
    (-2, 2, 1),
    (-1, 2, -11),
    (-1, 1, -4),
    (-1, 2, -1),
    (-1, 2, 1),
    (-1, 1, 4),
    (-1, 2, 11),
    (0, 1, -6),
    (0, 2, -3),
    (0, 1, -2),
    (0, 2, -1),
    (0, 2, 1),
    (0, 1, 2),
    (0, 2, 3),
    (0, 1, 6),
    (1, 2, -11),
    (1, 1, -4),
    (1, 2, -1),
    (1, 2, 1),
    (1, 1, 4),
    (1, 2, 11),
    (2, 2, -1),
    (2, 2, 1),
    (3, 2, -3),
    (3, 2, -1),
    (3, 2, 1),
    (3, 2, 3),
];

const K3: [(i64, i64, i64); 60] = [
    (-5, 3, -2),
    (-5, 3, -1),
    (-5, 3, 1),
    (-5, 3, 2),
    (-4, 3, -11),
    (-4, 3, -1),
    (-4, 3, 1),
    (-4, 3, 11),
    (-3, 3, -2),
    (-3, 3, -1),
    (-3, 3, 1),
    (-3, 3, 2),
    (-2, 3, -23),
    (-2, 3, -1),
    (-2, 3, 1),
    (-2, 3, 23),
    (-1, 3, -26),
    (-1, 3, -13),
    (-1, 1, -6),
    (-1, 1, -3),
    (-1, 3, -2),
    (-1, 3, -1),
    (-1, 3, 1),
    (-1, 3, 2),
    (-1, 1, 3),
    (-1, 1, 6),
    (-1, 3, 13),
    (-1, 3, 26),
    (0, 1, -9),
    (0, 3, -1),
    (0, 3, 1),
    (0, 1, 9),
    (1, 3, -26),
    (1, 3, -13),
    (1, 1, -6),
    (1, 1, -3),
    (1, 3, -2),
    (1, 3, -1),
    (1, 3, 1),
    (1, 3, 2),
    (1, 1, 3),
    (1, 1, 6),
    (1, 3, 13),
    (1, 3, 26),
    (2, 3, -23),
    (2, 3, -1),
    (2, 3, 1),
    (2, 3, 23),
    (3, 3, -2),
    (3, 3, -1),
    (3, 3, 1),
    (3, 3, 2),
    (4, 3, -11),
    (4, 3, -1),
    (4, 3, 1),
    (4, 3, 11),
    (5, 3, -2),
    (5, 3, -1),
    (5, 3, 1),
    (5, 3, 2),
];

const K4_FROM_4_SQRT3: [(i64, i64, i64); 52] = [
    (-6, 4, -1),
    (-6, 4, 1),
    (-5, 4, -23),
    (-5, 4, -1),
    (-5, 4, 1),
    (-5, 4, 23),
    (-4, 4, -1),
    (-4, 4, 1),
    (-3, 4, -39),
    (-3, 2, -6),
    (-3, 4, -1),
    (-3, 4, 1),
    (-3, 2, 6),
    (-3, 4, 39),
    (-2, 4, -1),
    (-2, 4, 1),
    (-1, 4, -47),
    (-1, 2, -22),
    (-1, 1, -8),
    (-1, 4, -1),
    (-1, 4, 1),
    (-1, 1, 8),
    (-1, 2, 22),
    (-1, 4, 47),
    (0, 1, -12),
    (0, 4, -1),
    (0, 4, 1),
    (0, 1, 12),
    (1, 4, -47),
    (1, 2, -22),
    (1, 1, -8),
    (1, 4, -1),
    (1, 4, 1),
    (1, 1, 8),
    (1, 2, 22),
    (1, 4, 47),
    (2, 4, -1),
    (2, 4, 1),
    (3, 4, -39),
    (3, 2, -6),
    (3, 4, -1),
    (3, 4, 1),
    (3, 2, 6),
    (3, 4, 39),
    (4, 4, -1),
    (4, 4, 1),
    (5, 4, -23),
    (5, 4, -1),
    (5, 4, 1),
    (5, 4, 23),
    (6, 4, -1),
    (6, 4, 1),
];

const K4_OTHER: [(i64, i64, i64); 28] = [
    (-6, 4, -3),
    (-6, 4, 3),
    (-3, 4, -13),
    (-3, 4, -3),
    (-3, 2, -2),
    (-3, 2, 2),
    (-3, 4, 3),
    (-3, 4, 13),
    (-2, 4, -11),
    (-2, 4, 11),
    (-1, 2, -2),
    (-1, 2, 2),
    (0, 1, -4),
    (0, 4, -3),
    (0, 4, 3),
    (0, 1, 4),
    (1, 2, -2),
    (1, 2, 2),
    (2, 4, -11),
    (2, 4, 11),
    (3, 4, -13),
    (3, 4, -3),
    (3, 2, -2),
    (3, 2, 2),
    (3, 4, 3),
    (3, 4, 13),
    (6, 4, -3),
    (6, 4, 3),
];

fn reduced_set(qs: impl IntoIterator<Item = RealQuadratic>) -> BTreeSet<RealQuadratic> {
    qs.into_iter().map(|q| q.reduced()).collect()
}

fn frozen(ts: &[(i64, i64, i64)]) -> BTreeSet<RealQuadratic> {
    ts.iter().map(|&(a, b, c)| rq(a, b, c)).collect()
}

#[test]
fn enumeration_matches_float_orbits() {
    for (k, expected) in [(1, &K1[..]), (2, &K2[..]), (3, &K3[..])] {
        let e = enumerate(k).unwrap();
        assert_eq!(e.count(), expected.len());
        assert_eq!(reduced_set(e.members), frozen(expected), "k={k}");
    }
}

#[test]
fn bfs_matches_float_orbits() {
    let cases = [
        (rq(0, 1, 1), &K1[..]),
        (rq(0, 2, 1), &K2[..]),
        (rq(0, 3, 1), &K3[..]),
        (rq(0, 4, 1), &K4_FROM_4_SQRT3[..]),
        (rq(-6, 4, -4), &K4_OTHER[..]),
    ];
    for (start, expected) in cases {
        let orbit = bfs_orbit_ambiguous(&start, 10_000).unwrap();
        assert_eq!(reduced_set(orbit), frozen(expected), "from {start}");
    }
}

#[test]
fn k4_candidates_are_the_union_of_two_orbits() {
    let members = reduced_set(enumerate(4).unwrap().members);
    let a = frozen(&K4_FROM_4_SQRT3);
    let b = frozen(&K4_OTHER);
    assert!(a.is_disjoint(&b));
    assert_eq!(members, a.union(&b).copied().collect());
}

#[test]
fn b_edges_of_k2_match_the_float_orbit() {
    let g = build_graph(2).unwrap();
    let k2 = frozen(&K2);
    for q in g.vertices() {
        assert!(k2.contains(&q.act_b().unwrap().reduced()));
    }
}

fn fe(c: [(i64, i64); 4]) -> FieldElement {
    FieldElement::from_ratios(c)
}

#[test]
fn symbolic_inverses() {
    let x = fe([(1, 1), (1, 1), (1, 1), (0, 1)]);
    assert_eq!(
        x.invert().unwrap(),
        fe([(-1, 13), (-5, 13), (3, 13), (2, 13)])
    );
    let y = fe([(2, 1), (0, 1), (0, 1), (-1, 3)]);
    assert_eq!(y.invert().unwrap(), fe([(6, 13), (0, 1), (0, 1), (1, 13)]));
    let p = &fe([(1, 1), (1, 1), (0, 1), (0, 1)]) * &fe([(0, 1), (-1, 1), (1, 1), (0, 1)]);
    assert_eq!(p, fe([(1, 1), (-1, 1), (1, 1), (1, 1)]));
}

#[test]
fn symbolic_a_images() {
    let a = Generator::A.map();
    let a2 = a.compose(&a);
    let sqrt3 = FieldElement::sqrt3();
    assert_eq!(
        a.apply_finite(&sqrt3),
        ProjectivePoint::Finite(fe([(0, 1), (1, 4), (1, 4), (0, 1)]))
    );
    assert_eq!(
        a2.apply_finite(&sqrt3),
        ProjectivePoint::Finite(fe([(0, 1), (1, 1), (1, 3), (0, 1)]))
    );
    assert_eq!(
        rq(0, 1, 1).act_a_image(),
        fe([(0, 1), (1, 4), (1, 4), (0, 1)])
    );
    assert_eq!(
        rq(0, 1, 1).act_a2_image().unwrap(),
        fe([(0, 1), (1, 1), (1, 3), (0, 1)])
    );
    let half = rq(1, 1, 2);
    assert_eq!(
        half.act_a_image(),
        fe([(1, 13), (8, 13), (3, 13), (-2, 13)])
    );
    assert_eq!(
        a.apply_finite(&half.embed()),
        ProjectivePoint::Finite(half.act_a_image())
    );
}

#[test]
fn symbolic_c_image() {
    let q = rq(-3, 2, 3);
    assert_eq!(q.act_c().unwrap(), rq(4, 2, -1));
    let img = Generator::C.map().apply_finite(&q.embed());
    let expected = FieldElement::new(
        rational(-4, 1),
        rational(0, 1),
        rational(-2, 1),
        rational(0, 1),
    );
    assert_eq!(img, ProjectivePoint::Finite(expected));
}
