use super::*;
use crate::bits::combinations;
use crate::exactnum::{frac, int, ints};
use proptest::prelude::*;

fn pts(rows: &[&[i64]]) -> PointConfig {
    PointConfig::from_i64(rows).unwrap()
}

fn simplex(d: usize) -> Polytope {
    let mut rows = vec![vec![0i64; d]];
    for i in 0..d {
        let mut e = vec![0i64; d];
        e[i] = 1;
        rows.push(e);
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    hull(&pts(&refs)).unwrap()
}

fn cube3() -> Polytope {
    let mut rows = Vec::new();
    for m in 0..8 {
        rows.push(vec![m & 1, (m >> 1) & 1, (m >> 2) & 1]);
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    hull(&pts(&refs)).unwrap()
}

fn moment(d: usize, ts: &[i64]) -> Polytope {
    let rows: Vec<Vec<Rational>> = ts.iter().map(|&t| (1..=d as u32).map(|k| int(t.pow(k))).collect()).collect();
    hull(&PointConfig::new(rows).unwrap()).unwrap()
}

#[test]
fn square_with_interior_point() {
    let p = hull(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]])).unwrap();
    assert_eq!(p.dim(), 2);
    assert_eq!(p.n_vertices(), 4);
    assert_eq!(p.n_facets(), 4);
    assert!(p.labels().iter().all(|l| l != "4"));
}

#[test]
fn collinear_points_give_a_segment() {
    let p = hull(&pts(&[&[0, 0], &[1, 1], &[3, 3], &[2, 2]])).unwrap();
    assert_eq!(p.dim(), 1);
    assert_eq!(p.n_vertices(), 2);
    assert_eq!(p.n_facets(), 2);
}

#[test]
fn single_point_is_rejected() {
    assert_eq!(hull(&pts(&[&[1, 2], &[1, 2]])).unwrap_err(), Error::ZeroDimensional);
}

#[test]
fn lower_dimensional_triangle_in_space() {
    let p = hull(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
    assert_eq!((p.dim(), p.n_vertices(), p.n_facets()), (2, 3, 3));
    assert!(p.contains(&[frac(1, 3), frac(1, 3), frac(1, 3)]));
    assert!(!p.contains(&[int(0), int(0), int(0)]));
}

#[test]
fn simplex_counts() {
    for d in 1..=6 {
        let s = simplex(d);
        assert_eq!((s.n_vertices(), s.n_facets()), (d + 1, d + 1));
    }
}

#[test]
fn cube_and_octahedron_are_dual() {
    let c = cube3();
    assert_eq!(c.n_facets(), 6);
    let o = polar_dual(&c);
    assert_eq!((o.n_vertices(), o.n_facets()), (6, 8));
    let oct = hull(&pts(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]])).unwrap();
    assert!(comb_iso(&o, &oct).is_some());
    let back = polar_dual(&o);
    assert!(comb_iso(&back, &c).is_some());
}

#[test]
fn polar_vertices_recompute_to_the_same_polytope() {
    for p in [cube3(), moment(3, &[0, 1, 2, 3, 4, 5]), simplex(4)] {
        let q = polar_dual(&p);
        let r = hull(&q.point_config()).unwrap();
        assert_eq!(r.n_vertices(), q.n_vertices());
        assert_eq!(r.incidence().sorted(), q.incidence().sorted());
    }
}

/// Gale's evenness condition counts the facets of cyclic polytopes independently.
fn evenness_facets(n: usize, d: usize) -> usize {
    combinations(n, d)
        .filter(|s| {
            let outside: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
            outside
                .iter()
                .enumerate()
                .all(|(x, &i)| outside[x + 1..].iter().all(|&k| s.iter().filter(|&&j| i < j && j < k).count() % 2 == 0))
        })
        .count()
}

#[test]
fn cyclic_facets_match_evenness() {
    assert_eq!(moment(4, &[0, 1, 2, 3, 4, 5, 6, 7]).n_facets(), 20);
    for (d, n) in [(2, 5), (3, 6), (3, 7), (4, 7), (5, 8), (4, 9)] {
        let ts: Vec<i64> = (0..n as i64).collect();
        assert_eq!(moment(d, &ts).n_facets(), evenness_facets(n, d), "C({d},{n})");
    }
}

#[test]
fn incidence_transpose_round_trip() {
    let p = moment(3, &[0, 1, 2, 3, 4, 5]);
    assert_eq!(p.incidence().transpose().transpose(), *p.incidence());
}

#[test]
fn from_facet_sets_rejects_wrong_combinatorics() {
    let verts = vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])];
    let labels: Vec<String> = (0..4).map(|i| i.to_string()).collect();
    let diag = vec![Bits::from_indices(4, [0, 3]), Bits::from_indices(4, [1, 2])];
    assert!(Polytope::from_facet_sets(verts.clone(), labels.clone(), diag).is_err());
    let good = vec![
        Bits::from_indices(4, [0, 1]),
        Bits::from_indices(4, [0, 2]),
        Bits::from_indices(4, [1, 3]),
        Bits::from_indices(4, [2, 3]),
    ];
    let p = Polytope::from_facet_sets(verts, labels, good).unwrap();
    assert_eq!(p.n_facets(), 4);
}

#[test]
fn projection_of_cube() {
    let sq = project(&cube3(), 2).unwrap();
    assert_eq!((sq.n_vertices(), sq.n_facets()), (4, 4));
    assert!(project(&cube3(), 3).is_err());
}

#[test]
fn simplex_decomposes_to_an_edge() {
    for d in 2..=5 {
        let dec = pyramid_decompose(&simplex(d));
        assert_eq!(dec.k(), d - 1);
        assert_eq!(dec.base.dim(), 1);
    }
}

#[test]
fn pyramid_over_square() {
    let p = hull(&pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 1]])).unwrap();
    let dec = pyramid_decompose(&p);
    assert_eq!(dec.k(), 1);
    assert_eq!(dec.apexes, vec!["4".to_string()]);
    assert_eq!((dec.base.dim(), dec.base.n_vertices()), (2, 4));
    assert_eq!(pyramid_decompose(&cube3()).k(), 0);
}

#[test]
fn planar_preservation_example() {
    let q = hull(&pts(&[&[3, 0], &[2, 2], &[0, 3], &[-2, 2], &[-2, -1], &[1, -2]])).unwrap();
    let rep = preserved_faces(&q).unwrap();
    let strict: Vec<usize> = (0..6).filter(|&v| rep.vertices[v] == Preservation::StrictlyPreserved).collect();
    let idx = q.vertices().iter().position(|v| *v == ints(&[3, 0])).unwrap();
    assert_eq!(strict, vec![idx]);
    let vertical: Vec<usize> = (0..q.n_facets()).filter(|&f| rep.facet_classes[f] == FaceClass::Vertical).collect();
    assert_eq!(vertical.len(), 1);
    let on: Vec<Vec<Rational>> = q.incidence().facet(vertical[0]).iter().map(|v| q.vertices()[v].clone()).collect();
    assert!(on.contains(&ints(&[-2, 2])) && on.contains(&ints(&[-2, -1])));
    assert_eq!(rep.facets[vertical[0]], Preservation::PreservedNotStrictly);
}

#[test]
fn comb_iso_distinguishes_prism_from_octahedron_pyramid() {
    let prism = hull(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]])).unwrap();
    let relabeled = hull(&pts(&[&[0, 1, 1], &[1, 0, 0], &[0, 0, 1], &[0, 1, 0], &[1, 0, 1], &[0, 0, 0]])).unwrap();
    let iso = comb_iso(&prism, &relabeled).unwrap();
    for f in 0..prism.n_facets() {
        let img: Vec<usize> = prism.incidence().facet(f).iter().map(|v| iso.vertex_map[v]).collect();
        assert_eq!(Bits::from_indices(6, img), *relabeled.incidence().facet(iso.facet_map[f]));
    }
    let sqpyr = hull(&pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 1]])).unwrap();
    assert!(comb_iso(&prism, &sqpyr).is_none());
}

fn small_config() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 5..9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_is_idempotent(rows in small_config()) {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        if let Ok(p) = hull(&pts(&refs)) {
            let q = hull(&p.point_config()).unwrap();
            prop_assert_eq!(q.vertices(), p.vertices());
            prop_assert_eq!(q.incidence(), p.incidence());
        }
    }

    #[test]
    fn incidence_duality(rows in small_config()) {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        if let Ok(p) = hull(&pts(&refs)) {
            let q = polar_dual(&p);
            prop_assert_eq!(q.incidence(), &p.incidence().transpose());
            let r = hull(&q.point_config()).unwrap();
            prop_assert_eq!(r.n_vertices(), p.n_facets());
            prop_assert_eq!(r.n_facets(), p.n_vertices());
            prop_assert!(comb_iso(&polar_dual(&q), &p).is_some());
        }
    }

    #[test]
    fn every_input_point_is_contained(rows in small_config()) {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let cfg = pts(&refs);
        if let Ok(p) = hull(&cfg) {
            for x in cfg.points() {
                prop_assert!(p.contains(x));
            }
        }
    }
}
