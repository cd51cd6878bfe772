use fewxc::bounds::d_plus_2_vertex_types;
use fewxc::constructors::{build_family, FamilyKind, FamilySpec};
use fewxc::corpus::corpus;
use fewxc::gale::{enumerate_d_plus_3, faces_from_gale, gale_transform};
use fewxc::polytope::{apexes, comb_iso, Polytope};
use num_traits::Zero;

#[test]
fn d_plus_3_type_counts() {
    let counts: Vec<usize> = (2..=6).map(|d| enumerate_d_plus_3(d).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 7, 31, 116, 379]);
}

#[test]
fn enumerated_types_realize_their_diagrams() {
    for t in enumerate_d_plus_3(4).unwrap() {
        let p = &t.polytope;
        assert_eq!(p.dim(), 4);
        assert_eq!(p.n_vertices(), 7);
        assert_eq!(p.incidence().sorted(), t.incidence.sorted());
    }
}

#[test]
fn d_plus_2_types_by_dedup() {
    for d in 2..=7usize {
        let mut types: Vec<Polytope> = Vec::new();
        for a in 1..d {
            for b in 1..d {
                if a + b > d {
                    continue;
                }
                let spec = FamilySpec { kind: FamilyKind::KfoldPyramidSum, k: d - a - b, n: a, m: b };
                let p = build_family(&spec).unwrap();
                assert_eq!((p.dim(), p.n_vertices()), (d, d + 2));
                if !types.iter().any(|q| comb_iso(q, &p).is_some()) {
                    types.push(p);
                }
            }
        }
        assert_eq!(types.len() as u64, d_plus_2_vertex_types(d as u64), "d={d}");
    }
}

#[test]
fn zero_gale_vectors_are_apexes() {
    for (name, p) in corpus() {
        if p.n_vertices() == p.dim() + 1 || p.n_vertices() > p.dim() + 6 {
            continue;
        }
        let g = gale_transform(&p.point_config()).unwrap();
        let zero: Vec<usize> = (0..g.len()).filter(|&i| g.vectors()[i].iter().all(|x| x.is_zero())).collect();
        assert_eq!(zero, apexes(&p), "{name}");
    }
}

#[test]
fn faces_survive_a_change_of_gale_basis() {
    let (name, p) = corpus().into_iter().find(|(n, _)| n == "lawrence_prism").unwrap();
    let g = gale_transform(&p.point_config()).unwrap();
    let c = g.corank();
    let m: Vec<Vec<_>> = (0..c)
        .map(|i| (0..c).map(|j| fewxc::exactnum::int(if i <= j { 1 + (i + j) as i64 } else { 0 })).collect())
        .collect();
    let h = g.transformed(&m);
    assert_eq!(faces_from_gale(&g).unwrap(), faces_from_gale(&h).unwrap(), "{name}");
}
