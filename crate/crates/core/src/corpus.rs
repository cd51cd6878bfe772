//! A fixed collection of named test polytopes covering every branch of the classifier.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructors::{
    build_family, cyclic_standard, direct_sum, generic_hexagon, join_family_specs, lawrence_extension,
    one_point_suspension, prism, product, pyramid, regular_hexagon, sample_desarguian_hexagon, simplex, LiftPoint,
};
use crate::exactnum::{centroid, int, ints, Rational};
use crate::gale::sporadic_d4_vertices;
use crate::polytope::{hull, polar_dual, PointConfig, Polytope};

/// Hull of `count` random integer points in `[0, range)^dim`, reproducible from `seed`.
pub fn random_hull(seed: u64, dim: usize, count: usize, range: i64) -> Polytope {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Vec<Rational>> =
            (0..count).map(|_| (0..dim).map(|_| int(rng.gen_range(0..range))).collect()).collect();
        if let Ok(p) = hull(&PointConfig::new(pts).expect("uniform length")) {
            if p.dim() == dim {
                return p;
            }
        }
    }
}

pub fn corpus() -> Vec<(String, Polytope)> {
    let mut out: Vec<(String, Polytope)> = Vec::new();
    let mut add = |name: String, p: Polytope| out.push((name, p));
    for d in 1..=5 {
        add(format!("simplex_{d}"), simplex(d).unwrap());
    }
    let seg = simplex(1).unwrap();
    let tri = simplex(2).unwrap();
    let tet = simplex(3).unwrap();
    add("square".into(), product(&seg, &seg));
    add("pentagon".into(), cyclic_standard(2, 5).unwrap());
    add("hexagon_regular".into(), regular_hexagon());
    add("hexagon_generic".into(), generic_hexagon());
    for seed in 0..5 {
        add(format!("hexagon_desarguian_{seed}"), sample_desarguian_hexagon(seed).0);
    }
    add("heptagon".into(), cyclic_standard(2, 7).unwrap());
    add("octagon".into(), cyclic_standard(2, 8).unwrap());
    add("prism".into(), prism());
    add("product_1_3".into(), product(&seg, &tet));
    add("product_2_2".into(), product(&tri, &tri));
    add("product_1_4".into(), product(&seg, &simplex(4).unwrap()));
    add("cube".into(), product(&product(&seg, &seg), &seg));
    add("sum_1_2".into(), direct_sum(&seg, &tri));
    add("sum_1_3".into(), direct_sum(&seg, &tet));
    add("sum_2_2".into(), direct_sum(&tri, &tri));
    add("octahedron".into(), direct_sum(&direct_sum(&seg, &seg), &seg));
    add("pyramid_square".into(), pyramid(&product(&seg, &seg), 1));
    add("pyramid2_hexagon_regular".into(), pyramid(&regular_hexagon(), 2));
    add("pyramid2_hexagon_generic".into(), pyramid(&generic_hexagon(), 2));
    add("pyramid_prism".into(), pyramid(&prism(), 1));
    add("pyramid2_product_1_3".into(), pyramid(&product(&seg, &tet), 2));
    for d in 6..=8 {
        for spec in join_family_specs(d) {
            add(format!("join_{}_{}_{}", spec.k, spec.n, spec.m), build_family(&spec).unwrap());
        }
    }
    for (d, n) in [(3, 6), (3, 7), (4, 8), (5, 9), (6, 10)] {
        add(format!("cyclic_{d}_{n}"), cyclic_standard(d, n).unwrap());
    }
    for (i, s) in sporadic_d4_vertices().unwrap().into_iter().enumerate() {
        add(format!("sporadic_{}_{i}", s.dim), s.polytope);
    }
    let pr = prism();
    add("ops_prism".into(), one_point_suspension(&pr, &LiftPoint::Finite(centroid(pr.vertices()))).unwrap());
    add("lawrence_prism".into(), lawrence_extension(&pr, &LiftPoint::Finite(ints(&[2, 2, 2]))).unwrap());
    add(
        "lawrence_pyramid_prism".into(),
        lawrence_extension(&pyramid(&pr, 1), &LiftPoint::Finite(ints(&[2, 2, 2, 0]))).unwrap(),
    );
    add(
        "lawrence_prism_at_infinity".into(),
        lawrence_extension(&pr, &LiftPoint::AtInfinity(ints(&[1, 1, 0]))).unwrap(),
    );
    add("polar_cyclic_4_8".into(), polar_dual(&cyclic_standard(4, 8).unwrap()));
    add("polar_prism".into(), polar_dual(&pr));
    add("polar_cube".into(), polar_dual(&product(&product(&seg, &seg), &seg)));
    for seed in 0..3 {
        add(format!("random_3d_{seed}"), random_hull(seed, 3, 7, 5));
    }
    for seed in 0..3 {
        add(format!("random_4d_{seed}"), random_hull(100 + seed, 4, 8, 4));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn corpus_is_large_and_uniquely_named() {
        let c = corpus();
        assert!(c.len() >= 50, "{}", c.len());
        let names: HashSet<&String> = c.iter().map(|(n, _)| n).collect();
        assert_eq!(names.len(), c.len());
    }

    #[test]
    fn random_hulls_are_reproducible() {
        let a = random_hull(3, 3, 7, 5);
        let b = random_hull(3, 3, 7, 5);
        assert_eq!(a.vertices(), b.vertices());
    }
}
