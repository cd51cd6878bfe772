//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use fewxc::bounds::{
    alpha_threshold, dimension_guard, exceeds, join_family_count, pyramid_dim_bound, simple_or_simplicial_lower,
};
use fewxc::classifier::{classify_xc, desarguian_test, lift_hexagon, Case, Detail, XcValue};
use fewxc::constructors::{
    build_family, cyclic_standard, join_family_specs, perturb_vertex, product, pyramid, sample_desarguian_hexagon,
    simplex, FamilyKind, FamilySpec,
};
use fewxc::corpus::corpus;
use fewxc::exactnum::{ints, Rational};
use fewxc::gale::{faces_from_gale, gale_transform, sporadic_up_to};
use fewxc::oracle::{rectangle_cover_bound, slack_matrix, verify_extension, ExtensionCertificate, Target, COVER_GUARD};
use fewxc::polytope::{comb_iso, hull, polar_dual, preserved_faces, PointConfig, Polytope, Preservation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact(p: &Polytope) -> Result<(usize, Case, fewxc::classifier::XcResult), String> {
    let r = classify_xc(p).map_err(|e| e.to_string())?;
    match r.value {
        XcValue::Exact(v) => Ok((v, r.case, r)),
        XcValue::Interval { lo, hi } => Err(format!("interval [{lo}, {hi}] where an exact value was expected")),
    }
}

fn has_prism_certificate(r: &fewxc::classifier::XcResult) -> bool {
    matches!(r.certificate.detail, Detail::Prism { .. })
}

fn family_sweep() -> Outcome {
    let start = Instant::now();
    let seg = simplex(1).unwrap();
    let base = product(&seg, &simplex(3).unwrap());
    let sporadics = sporadic_up_to(7).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for d in 4..=10 {
        let (v, _, _) = exact(&pyramid(&base, d - 4))?;
        check(v == d + 2, || format!("pyr_{}(prism over tetrahedron) gave {v}", d - 4))?;
        for s in sporadics.iter().filter(|s| s.dim <= d) {
            let (v, case, _) = exact(&pyramid(&s.polytope, d - s.dim))?;
            check(v == d + 3 && case == Case::FacetsD3Sporadic, || {
                format!("sporadic of dim {} lifted to {d}: {v} {}", s.dim, case.as_str())
            })?;
            checked += 1;
        }
        for spec in join_family_specs(d) {
            let (v, _, r) = exact(&build_family(&spec).map_err(|e| e.to_string())?)?;
            check(v == d + 3 && has_prism_certificate(&r), || {
                format!("join_family({},{},{}) gave {v} {}", spec.k, spec.n, spec.m, r.case.as_str())
            })?;
            checked += 1;
        }
        let (v, case, _) = exact(&cyclic_standard(d, d + 4).map_err(|e| e.to_string())?)?;
        check(v == d + 4 && case == Case::GenericD4, || format!("cyclic({d}, {}) gave {v}", d + 4))?;
        checked += 2;
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 120.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{checked} polytopes in dimensions 4..10, {secs:.1}s"))
}

fn sporadic_enumeration() -> Outcome {
    let start = Instant::now();
    let found = sporadic_up_to(8).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = found.iter().map(|s| s.dim).collect();
    check(dims == vec![3, 3, 4, 4, 4, 5, 5, 6], || format!("dimensions {dims:?}"))?;
    for (i, s) in found.iter().enumerate() {
        let p = &s.polytope;
        check(p.n_vertices() == s.dim + 4 && p.n_facets() == s.dim + 3, || format!("type {i} has wrong counts"))?;
        check(fewxc::polytope::apexes(p).is_empty(), || format!("type {i} is a pyramid"))?;
        for t in &found[..i] {
            check(t.dim != s.dim || comb_iso(&t.polytope, p).is_none(), || format!("type {i} repeats"))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!("dimensions {dims:?}, none in 7 or 8, {secs:.1}s"))
}

fn desarguian_pipeline() -> Outcome {
    let eps = Rational::new(1.into(), 1_000_000.into());
    let mut six = 0;
    for seed in 0..100u64 {
        let (h, _) = sample_desarguian_hexagon(seed);
        let w = desarguian_test(&h).map_err(|e| e.to_string())?.ok_or(format!("seed {seed}: no witness"))?;
        let lift = lift_hexagon(&h, &w).map_err(|e| format!("seed {seed}: {e}"))?;
        let cert = ExtensionCertificate { target: Target::Primal, keep: 2, q: lift.q };
        let ver = verify_extension(&h, &cert);
        check(ver.ok && ver.facet_count == 5, || format!("seed {seed}: lift rejected"))?;
        let (v, _, _) = exact(&h)?;
        check(v == 5, || format!("seed {seed}: classified {v}"))?;

        let moved = perturb_vertex(&h, (seed % 6) as usize, &eps).map_err(|e| e.to_string())?;
        let (v, _, r) = exact(&moved)?;
        let target = fewxc::classifier::certificate_target(&moved, r.certificate.extension.target);
        check(verify_extension(&target, &r.certificate.extension).ok, || {
            format!("seed {seed}: perturbed certificate")
        })?;
        if v == 6 {
            six += 1;
        } else {
            check(v == 5 && desarguian_test(&moved).unwrap().is_some(), || format!("seed {seed}: perturbed gave {v}"))?;
        }
    }
    check(six >= 99, || format!("only {six}/100 perturbations reach 6"))?;
    Ok(format!("100/100 verified lifts, {six}/100 perturbations classify to 6"))
}

fn additivity_and_duality() -> Outcome {
    let c = corpus();
    check(c.len() >= 50, || format!("corpus has {} members", c.len()))?;
    for (name, p) in &c {
        let v = classify_xc(p).map_err(|e| format!("{name}: {e}"))?.value;
        let up = classify_xc(&pyramid(p, 1)).map_err(|e| format!("{name}: {e}"))?.value;
        check(up == v.shifted(1), || format!("{name}: {v:?} but pyramid {up:?}"))?;
        let dual = classify_xc(&polar_dual(p)).map_err(|e| format!("{name}: {e}"))?.value;
        check(dual == v, || format!("{name}: {v:?} but polar {dual:?}"))?;
    }
    Ok(format!("{} corpus members, zero exceptions", c.len()))
}

fn oracle_consistency() -> Outcome {
    let (mut in_scope, mut covered) = (0, 0);
    for (name, p) in corpus() {
        let s = slack_matrix(&p);
        check(s.rank() == p.dim() + 1, || format!("{name}: slack rank {}", s.rank()))?;
        for v in 0..p.n_vertices() {
            for f in 0..p.n_facets() {
                let zero = s.entries()[f][v] == Rational::from_integer(0.into());
                check(zero == p.incidence().contains(f, v), || format!("{name}: zero pattern at ({v},{f})"))?;
            }
        }
        let Some(value) = classify_xc(&p).map_err(|e| e.to_string())?.value.exact() else {
            continue;
        };
        in_scope += 1;
        let cap = p.n_vertices().min(p.n_facets());
        check(p.dim() < value && value <= cap, || format!("{name}: {value} outside [d+1, min(n,m)]"))?;
        if p.n_vertices() * p.n_facets() <= COVER_GUARD {
            let lo = rectangle_cover_bound(&s).map_err(|e| e.to_string())?;
            check(lo <= value, || format!("{name}: cover bound {lo} above {value}"))?;
            covered += 1;
        }
    }
    Ok(format!("{in_scope} in scope, cover bound checked on {covered} within the {COVER_GUARD}-cell guard"))
}

fn gale_round_trip() -> Outcome {
    let (mut checked, mut simplices) = (0, 0);
    for (name, p) in corpus() {
        let (n, d) = (p.n_vertices(), p.dim());
        if n > d + 5 {
            continue;
        }
        if n == d + 1 {
            simplices += 1;
            continue;
        }
        let g = gale_transform(&p.point_config()).map_err(|e| format!("{name}: {e}"))?;
        let inc = faces_from_gale(&g).map_err(|e| format!("{name}: {e}"))?;
        check(inc == p.incidence().sorted(), || format!("{name}: incidence differs"))?;
        checked += 1;
    }
    Ok(format!("{checked} members with d+2 <= n <= d+5 ({simplices} simplices have no dependencies)"))
}

/// Smallest integer t with t >= 2 sqrt(2n - 2) - 1, by counting up.
fn polygon_bound(n: i64) -> i64 {
    (0..).find(|&t: &i64| (t + 1) * (t + 1) >= 4 * (2 * n - 2)).unwrap()
}

fn bounds_table() -> Outcome {
    for n in 3..=50u64 {
        let b = simple_or_simplicial_lower(2, n).map_err(|e| e.to_string())?;
        check(b.value == polygon_bound(n as i64), || format!("polygon bound at n={n}: {}", b.value))?;
    }
    check(simple_or_simplicial_lower(2, 9).unwrap().value == 7, || "n=9".into())?;
    for d in 1..=60u64 {
        for alpha in 1..=20u64 {
            let r = d * (d + 1 + alpha);
            let (t, big) = ((d + alpha) as i64, !exceeds(r, d, (d + alpha + 1) as i64));
            check(big, || format!("bound above d+alpha+1 at d={d}, alpha={alpha}"))?;
            let past = d >= alpha_threshold(alpha).unwrap();
            check(exceeds(r, d, t) == past, || format!("threshold mismatch at d={d}, alpha={alpha}"))?;
            check(past == (4 * d > (alpha - 1) * (alpha - 1)), || format!("alpha threshold at {alpha}"))?;
        }
    }
    for d in 4..=12u64 {
        let s = d as usize - 4;
        let mut types: Vec<Polytope> = Vec::new();
        for n in 1..=s {
            for m in 1..=s {
                if n + m > s {
                    continue;
                }
                let spec = FamilySpec { kind: FamilyKind::JoinFamily, k: s - n - m, n, m };
                let p = build_family(&spec).map_err(|e| e.to_string())?;
                if !types.iter().any(|q| comb_iso(q, &p).is_some()) {
                    types.push(p);
                }
            }
        }
        check(types.len() as u64 == join_family_count(d), || {
            format!("d={d}: {} join types, formula {}", types.len(), join_family_count(d))
        })?;
    }
    check(pyramid_dim_bound(5, 1) == 3 * 5 + 1 - 2, || "F branches disagree at x=5".into())?;
    let g = dimension_guard(3, 2);
    check(g == 7 && dimension_guard(2, 3) == 7, || format!("guard {g}"))?;
    Ok("polygon bounds n=3..50, chain d<=60 alpha<=20, join counts d<=12, guard 7".into())
}

fn face_preservation() -> Outcome {
    let mut lifts = 0;
    let corpus_hexagons = corpus().into_iter().filter(|(n, _)| n.starts_with("hexagon")).map(|(_, p)| p);
    let sampled = (0..100).map(|s| sample_desarguian_hexagon(s).0);
    for h in corpus_hexagons.chain(sampled) {
        let Some(w) = desarguian_test(&h).map_err(|e| e.to_string())? else {
            continue;
        };
        let lift = lift_hexagon(&h, &w).map_err(|e| e.to_string())?;
        let rep = preserved_faces(&lift.q).map_err(|e| e.to_string())?;
        check(rep == lift.report, || "stored report differs from recomputation".into())?;
        check(rep.vertices.iter().all(|v| *v == Preservation::StrictlyPreserved), || "vertex not strict".into())?;
        lifts += 1;
    }
    let pts: Vec<Vec<Rational>> =
        [[3, 0], [2, 2], [0, 3], [-2, 2], [-2, -1], [1, -2]].iter().map(|p| ints(p)).collect();
    let q = hull(&PointConfig::new(pts).unwrap()).map_err(|e| e.to_string())?;
    let rep = preserved_faces(&q).map_err(|e| e.to_string())?;
    let strict: Vec<&Vec<Rational>> = (0..q.n_vertices())
        .filter(|&v| rep.vertices[v] == Preservation::StrictlyPreserved)
        .map(|v| &q.vertices()[v])
        .collect();
    check(strict == vec![&ints(&[3, 0])], || format!("strict vertices {strict:?}"))?;
    let weak: Vec<usize> = (0..q.n_facets()).filter(|&f| rep.facets[f] == Preservation::PreservedNotStrictly).collect();
    check(weak.len() == 1, || format!("{} edges preserved but not strictly", weak.len()))?;
    Ok(format!("{lifts} lifts with all 6 vertices strict; planar example has 1 strict vertex, 1 weak edge"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("family sweep", family_sweep),
        ("sporadic enumeration", sporadic_enumeration),
        ("desarguian pipeline", desarguian_pipeline),
        ("pyramid additivity and duality", additivity_and_duality),
        ("oracle consistency", oracle_consistency),
        ("gale round trip", gale_round_trip),
        ("bounds table", bounds_table),
        ("face preservation", face_preservation),
    ];
    let mut results = BTreeMap::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match &outcome {
            Ok(msg) => println!("criterion {} ({name}): PASS  {msg}", i + 1),
            Err(msg) => println!("criterion {} ({name}): FAIL  {msg}", i + 1),
        }
        results.insert(i + 1, outcome.is_ok());
    }
    if results.values().all(|ok| *ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
