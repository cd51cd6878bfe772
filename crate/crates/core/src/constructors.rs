//! Exact builders for the standard polytope families and operations.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::exactnum::{centroid, concurrent, frac, int, line_through, sub, HomPoint, Rational};
use crate::polytope::{comb_iso, hull, PointConfig, Polytope};

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// `base` itself if unused, otherwise `base` followed by enough primes.
fn fresh_label(taken: &[String], base: String) -> String {
    let mut label = base;
    while taken.contains(&label) {
        label.push('\'');
    }
    label
}

/// `0, e_1, ..., e_d`.
pub fn simplex(d: usize) -> Result<Polytope> {
    if d == 0 {
        return Err(Error::Invalid("simplex dimension must be at least 1".into()));
    }
    let mut verts = vec![vec![Rational::zero(); d]];
    for i in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[i] = Rational::one();
        verts.push(e);
    }
    let sets = (0..=d).map(|skip| Bits::from_indices(d + 1, (0..=d).filter(|&j| j != skip))).collect();
    Polytope::from_facet_sets(verts, default_labels(d + 1), sets)
}

/// `k`-fold pyramid: each step adds a new coordinate and an apex above the centroid.
pub fn pyramid(p: &Polytope, k: usize) -> Polytope {
    let mut cur = p.clone();
    for _ in 0..k {
        cur = pyramid_once(&cur);
    }
    cur
}

fn pyramid_once(p: &Polytope) -> Polytope {
    let n = p.n_vertices();
    let mut verts: Vec<Vec<Rational>> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(Rational::zero());
            w
        })
        .collect();
    let mut apex = centroid(p.vertices());
    apex.push(Rational::one());
    verts.push(apex);
    let mut labels = p.labels().to_vec();
    labels.push(fresh_label(&labels, n.to_string()));
    let mut sets: Vec<Bits> = p
        .incidence()
        .facets()
        .iter()
        .map(|f| {
            let mut g = Bits::from_indices(n + 1, f.iter());
            g.insert(n);
            g
        })
        .collect();
    sets.push(Bits::from_indices(n + 1, 0..n));
    Polytope::from_facet_sets(verts, labels, sets).expect("pyramid combinatorics")
}

/// Cartesian product; vertex `(i, j)` gets index `i * n_Q + j`.
pub fn product(p: &Polytope, q: &Polytope) -> Polytope {
    let (np, nq) = (p.n_vertices(), q.n_vertices());
    let mut verts = Vec::with_capacity(np * nq);
    for a in p.vertices() {
        for b in q.vertices() {
            verts.push([a.as_slice(), b.as_slice()].concat());
        }
    }
    let n = np * nq;
    let mut sets = Vec::new();
    for f in p.incidence().facets() {
        sets.push(Bits::from_indices(n, f.iter().flat_map(|i| (0..nq).map(move |j| i * nq + j))));
    }
    for g in q.incidence().facets() {
        sets.push(Bits::from_indices(n, (0..np).flat_map(|i| g.iter().map(move |j| i * nq + j))));
    }
    Polytope::from_facet_sets(verts, default_labels(n), sets).expect("product combinatorics")
}

fn centred_local(p: &Polytope) -> Vec<Vec<Rational>> {
    let local = p.local_vertices();
    let c = centroid(&local);
    local.iter().map(|v| sub(v, &c)).collect()
}

fn pad(v: &[Rational], before: usize, after: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); before];
    out.extend_from_slice(v);
    out.extend(std::iter::repeat_n(Rational::zero(), after));
    out
}

/// Direct sum of the two polytopes, each centred at its vertex centroid.
pub fn direct_sum(p: &Polytope, q: &Polytope) -> Polytope {
    let (dp, dq) = (p.dim(), q.dim());
    let (np, nq) = (p.n_vertices(), q.n_vertices());
    let mut verts: Vec<Vec<Rational>> = centred_local(p).iter().map(|v| pad(v, 0, dq)).collect();
    verts.extend(centred_local(q).iter().map(|v| pad(v, dp, 0)));
    let n = np + nq;
    let mut sets = Vec::new();
    for f in p.incidence().facets() {
        for g in q.incidence().facets() {
            sets.push(Bits::from_indices(n, f.iter().chain(g.iter().map(|j| np + j))));
        }
    }
    Polytope::from_facet_sets(verts, default_labels(n), sets).expect("direct sum combinatorics")
}

/// Join with `P` placed at `(x, 0, 0)` and `Q` at `(0, y, 1)`.
pub fn join(p: &Polytope, q: &Polytope) -> Polytope {
    let (dp, dq) = (p.dim(), q.dim());
    let (np, nq) = (p.n_vertices(), q.n_vertices());
    let mut verts: Vec<Vec<Rational>> = p.local_vertices().iter().map(|v| pad(v, 0, dq + 1)).collect();
    verts.extend(q.local_vertices().iter().map(|v| {
        let mut w = pad(v, dp, 1);
        w[dp + dq] = Rational::one();
        w
    }));
    let n = np + nq;
    let mut sets = Vec::new();
    for f in p.incidence().facets() {
        sets.push(Bits::from_indices(n, f.iter().chain(np..n)));
    }
    for g in q.incidence().facets() {
        sets.push(Bits::from_indices(n, (0..np).chain(g.iter().map(|j| np + j))));
    }
    Polytope::from_facet_sets(verts, default_labels(n), sets).expect("join combinatorics")
}

pub fn prism() -> Polytope {
    product(&simplex(1).unwrap(), &simplex(2).unwrap())
}

/// A lift point: either finite (in the ambient coordinates of the polytope) or a
/// direction, standing for the point at infinity of that direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftPoint {
    Finite(Vec<Rational>),
    AtInfinity(Vec<Rational>),
}

fn lift_with(p: &Polytope, x: &[Rational], heights: [i64; 2]) -> Result<Polytope> {
    let n = p.n_vertices();
    let mut verts: Vec<Vec<Rational>> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(Rational::zero());
            w
        })
        .collect();
    let mut labels = p.labels().to_vec();
    for (i, h) in heights.iter().enumerate() {
        let mut w = x.to_vec();
        w.push(int(*h));
        verts.push(w);
        let l = fresh_label(&labels, (n + i).to_string());
        labels.push(l);
    }
    hull(&PointConfig::with_labels(verts, labels)?)
}

fn check_point(p: &Polytope, x: &[Rational]) -> Result<()> {
    if x.len() != p.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "lift point has {} coordinates, polytope has {}",
            x.len(),
            p.ambient_dim()
        )));
    }
    if !p.in_affine_hull(x) {
        return Err(Error::OutsideAffineHull);
    }
    Ok(())
}

/// Same combinatorics and same set of surviving labels.
fn same_type(a: &Polytope, b: &Polytope) -> bool {
    a.labels() == b.labels() && comb_iso(a, b).is_some()
}

/// Replaces a point at infinity by `c + s * u` with `s` doubled until the lifted
/// polytope's combinatorics no longer changes.
fn lift_at(p: &Polytope, at: &LiftPoint, heights: [i64; 2]) -> Result<Polytope> {
    match at {
        LiftPoint::Finite(x) => {
            check_point(p, x)?;
            lift_with(p, x, heights)
        }
        LiftPoint::AtInfinity(u) => {
            let c = centroid(p.vertices());
            let direction: Vec<Rational> = c.iter().zip(u).map(|(a, b)| a + b).collect();
            check_point(p, &direction)?;
            if u.iter().all(Zero::is_zero) {
                return Err(Error::Invalid("zero direction".into()));
            }
            let at_scale = |s: &Rational| -> Result<Polytope> {
                let x: Vec<Rational> = c.iter().zip(u).map(|(a, b)| a + b * s).collect();
                lift_with(p, &x, heights)
            };
            let mut s = int(4);
            let mut prev = at_scale(&s)?;
            let mut stable = 0;
            for _ in 0..40 {
                s *= int(2);
                let next = at_scale(&s)?;
                if same_type(&prev, &next) {
                    stable += 1;
                    if stable == 2 {
                        return Ok(next);
                    }
                } else {
                    stable = 0;
                }
                prev = next;
            }
            Err(Error::Invalid("lift combinatorics did not stabilise".into()))
        }
    }
}

/// `conv(P x {0} ∪ {(p, 1), (p, -1)})`.
pub fn one_point_suspension(p: &Polytope, at: &LiftPoint) -> Result<Polytope> {
    lift_at(p, at, [1, -1])
}

/// `conv(P x {0} ∪ {(p, 1), (p, 2)})`; a finite `p` must lie outside `P`.
pub fn lawrence_extension(p: &Polytope, at: &LiftPoint) -> Result<Polytope> {
    if let LiftPoint::Finite(x) = at {
        check_point(p, x)?;
        if p.contains(x) {
            return Err(Error::AbsorbedLiftPoint);
        }
    }
    lift_at(p, at, [1, 2])
}

/// Hull of `(t, t^2, ..., t^d)` over the given parameters.
pub fn cyclic(d: usize, params: &[Rational]) -> Result<Polytope> {
    if d < 2 {
        return Err(Error::Invalid("cyclic polytopes need d >= 2".into()));
    }
    let distinct: HashSet<&Rational> = params.iter().collect();
    if distinct.len() != params.len() {
        return Err(Error::RepeatedParameters);
    }
    if params.len() < d + 1 {
        return Err(Error::Invalid(format!("need at least {} parameters", d + 1)));
    }
    let pts = params
        .iter()
        .map(|t| {
            let mut row = Vec::with_capacity(d);
            let mut x = t.clone();
            for _ in 0..d {
                row.push(x.clone());
                x *= t;
            }
            row
        })
        .collect();
    hull(&PointConfig::new(pts)?)
}

/// `cyclic(d, n)` with parameters `1..=n`.
pub fn cyclic_standard(d: usize, n: usize) -> Result<Polytope> {
    let params: Vec<Rational> = (1..=n as i64).map(int).collect();
    cyclic(d, &params)
}

/// Line of each hexagon vertex: vertices `{0,1}`, `{5,2}`, `{3,4}` share a line.
pub const HEXAGON_LINES: [usize; 6] = [0, 0, 1, 2, 2, 1];

/// Hexagon with one pair of vertices on each of three lines through `centre`.
///
/// For a finite centre, `rays[j]` is the direction of line `j` and vertex `i` is
/// `centre + picks[i] * rays[line(i)]`. For a centre at infinity with direction `u`,
/// `rays[j]` is a base point of line `j` and vertex `i` is `rays[line(i)] + picks[i] * u`.
pub fn desarguian_hexagon(centre: &HomPoint, rays: &[[Rational; 2]; 3], picks: &[Rational; 6]) -> Result<Polytope> {
    let pts: Vec<Vec<Rational>> = (0..6)
        .map(|i| {
            let r = &rays[HEXAGON_LINES[i]];
            let t = &picks[i];
            match centre.affine() {
                Some(c) => vec![&c[0] + t * &r[0], &c[1] + t * &r[1]],
                None => {
                    let u = centre.coords();
                    vec![&r[0] + t * &u[0], &r[1] + t * &u[1]]
                }
            }
        })
        .collect();
    let hexagon = hull(&PointConfig::new(pts).map_err(|_| Error::NotDesarguianLabeling)?)
        .map_err(|_| Error::NotDesarguianLabeling)?;
    if hexagon.dim() != 2 || hexagon.n_vertices() != 6 || !is_cyclically_labeled(&hexagon) {
        return Err(Error::NotDesarguianLabeling);
    }
    let v = |i: usize| [hexagon.vertices()[i][0].clone(), hexagon.vertices()[i][1].clone()];
    let lines = [line_through(&v(0), &v(1))?, line_through(&v(5), &v(2))?, line_through(&v(3), &v(4))?];
    match concurrent(&lines[0], &lines[1], &lines[2]) {
        Ok(Some(w)) if w == *centre => Ok(hexagon),
        _ => Err(Error::NotDesarguianLabeling),
    }
}

/// Every consecutive pair `(i, i+1 mod 6)` spans an edge.
fn is_cyclically_labeled(h: &Polytope) -> bool {
    (0..6).all(|i| {
        let pair = Bits::from_indices(6, [i, (i + 1) % 6]);
        h.incidence().facets().contains(&pair)
    })
}

/// The hexagon with vertices `(2,0), (1,2), (-1,2), (-2,0), (-1,-2), (1,-2)`.
pub fn regular_hexagon() -> Polytope {
    let pts = [[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]];
    hull(&PointConfig::from_i64(&pts.iter().map(|p| p.as_slice()).collect::<Vec<_>>()).unwrap()).unwrap()
}

fn small_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    frac(rng.gen_range(lo * den..=hi * den), den)
}

/// Random Desarguian hexagon with a finite centre, reproducible from `seed`.
/// Returns the hexagon and its centre.
pub fn sample_desarguian_hexagon(seed: u64) -> (Polytope, HomPoint) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c = [small_rational(&mut rng, -3, 3, 4), small_rational(&mut rng, -3, 3, 4)];
        let mut slopes: Vec<Rational> = (0..3).map(|_| small_rational(&mut rng, -4, 4, 3)).collect();
        slopes.sort();
        if slopes[0] == slopes[1] || slopes[1] == slopes[2] {
            continue;
        }
        let sign = if rng.gen_bool(0.5) { int(1) } else { int(-1) };
        let rays: [[Rational; 2]; 3] = [0, 1, 2].map(|j| [sign.clone(), &sign * &slopes[j]]);
        // Lines are L, M, R in angular order; near points are 0, 5, 4 and far ones 1, 2, 3.
        let near = |rng: &mut ChaCha8Rng| small_rational(rng, 1, 3, 5);
        let far = |rng: &mut ChaCha8Rng| small_rational(rng, 4, 9, 5);
        let picks = [near(&mut rng), far(&mut rng), far(&mut rng), far(&mut rng), near(&mut rng), near(&mut rng)];
        let centre = HomPoint::finite(c[0].clone(), c[1].clone());
        if let Ok(h) = desarguian_hexagon(&centre, &rays, &picks) {
            return (h, centre);
        }
    }
}

/// Generic hexagon: six rational points on a parabola.
pub fn generic_hexagon() -> Polytope {
    cyclic(2, &[-4, -1, 0, 2, 3, 7].map(int)).unwrap()
}

/// Moves vertex `i` by `(0, eps)` and recomputes the hull.
pub fn perturb_vertex(p: &Polytope, i: usize, eps: &Rational) -> Result<Polytope> {
    let mut pts = p.vertices().to_vec();
    let last = pts[i].len() - 1;
    pts[i][last] += eps;
    hull(&PointConfig::with_labels(pts, p.labels().to_vec())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Simplex,
    KfoldPyramidProduct,
    KfoldPyramidSum,
    JoinFamily,
}

/// `simplex`: `pyr_k(Δ_n)`; `kfold_pyramid_product`: `pyr_k(Δ_n × Δ_m)`;
/// `kfold_pyramid_sum`: `pyr_k(Δ_n ⊕ Δ_m)`; `join_family`: `pyr_k((Δ_1 × Δ_2) ⋆ (Δ_n ⊕ Δ_m))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    #[serde(default)]
    pub k: usize,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub m: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, k: usize, n: usize, m: usize) -> Self {
        FamilySpec { kind, k, n, m }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            FamilyKind::Simplex => self.k + self.n,
            FamilyKind::KfoldPyramidProduct | FamilyKind::KfoldPyramidSum => self.k + self.n + self.m,
            FamilyKind::JoinFamily => self.k + self.n + self.m + 4,
        }
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<Polytope> {
    let need_nm = spec.kind != FamilyKind::Simplex;
    if spec.n == 0 || (need_nm && spec.m == 0) {
        return Err(Error::Invalid(format!("family parameters must be positive: {spec:?}")));
    }
    let base = match spec.kind {
        FamilyKind::Simplex => simplex(spec.n)?,
        FamilyKind::KfoldPyramidProduct => product(&simplex(spec.n)?, &simplex(spec.m)?),
        FamilyKind::KfoldPyramidSum => direct_sum(&simplex(spec.n)?, &simplex(spec.m)?),
        FamilyKind::JoinFamily => join(&prism(), &direct_sum(&simplex(spec.n)?, &simplex(spec.m)?)),
    };
    Ok(pyramid(&base, spec.k))
}

/// All `join_family` specs with `k + n + m = d - 4`.
pub fn join_family_specs(d: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    if d < 6 {
        return out;
    }
    let total = d - 4;
    for k in 0..=total - 2 {
        for n in 1..total - k {
            let m = total - k - n;
            out.push(FamilySpec::new(FamilyKind::JoinFamily, k, n, m));
        }
    }
    out
}

/// A point is a strict convex combination inside the polytope's relative interior.
pub fn is_interior(p: &Polytope, x: &[Rational]) -> bool {
    let y = p.local(x);
    p.in_affine_hull(x) && p.facets().iter().all(|f| f.slack(&y).is_positive())
}
