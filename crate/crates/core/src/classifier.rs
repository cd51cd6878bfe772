//! Exact extension complexity for polytopes with at most d+4 vertices or facets,
//! with certificates; interval bounds elsewhere.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bits::{binomial, combinations, Bits};
use crate::constructors::prism;
use crate::error::{Error, Result};
use crate::exactnum::{concurrent, dot, int, kernel_of, line_through, rank_of, HomPoint, Rational};
use crate::gale::gale_transform;
use crate::oracle::{rectangle_cover_bound, slack_matrix, ExtensionCertificate, Target};
use crate::polytope::{
    affine_rank, comb_iso, hull, polar_dual, preserved_faces, project, pyramid_decompose, PointConfig, Polytope,
    PreservationReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Simplex,
    FacetsD2,
    FacetsD3Sporadic,
    VerticesLeD3,
    DesarguianPyramid,
    PrismSubset,
    GenericD4,
    OutOfScope,
}

impl Case {
    pub fn as_str(&self) -> &'static str {
        match self {
            Case::Simplex => "simplex",
            Case::FacetsD2 => "facets_d2",
            Case::FacetsD3Sporadic => "facets_d3_sporadic",
            Case::VerticesLeD3 => "vertices_le_d3",
            Case::DesarguianPyramid => "desarguian_pyramid",
            Case::PrismSubset => "prism_subset",
            Case::GenericD4 => "generic_d4",
            Case::OutOfScope => "out_of_scope",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XcValue {
    Exact(usize),
    Interval { lo: usize, hi: usize },
}

impl XcValue {
    pub fn exact(&self) -> Option<usize> {
        match self {
            XcValue::Exact(v) => Some(*v),
            XcValue::Interval { .. } => None,
        }
    }

    pub fn bounds(&self) -> (usize, usize) {
        match *self {
            XcValue::Exact(v) => (v, v),
            XcValue::Interval { lo, hi } => (lo, hi),
        }
    }

    pub fn shifted(&self, by: usize) -> XcValue {
        match *self {
            XcValue::Exact(v) => XcValue::Exact(v + by),
            XcValue::Interval { lo, hi } => XcValue::Interval { lo: lo + by, hi: hi + by },
        }
    }
}

/// A cyclic labeling of a hexagon under which `p0p1`, `p5p2`, `p3p4` meet in `point`.
#[derive(Clone, Debug, PartialEq)]
pub struct DesarguianWitness {
    pub rotation: usize,
    pub reflected: bool,
    /// `labeling[i]` is the vertex index playing the role of `p_i`.
    pub labeling: [usize; 6],
    /// In the hexagon's chart coordinates.
    pub point: HomPoint,
}

#[derive(Clone, Debug)]
pub struct HexagonLift {
    /// Three-dimensional prism; vertex `i` lies over hexagon vertex `i`.
    pub q: Polytope,
    pub heights: Vec<Rational>,
    pub report: PreservationReport,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PrismSearch {
    pub subsets: usize,
    pub rank_three: usize,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Detail {
    Counts,
    Desarguian { k: usize, hexagon: Vec<String>, witness: DesarguianWitness, heights: Vec<Rational> },
    Prism { labels: Vec<String> },
    Exhaustion { hexagon_base: bool, labelings_tried: usize, search: PrismSearch },
    Interval { cover_bound: Option<usize> },
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: usize,
    pub m: usize,
    pub analysed: Target,
    pub detail: Detail,
    pub extension: ExtensionCertificate,
}

#[derive(Clone, Debug)]
pub struct XcResult {
    pub value: XcValue,
    pub case: Case,
    pub certificate: Certificate,
}

fn local2(h: &Polytope, i: usize) -> [Rational; 2] {
    let y = h.local(&h.vertices()[i]);
    [y[0].clone(), y[1].clone()]
}

/// Vertex indices in boundary order, starting at vertex 0 towards its smaller neighbour.
pub fn cyclic_order(h: &Polytope) -> Vec<usize> {
    let n = h.n_vertices();
    let neighbours = |v: usize| -> Vec<usize> {
        let mut out: Vec<usize> = h
            .incidence()
            .facets()
            .iter()
            .filter(|f| f.contains(v))
            .flat_map(|f| f.iter().filter(move |&u| u != v))
            .collect();
        out.sort_unstable();
        out
    };
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < n {
        let next = neighbours(cur).into_iter().find(|&u| u != prev && !order.contains(&u)).expect("polygon boundary");
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

fn is_hexagon(h: &Polytope) -> bool {
    h.dim() == 2 && h.n_vertices() == 6
}

/// First labeling (rotations, then reflections) whose three lines are concurrent.
pub fn desarguian_test(h: &Polytope) -> Result<Option<DesarguianWitness>> {
    if !is_hexagon(h) {
        return Err(Error::NotHexagon);
    }
    let order = cyclic_order(h);
    for reflected in [false, true] {
        for rotation in 0..6 {
            let labeling: [usize; 6] =
                std::array::from_fn(
                    |i| {
                        if reflected {
                            order[(rotation + 6 - i) % 6]
                        } else {
                            order[(rotation + i) % 6]
                        }
                    },
                );
            let p = |i: usize| local2(h, labeling[i]);
            let l1 = line_through(&p(0), &p(1))?;
            let l2 = line_through(&p(5), &p(2))?;
            let l3 = line_through(&p(3), &p(4))?;
            if let Some(point) = concurrent(&l1, &l2, &l3)? {
                return Ok(Some(DesarguianWitness { rotation, reflected, labeling, point }));
            }
        }
    }
    Ok(None)
}

fn det3(m: [[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Coefficients of `(z_u, z_v)` in the coplanarity determinant of the points
/// `(x_0, 0), (x_u, z_u), (x_v, z_v), (x_1, 0)`.
fn coplanarity(x: [&[Rational; 2]; 4]) -> [Rational; 2] {
    let row = |p: &[Rational; 2]| [p[0].clone(), p[1].clone(), Rational::one()];
    let minor = |skip: usize| -> Rational {
        let rows: Vec<[Rational; 3]> = (0..4).filter(|&r| r != skip).map(|r| row(x[r])).collect();
        det3([rows[0].clone(), rows[1].clone(), rows[2].clone()])
    };
    // z column is the third of four; cofactor signs (-1)^(r + 2).
    [minor(1) * int(-1), minor(2)]
}

/// A prism over `h` whose three lateral edges lie over the witness lines.
pub fn lift_hexagon(h: &Polytope, w: &DesarguianWitness) -> Result<HexagonLift> {
    if !is_hexagon(h) {
        return Err(Error::NotHexagon);
    }
    let rungs = [[w.labeling[0], w.labeling[1]], [w.labeling[5], w.labeling[2]], [w.labeling[3], w.labeling[4]]];
    let target = prism();
    let xs: Vec<[Rational; 2]> = (0..6).map(|i| local2(h, i)).collect();
    for flips in 0..4u8 {
        let lower: [usize; 3] = [rungs[0][0], rungs[1][(flips & 1) as usize], rungs[2][(flips >> 1 & 1) as usize]];
        let upper: [usize; 3] =
            [rungs[0][1], rungs[1][1 - (flips & 1) as usize], rungs[2][1 - (flips >> 1 & 1) as usize]];
        let mut system = Vec::new();
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let c = coplanarity([&xs[lower[i]], &xs[upper[i]], &xs[upper[j]], &xs[lower[j]]]);
            let mut row = vec![Rational::zero(); 3];
            row[i] = c[0].clone();
            row[j] = c[1].clone();
            system.push(row);
        }
        let kernel = kernel_of(&system, 3);
        let mut candidates: Vec<Vec<Rational>> = kernel.clone();
        if kernel.len() > 1 {
            candidates.push((0..3).map(|c| kernel.iter().map(|k| k[c].clone()).sum()).collect());
        }
        for z in candidates.iter().flat_map(|z| [z.clone(), z.iter().map(|x| -x).collect()]) {
            let mut heights = vec![Rational::zero(); 6];
            for (slot, &v) in upper.iter().enumerate() {
                heights[v] = z[slot].clone();
            }
            let pts: Vec<Vec<Rational>> =
                (0..6).map(|i| vec![xs[i][0].clone(), xs[i][1].clone(), heights[i].clone()]).collect();
            let Ok(q) = hull(&PointConfig::with_labels(pts, h.labels().to_vec())?) else { continue };
            if q.n_vertices() != 6 || comb_iso(&q, &target).is_none() {
                continue;
            }
            let Ok(shadow) = project(&q, 2) else { continue };
            let want: std::collections::HashSet<Vec<Rational>> = xs.iter().map(|p| p.to_vec()).collect();
            let got: std::collections::HashSet<Vec<Rational>> = shadow.vertices().iter().cloned().collect();
            if want != got {
                continue;
            }
            let report = preserved_faces(&q)?;
            return Ok(HexagonLift { q, heights, report });
        }
    }
    Err(Error::LiftNotFound)
}

fn prism_check(p: &Polytope, subset: &[usize], target: &Polytope) -> (bool, bool) {
    let pts: Vec<Vec<Rational>> = subset.iter().map(|&i| p.vertices()[i].clone()).collect();
    if affine_rank(&pts) != 3 {
        return (false, false);
    }
    let hit = p.sub_hull(subset).map(|b| b.n_vertices() == 6 && comb_iso(&b, target).is_some()).unwrap_or(false);
    (true, hit)
}

/// First 6-subset (lexicographically) spanning a combinatorial triangular prism.
pub fn find_prism_subset(p: &Polytope) -> (Option<Vec<usize>>, PrismSearch) {
    let target = prism();
    let subsets: Vec<Vec<usize>> = combinations(p.n_vertices(), 6).collect();
    let status: Vec<(bool, bool)> = subsets.par_iter().map(|s| prism_check(p, s, &target)).collect();
    let search = PrismSearch { subsets: subsets.len(), rank_three: status.iter().filter(|s| s.0).count() };
    let hit = status.iter().position(|s| s.1).map(|i| subsets[i].clone());
    (hit, search)
}

fn identity_extension(p: &Polytope, target: Target) -> ExtensionCertificate {
    ExtensionCertificate { target, keep: p.ambient_dim(), q: p.clone() }
}

fn padded(v: &[Rational], extra: usize) -> Vec<Rational> {
    let mut w = v.to_vec();
    w.extend(std::iter::repeat_n(Rational::zero(), extra));
    w
}

/// `conv{(v_i, e_i)}`: a simplex with one facet per vertex of `p`.
fn vertex_simplex_extension(p: &Polytope, target: Target) -> ExtensionCertificate {
    let n = p.n_vertices();
    let dim = p.ambient_dim();
    let verts: Vec<Vec<Rational>> = p
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut w = padded(v, n);
            w[dim + i] = Rational::one();
            w
        })
        .collect();
    let sets = (0..n).map(|skip| Bits::from_indices(n, (0..n).filter(|&j| j != skip))).collect();
    let q = Polytope::from_facet_sets(verts, p.labels().to_vec(), sets).expect("vertex simplex");
    ExtensionCertificate { target, keep: dim, q }
}

fn min_extension(p: &Polytope, target: Target) -> ExtensionCertificate {
    if p.n_facets() <= p.n_vertices() {
        identity_extension(p, target)
    } else {
        vertex_simplex_extension(p, target)
    }
}

/// Pyramid over a lifted base. `lifted[i]` is the lift of vertex `i` of `p`; the base
/// spans `base` with facets `base_facets` (in `p`'s indices), every other vertex is an apex.
fn pyramid_extension(
    p: &Polytope,
    lifted: Vec<Vec<Rational>>,
    base: &[usize],
    base_facets: &[Vec<usize>],
    target: Target,
) -> Result<ExtensionCertificate> {
    let n = p.n_vertices();
    let apexes: Vec<usize> = (0..n).filter(|i| !base.contains(i)).collect();
    let mut sets: Vec<Bits> =
        base_facets.iter().map(|f| Bits::from_indices(n, f.iter().copied().chain(apexes.iter().copied()))).collect();
    for &a in &apexes {
        sets.push(Bits::from_indices(n, (0..n).filter(|&j| j != a)));
    }
    let q = Polytope::from_facet_sets(lifted, p.labels().to_vec(), sets)?;
    Ok(ExtensionCertificate { target, keep: p.ambient_dim(), q })
}

fn prism_extension(p: &Polytope, subset: &[usize], target: Target) -> Result<ExtensionCertificate> {
    let n = p.n_vertices();
    let others: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
    let extra = others.len();
    let lifted = (0..n)
        .map(|i| {
            let mut w = padded(&p.vertices()[i], extra);
            if let Some(j) = others.iter().position(|&o| o == i) {
                w[p.ambient_dim() + j] = Rational::one();
            }
            w
        })
        .collect();
    let b = p.sub_hull(subset)?;
    let facets: Vec<Vec<usize>> = b
        .incidence()
        .facets()
        .iter()
        .map(|f| f.iter().map(|i| p.vertex_index(&b.labels()[i]).expect("sub hull label")).collect())
        .collect();
    pyramid_extension(p, lifted, subset, &facets, target)
}

struct Analysis {
    value: usize,
    case: Case,
    detail: Detail,
    extension: ExtensionCertificate,
}

/// The d+3 / d+4 decision for a d-polytope with d+4 vertices.
fn analyse(x: &Polytope, target: Target) -> Result<Analysis> {
    let d = x.dim();
    let dec = pyramid_decompose(x);
    let hexagon_base = is_hexagon(&dec.base);
    let mut labelings_tried = 0;
    if hexagon_base {
        if let Some(w) = desarguian_test(&dec.base)? {
            let lift = lift_hexagon(&dec.base, &w)?;
            let base_idx: Vec<usize> =
                dec.base.labels().iter().map(|l| x.vertex_index(l).expect("base label")).collect();
            let lifted = (0..x.n_vertices())
                .map(|i| {
                    let mut v = x.vertices()[i].clone();
                    v.push(match base_idx.iter().position(|&b| b == i) {
                        Some(j) => lift.heights[j].clone(),
                        None => Rational::zero(),
                    });
                    v
                })
                .collect();
            let facets: Vec<Vec<usize>> =
                lift.q.incidence().facets().iter().map(|f| f.iter().map(|i| base_idx[i]).collect()).collect();
            let extension = pyramid_extension(x, lifted, &base_idx, &facets, target)?;
            let hexagon = w.labeling.iter().map(|&i| dec.base.labels()[i].clone()).collect();
            return Ok(Analysis {
                value: d + 3,
                case: Case::DesarguianPyramid,
                detail: Detail::Desarguian { k: dec.k(), hexagon, witness: w, heights: lift.heights },
                extension,
            });
        }
        labelings_tried = 12;
    }
    let (hit, search) = find_prism_subset(x);
    if let Some(subset) = hit {
        let extension = prism_extension(x, &subset, target)?;
        let labels = subset.iter().map(|&i| x.labels()[i].clone()).collect();
        return Ok(Analysis { value: d + 3, case: Case::PrismSubset, detail: Detail::Prism { labels }, extension });
    }
    Ok(Analysis {
        value: d + 4,
        case: Case::GenericD4,
        detail: Detail::Exhaustion { hexagon_base, labelings_tried, search },
        extension: min_extension(x, target),
    })
}

pub fn classify_xc(p: &Polytope) -> Result<XcResult> {
    let (d, n, m) = (p.dim(), p.n_vertices(), p.n_facets());
    let exact = |value: usize, case: Case, detail: Detail, extension: ExtensionCertificate, analysed: Target| {
        XcResult { value: XcValue::Exact(value), case, certificate: Certificate { n, m, analysed, detail, extension } }
    };
    if n == d + 1 {
        return Ok(exact(d + 1, Case::Simplex, Detail::Counts, identity_extension(p, Target::Primal), Target::Primal));
    }
    if m == d + 2 {
        return Ok(exact(d + 2, Case::FacetsD2, Detail::Counts, identity_extension(p, Target::Primal), Target::Primal));
    }
    if n <= d + 3 {
        return Ok(exact(n, Case::VerticesLeD3, Detail::Counts, min_extension(p, Target::Primal), Target::Primal));
    }
    if m == d + 3 {
        if n > d + 4 {
            let ext = identity_extension(p, Target::Primal);
            return Ok(exact(d + 3, Case::VerticesLeD3, Detail::Counts, ext, Target::Polar));
        }
        // A prism subset, when present, is reported alongside the facet count.
        let (hit, _) = find_prism_subset(p);
        let (detail, ext) = match hit {
            Some(subset) => (
                Detail::Prism { labels: subset.iter().map(|&i| p.labels()[i].clone()).collect() },
                prism_extension(p, &subset, Target::Primal)?,
            ),
            None => (Detail::Counts, identity_extension(p, Target::Primal)),
        };
        return Ok(exact(d + 3, Case::FacetsD3Sporadic, detail, ext, Target::Primal));
    }
    if n == d + 4 || m == d + 4 {
        let (x, target) = if n == d + 4 { (p.clone(), Target::Primal) } else { (polar_dual(p), Target::Polar) };
        let a = analyse(&x, target)?;
        return Ok(exact(a.value, a.case, a.detail, a.extension, target));
    }
    let cover = rectangle_cover_bound(&slack_matrix(p)).ok();
    let lo = (d + 1).max(cover.unwrap_or(0));
    Ok(XcResult {
        value: XcValue::Interval { lo, hi: n.min(m) },
        case: Case::OutOfScope,
        certificate: Certificate {
            n,
            m,
            analysed: Target::Primal,
            detail: Detail::Interval { cover_bound: cover },
            extension: min_extension(p, Target::Primal),
        },
    })
}

/// The polytope an extension certificate of `p` is meant to project onto.
pub fn certificate_target(p: &Polytope, target: Target) -> Polytope {
    match target {
        Target::Primal => p.clone(),
        Target::Polar => polar_dual(p),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Lawrence,
    OnePointSuspension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub kind: StepKind,
    pub pair: [String; 2],
    /// Homogeneous coordinates `(y, w)` in the chart of the apex-free base.
    pub point: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Join { prism: Vec<String>, k: usize, n: usize, m: usize },
    Chain { prism: Vec<String>, apexes: Vec<String>, steps: Vec<ChainStep>, extra_point: Vec<Rational> },
}

fn homogeneous(y: Vec<Rational>) -> Vec<Rational> {
    let mut h = y;
    h.push(Rational::one());
    h
}

fn combine(a: &[Rational], sa: &Rational, b: &[Rational], sb: &Rational) -> Vec<Rational> {
    let mut x: Vec<Rational> = a.iter().zip(b).map(|(p, q)| sb * p - sa * q).collect();
    let w = x.last().expect("homogeneous").clone();
    if w.is_negative() {
        x.iter_mut().for_each(|c| *c = -c.clone());
    } else if w.is_zero() {
        // Orient a point at infinity along b - a.
        let dir: Vec<Rational> = a.iter().zip(b).map(|(p, q)| q - p).collect();
        if dot(&x, &dir).is_negative() {
            x.iter_mut().for_each(|c| *c = -c.clone());
        }
    }
    x
}

/// Join or one-point-suspension/Lawrence chain structure of a polytope with d+4
/// vertices containing a prism subset.
pub fn decompose_structure(p: &Polytope) -> Result<Structure> {
    let d = p.dim();
    if p.n_vertices() != d + 4 {
        return Err(Error::NotPrismStructure(format!("{} vertices in dimension {d}", p.n_vertices())));
    }
    let (hit, _) = find_prism_subset(p);
    let subset = hit.ok_or_else(|| Error::NotPrismStructure("no prism subset".into()))?;
    let prism_labels: Vec<String> = subset.iter().map(|&i| p.labels()[i].clone()).collect();
    let others: Vec<usize> = (0..p.n_vertices()).filter(|i| !subset.contains(i)).collect();
    let a_pts: Vec<Vec<Rational>> = others.iter().map(|&i| p.vertices()[i].clone()).collect();
    let dim_a = affine_rank(&a_pts);
    if d >= 4 && dim_a == d - 4 {
        let a = p.sub_hull(&others)?;
        let dec = pyramid_decompose(&a);
        let g = gale_transform(&dec.base.point_config())
            .map_err(|_| Error::NotPrismStructure("remaining vertices form a simplex".into()))?;
        if g.corank() != 1 {
            return Err(Error::NotPrismStructure("remaining vertices are not a direct sum of simplices".into()));
        }
        let pos = g.vectors().iter().filter(|v| v[0].is_positive()).count();
        let neg = g.vectors().iter().filter(|v| v[0].is_negative()).count();
        let (n, m) = ((pos - 1).min(neg - 1), (pos - 1).max(neg - 1));
        return Ok(Structure::Join { prism: prism_labels, k: dec.k(), n, m });
    }
    if d < 3 || dim_a != d - 3 {
        return Err(Error::NotPrismStructure(format!("remaining vertices span dimension {dim_a} in dimension {d}")));
    }
    let dec = pyramid_decompose(p);
    let base = &dec.base;
    let idx = |l: &String| base.vertex_index(l).expect("prism vertices are never apexes");
    let b_rows: Vec<Vec<Rational>> =
        prism_labels.iter().map(|l| homogeneous(base.local(&base.vertices()[idx(l)]))).collect();
    let mut cur: Vec<(String, Vec<Rational>)> = base
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, l)| !prism_labels.contains(l))
        .map(|(i, l)| (l.clone(), homogeneous(base.local(&base.vertices()[i]))))
        .collect();
    let cols = base.dim() + 1;
    let mut flat = base.dim();
    let mut steps = Vec::new();
    while cur.len() > 1 {
        let len = cur.len();
        let mut pairs: Vec<(usize, usize)> = combinations(len, 2).map(|c| (c[0], c[1])).collect();
        pairs.reverse();
        let mut found = None;
        for (i, j) in pairs {
            let mut rows = b_rows.clone();
            rows.extend(cur.iter().enumerate().filter(|(t, _)| *t != i && *t != j).map(|(_, x)| x.1.clone()));
            if rank_of(&rows, cols) != flat {
                continue;
            }
            let (a, b) = (&cur[i].1, &cur[j].1);
            let h = kernel_of(&rows, cols).into_iter().find(|k| !dot(k, a).is_zero() || !dot(k, b).is_zero());
            let Some(h) = h else { continue };
            let (sa, sb) = (dot(&h, a), dot(&h, b));
            if sa.is_zero() || sb.is_zero() {
                continue;
            }
            found = Some((i, j, sa, sb));
            break;
        }
        let (i, j, sa, sb) = found.ok_or_else(|| Error::NotPrismStructure("no hyperplane splits off a pair".into()))?;
        let kind = if (&sa * &sb).is_positive() { StepKind::Lawrence } else { StepKind::OnePointSuspension };
        let point = combine(&cur[i].1, &sa, &cur[j].1, &sb);
        let pair = [cur[i].0.clone(), cur[j].0.clone()];
        let label = format!("{}∨{}", pair[0], pair[1]);
        steps.push(ChainStep { kind, pair, point: point.clone() });
        cur.remove(j);
        cur.remove(i);
        cur.push((label, point));
        flat -= 1;
    }
    Ok(Structure::Chain { prism: prism_labels, apexes: dec.apexes, steps, extra_point: cur[0].1.clone() })
}

/// `C(n, 6)`, the size of the prism-subset search space.
pub fn prism_search_space(n: usize) -> u128 {
    binomial(n, 6)
}
