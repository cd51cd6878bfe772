//! Dual-description polytopes built from exact vertex sets.
//!
//! A [`Polytope`] keeps its vertices in ambient coordinates together with a *chart*:
//! a set of `dim` coordinate indices on which the projection is injective over the
//! affine hull. Facet inequalities are written in chart coordinates, so lower
//! dimensional polytopes (pyramid bases, prism subsets, hexagons inside `R^d`) are
//! handled like full-dimensional ones.

mod hull;
mod iso;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use iso::{incidence_iso, Isomorphism};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::exactnum::{centroid, dot, echelon_of_rows, kernel_of, primitive, sub, to_rationals, Rational};

/// Ordered, labeled point set in `R^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    ambient_dim: usize,
    points: Vec<Vec<Rational>>,
    labels: Vec<String>,
}

impl PointConfig {
    /// Points with default labels `"0"`, `"1"`, ...
    pub fn new(points: Vec<Vec<Rational>>) -> Result<Self> {
        let labels = (0..points.len()).map(|i| i.to_string()).collect();
        PointConfig::with_labels(points, labels)
    }

    pub fn with_labels(points: Vec<Vec<Rational>>, labels: Vec<String>) -> Result<Self> {
        let ambient_dim = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch("points of different lengths".into()));
        }
        if labels.len() != points.len() {
            return Err(Error::Invalid(format!("{} labels for {} points", labels.len(), points.len())));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Invalid(format!("duplicate label {dup:?}")));
        }
        Ok(PointConfig { ambient_dim, points, labels })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        PointConfig::new(points.iter().map(|p| crate::exactnum::ints(p)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Inequality `normal . y <= offset` in chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Facet {
    fn from_homogeneous(h: &[BigInt]) -> Facet {
        let (a, b) = h.split_at(h.len() - 1);
        Facet { normal: to_rationals(a), offset: Rational::from_integer(b[0].clone()) }
    }

    pub fn slack(&self, y: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, y)
    }
}

/// Facet-by-vertex incidence: row `f` is the set of vertices lying on facet `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    n_vertices: usize,
    rows: Vec<Bits>,
}

impl Incidence {
    pub fn new(n_vertices: usize, rows: Vec<Bits>) -> Self {
        assert!(rows.iter().all(|r| r.len() == n_vertices));
        Incidence { n_vertices, rows }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_facets(&self) -> usize {
        self.rows.len()
    }

    pub fn facet(&self, f: usize) -> &Bits {
        &self.rows[f]
    }

    pub fn facets(&self) -> &[Bits] {
        &self.rows
    }

    pub fn contains(&self, f: usize, v: usize) -> bool {
        self.rows[f].contains(v)
    }

    /// Facets containing vertex `v`.
    pub fn vertex_facets(&self, v: usize) -> Bits {
        Bits::from_indices(self.rows.len(), (0..self.rows.len()).filter(|&f| self.rows[f].contains(v)))
    }

    pub fn transpose(&self) -> Incidence {
        Incidence::new(self.rows.len(), (0..self.n_vertices).map(|v| self.vertex_facets(v)).collect())
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        self.rows.iter().map(|r| (0..self.n_vertices).map(|v| r.contains(v)).collect()).collect()
    }

    /// Same facets in canonical (sorted) order, for set-level comparisons.
    pub fn sorted(&self) -> Incidence {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.to_vec());
        Incidence::new(self.n_vertices, rows)
    }
}

/// Sign class of a facet normal's last coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceClass {
    Upper,
    Lower,
    Vertical,
}

/// How a face of `Q` behaves under the projection forgetting the last coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preservation {
    StrictlyPreserved,
    PreservedNotStrictly,
    NotPreserved,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    pub facet_classes: Vec<FaceClass>,
    pub vertices: Vec<Preservation>,
    pub facets: Vec<Preservation>,
}

#[derive(Clone, Debug)]
pub struct PyramidDecomposition {
    pub base: Polytope,
    pub apexes: Vec<String>,
}

impl PyramidDecomposition {
    pub fn k(&self) -> usize {
        self.apexes.len()
    }
}

/// Irredundant vertices, facet inequalities and their incidence.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    chart: Vec<usize>,
    vertices: Vec<Vec<Rational>>,
    labels: Vec<String>,
    facets: Vec<Facet>,
    incidence: Incidence,
}

/// Dimension of the affine hull and the chart coordinates (pivot columns).
pub(crate) fn affine_chart(points: &[Vec<Rational>]) -> (usize, Vec<usize>) {
    let Some(p0) = points.first() else {
        return (0, Vec::new());
    };
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| sub(p, p0)).collect();
    let ech = echelon_of_rows(&diffs, p0.len());
    (ech.rank(), ech.pivots.clone())
}

pub(crate) fn affine_rank(points: &[Vec<Rational>]) -> usize {
    affine_chart(points).0
}

fn restrict(p: &[Rational], chart: &[usize]) -> Vec<Rational> {
    chart.iter().map(|&c| p[c].clone()).collect()
}

fn keep_marked<T>(xs: Vec<T>, mask: &[bool]) -> Vec<T> {
    xs.into_iter().zip(mask).filter(|(_, &m)| m).map(|(x, _)| x).collect()
}

/// Convex hull of a point configuration, in any ambient dimension.
pub fn hull(pts: &PointConfig) -> Result<Polytope> {
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (p, l) in pts.points.iter().zip(&pts.labels) {
        if seen.insert(p.clone()) {
            points.push(p.clone());
            labels.push(l.clone());
        }
    }
    let (dim, chart) = affine_chart(&points);
    if dim == 0 {
        return Err(Error::ZeroDimensional);
    }
    let local: Vec<Vec<Rational>> = points.iter().map(|p| restrict(p, &chart)).collect();
    let found = hull::enumerate_facets(&local, dim);
    let is_vertex = hull::vertex_mask(points.len(), &found);
    let mut map = vec![None; points.len()];
    let mut next = 0;
    for (j, &v) in is_vertex.iter().enumerate() {
        if v {
            map[j] = Some(next);
            next += 1;
        }
    }
    let mut pairs: Vec<(Facet, Bits)> =
        found.iter().map(|(h, t)| (Facet::from_homogeneous(h), t.remap(next, &map))).collect();
    pairs.sort_by_key(|(_, t)| t.to_vec());
    let (facets, rows) = pairs.into_iter().unzip();
    Ok(Polytope {
        dim,
        chart,
        vertices: keep_marked(points, &is_vertex),
        labels: keep_marked(labels, &is_vertex),
        facets,
        incidence: Incidence::new(next, rows),
    })
}

impl Polytope {
    /// Builds a polytope whose combinatorics is already known: `facet_sets[f]` lists the
    /// vertices on facet `f`. The inequalities are solved for and every slack is checked.
    pub fn from_facet_sets(
        vertices: Vec<Vec<Rational>>,
        labels: Vec<String>,
        facet_sets: Vec<Bits>,
    ) -> Result<Polytope> {
        PointConfig::with_labels(vertices.clone(), labels.clone())?;
        let (dim, chart) = affine_chart(&vertices);
        if dim == 0 {
            return Err(Error::ZeroDimensional);
        }
        let local: Vec<Vec<Rational>> = vertices.iter().map(|p| restrict(p, &chart)).collect();
        let rows = hull::homogeneous_rows(&local);
        let mut facets = Vec::with_capacity(facet_sets.len());
        for set in &facet_sets {
            let members: Vec<Vec<Rational>> = set.iter().map(|i| to_rationals(&rows[i])).collect();
            let kernel = kernel_of(&members, dim + 1);
            if kernel.len() != 1 {
                return Err(Error::Invalid(format!("vertex set {set:?} does not span a hyperplane")));
            }
            let mut h = primitive(&kernel[0]);
            let outside = (0..vertices.len())
                .find(|&i| !set.contains(i))
                .ok_or_else(|| Error::Invalid("facet contains every vertex".into()))?;
            let ev = |h: &[BigInt], r: &[BigInt]| h.iter().zip(r).fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
            if ev(&h, &rows[outside]).is_positive() {
                h.iter_mut().for_each(|x| *x = -x.clone());
            }
            for (i, r) in rows.iter().enumerate() {
                let s = ev(&h, r);
                let ok = if set.contains(i) { s.is_zero() } else { s.is_negative() };
                if !ok {
                    return Err(Error::Invalid(format!("vertex {i} violates the facet through {set:?}")));
                }
            }
            facets.push(Facet::from_homogeneous(&h));
        }
        let n = vertices.len();
        Ok(Polytope { dim, chart, vertices, labels, facets, incidence: Incidence::new(n, facet_sets) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn chart(&self) -> &[usize] {
        &self.chart
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn incidence(&self) -> &Incidence {
        &self.incidence
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    pub fn point_config(&self) -> PointConfig {
        PointConfig { ambient_dim: self.ambient_dim(), points: self.vertices.clone(), labels: self.labels.clone() }
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Chart coordinates of an ambient point.
    pub fn local(&self, p: &[Rational]) -> Vec<Rational> {
        restrict(p, &self.chart)
    }

    pub fn local_vertices(&self) -> Vec<Vec<Rational>> {
        self.vertices.iter().map(|v| self.local(v)).collect()
    }

    pub fn in_affine_hull(&self, p: &[Rational]) -> bool {
        if p.len() != self.ambient_dim() {
            return false;
        }
        let mut pts = self.vertices.clone();
        pts.push(p.to_vec());
        affine_rank(&pts) == self.dim
    }

    /// Closed containment test.
    pub fn contains(&self, p: &[Rational]) -> bool {
        let y = self.local(p);
        self.in_affine_hull(p) && self.facets.iter().all(|f| !f.slack(&y).is_negative())
    }

    /// Relabels vertices with `"0"`, `"1"`, ...
    pub fn with_default_labels(mut self) -> Polytope {
        self.labels = (0..self.vertices.len()).map(|i| i.to_string()).collect();
        self
    }

    /// Sub-polytope spanned by the given vertex indices.
    pub fn sub_hull(&self, idx: &[usize]) -> Result<Polytope> {
        hull(&PointConfig::with_labels(
            idx.iter().map(|&i| self.vertices[i].clone()).collect(),
            idx.iter().map(|&i| self.labels[i].clone()).collect(),
        )?)
    }
}

/// Polar of `P` translated so that its vertex centroid is the origin. Vertex `f` of
/// the result corresponds to facet `f` of `P`, facet `v` to vertex `v`.
pub fn polar_dual(p: &Polytope) -> Polytope {
    let local = p.local_vertices();
    let c = centroid(&local);
    let vertices: Vec<Vec<Rational>> = p
        .facets
        .iter()
        .map(|f| {
            let b = &f.offset - dot(&f.normal, &c);
            debug_assert!(b.is_positive());
            f.normal.iter().map(|a| a / &b).collect()
        })
        .collect();
    let dual_inc = p.incidence.transpose();
    let facets = local
        .iter()
        .map(|y| {
            let mut h = sub(y, &c);
            h.push(Rational::one());
            Facet::from_homogeneous(&primitive(&h))
        })
        .collect();
    let chart = (0..p.dim).collect();
    let labels = (0..vertices.len()).map(|i| i.to_string()).collect();
    Polytope { dim: p.dim, chart, vertices, labels, facets, incidence: dual_inc }
}

/// Hull of the vertex coordinates truncated to the first `keep` coordinates.
pub fn project(p: &Polytope, keep: usize) -> Result<Polytope> {
    if keep >= p.ambient_dim() {
        return Err(Error::Invalid(format!("cannot keep {keep} of {} coordinates", p.ambient_dim())));
    }
    let pts: Vec<Vec<Rational>> = p.vertices.iter().map(|v| v[..keep].to_vec()).collect();
    hull(&PointConfig::with_labels(pts, p.labels.clone())?)
}

/// Combinatorial isomorphism between two polytopes of the same dimension.
pub fn comb_iso(p: &Polytope, q: &Polytope) -> Option<Isomorphism> {
    if p.dim != q.dim {
        return None;
    }
    incidence_iso(&p.incidence, &q.incidence)
}

/// Vertices lying on every facet but one.
pub fn apexes(p: &Polytope) -> Vec<usize> {
    let m = p.n_facets();
    (0..p.n_vertices()).filter(|&v| m - p.incidence.vertex_facets(v).count() == 1).collect()
}

/// Peels apexes (lowest index first) until none is left; simplices stop at an edge.
pub fn pyramid_decompose(p: &Polytope) -> PyramidDecomposition {
    let mut base = p.clone();
    let mut peeled = Vec::new();
    while base.dim > 1 {
        let Some(&v) = apexes(&base).first() else {
            break;
        };
        peeled.push(base.labels[v].clone());
        base = peel_apex(&base, v);
    }
    PyramidDecomposition { base, apexes: peeled }
}

/// Base of `p` opposite the apex `apex`.
pub fn peel_apex(p: &Polytope, apex: usize) -> Polytope {
    let opposite = (0..p.n_facets()).find(|&f| !p.incidence.contains(f, apex)).expect("apex misses exactly one facet");
    let keep: Vec<usize> = p.incidence.facet(opposite).to_vec();
    let mut map = vec![None; p.n_vertices()];
    for (i, &v) in keep.iter().enumerate() {
        map[v] = Some(i);
    }
    let sets =
        (0..p.n_facets()).filter(|&f| f != opposite).map(|f| p.incidence.facet(f).remap(keep.len(), &map)).collect();
    Polytope::from_facet_sets(
        keep.iter().map(|&v| p.vertices[v].clone()).collect(),
        keep.iter().map(|&v| p.labels[v].clone()).collect(),
        sets,
    )
    .expect("pyramid base combinatorics is consistent")
}

/// Face-preservation bookkeeping for the map forgetting the last coordinate.
pub fn preserved_faces(q: &Polytope) -> Result<PreservationReport> {
    if !q.is_full_dimensional() {
        return Err(Error::Invalid("preserved_faces needs a full-dimensional polytope".into()));
    }
    let classes: Vec<FaceClass> = q
        .facets
        .iter()
        .map(|f| {
            let last = f.normal.last().expect("dimension >= 1");
            if last.is_positive() {
                FaceClass::Upper
            } else if last.is_negative() {
                FaceClass::Lower
            } else {
                FaceClass::Vertical
            }
        })
        .collect();
    let judge = |containing: &mut dyn Iterator<Item = usize>| {
        let (mut up, mut low, mut vert) = (false, false, true);
        for f in containing {
            match classes[f] {
                FaceClass::Upper => up = true,
                FaceClass::Lower => low = true,
                FaceClass::Vertical => {}
            }
            vert &= classes[f] == FaceClass::Vertical;
        }
        if up && low {
            Preservation::StrictlyPreserved
        } else if vert {
            Preservation::PreservedNotStrictly
        } else {
            Preservation::NotPreserved
        }
    };
    let vertices = (0..q.n_vertices()).map(|v| judge(&mut q.incidence.vertex_facets(v).iter())).collect();
    let facets = (0..q.n_facets()).map(|f| judge(&mut std::iter::once(f))).collect();
    Ok(PreservationReport { facet_classes: classes, vertices, facets })
}

#[cfg(test)]
mod tests;
