//! Gale transforms, face recovery and the planar (corank 2) enumeration of
//! d-polytopes with d+3 vertices.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bits::{combinations, Bits};
use crate::error::{Error, Result};
use crate::exactnum::{int, kernel_of, primitive, to_rationals, Rational};
use crate::polytope::{affine_chart, incidence_iso, polar_dual, pyramid_decompose, Incidence, PointConfig, Polytope};

/// Vector configuration dual to a point configuration: vector `i` belongs to point `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleDiagram {
    corank: usize,
    vectors: Vec<Vec<Rational>>,
    labels: Vec<String>,
}

impl GaleDiagram {
    pub fn new(corank: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != corank) {
            return Err(Error::DimensionMismatch(format!("Gale vectors must have length {corank}")));
        }
        let labels = (0..vectors.len()).map(|i| i.to_string()).collect();
        Ok(GaleDiagram { corank, vectors, labels })
    }

    pub fn corank(&self) -> usize {
        self.corank
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Same configuration after the linear map `m` (rows of a `corank x corank` matrix).
    pub fn transformed(&self, m: &[Vec<Rational>]) -> GaleDiagram {
        let vectors = self.vectors.iter().map(|v| m.iter().map(|row| crate::exactnum::dot(row, v)).collect()).collect();
        GaleDiagram { corank: self.corank, vectors, labels: self.labels.clone() }
    }

    fn columns(&self, idx: &[usize]) -> Vec<Vec<Rational>> {
        (0..self.corank).map(|r| idx.iter().map(|&j| self.vectors[j][r].clone()).collect()).collect()
    }

    fn rank_of(&self, idx: &[usize]) -> usize {
        crate::exactnum::rank_of(&self.columns(idx), idx.len())
    }
}

pub fn gale_transform(pts: &PointConfig) -> Result<GaleDiagram> {
    let (d, chart) = affine_chart(pts.points());
    let n = pts.len();
    if n <= d + 1 {
        return Err(Error::NoDependencies);
    }
    let mut rows: Vec<Vec<Rational>> =
        chart.iter().map(|&c| pts.points().iter().map(|p| p[c].clone()).collect()).collect();
    rows.push(vec![Rational::one(); n]);
    let kernel = kernel_of(&rows, n);
    let corank = kernel.len();
    debug_assert_eq!(corank, n - d - 1);
    let vectors = (0..n).map(|i| kernel.iter().map(|k| k[i].clone()).collect()).collect();
    Ok(GaleDiagram { corank, vectors, labels: pts.labels().to_vec() })
}

/// Supports of positive circuits, each with its (strictly positive) coefficients.
fn positive_circuits(g: &GaleDiagram) -> Vec<(Vec<usize>, Vec<Rational>)> {
    let n = g.len();
    let max = (g.corank + 1).min(n);
    let subsets: Vec<Vec<usize>> = (1..=max).flat_map(|s| combinations(n, s)).collect();
    subsets
        .into_par_iter()
        .filter_map(|idx| {
            let ker = kernel_of(&g.columns(&idx), idx.len());
            if ker.len() != 1 {
                return None;
            }
            let v = to_rationals(&primitive(&ker[0]));
            let pos = v.iter().all(Signed::is_positive);
            let neg = v.iter().all(Signed::is_negative);
            match (pos, neg) {
                (true, _) => Some((idx, v)),
                (_, true) => Some((idx, v.into_iter().map(|x| -x).collect())),
                _ => None,
            }
        })
        .collect()
}

/// Every open half-space bounded by a hyperplane through the origin holds at least
/// two vectors.
pub fn is_polytopal(g: &GaleDiagram) -> bool {
    let n = g.len();
    if n < 2 {
        return false;
    }
    let circuits = positive_circuits(g);
    (0..n).all(|i| {
        let rest: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        g.rank_of(&rest) == g.corank
            && rest.iter().all(|&j| circuits.iter().any(|(s, _)| s.contains(&j) && !s.contains(&i)))
    })
}

/// Facet-vertex incidence of the polytope with Gale diagram `g`: facets are the
/// complements of positive circuits, sorted by their vertex lists.
pub fn faces_from_gale(g: &GaleDiagram) -> Result<Incidence> {
    if !is_polytopal(g) {
        return Err(Error::NotPolytopal);
    }
    let n = g.len();
    let mut rows: Vec<Bits> =
        positive_circuits(g).into_iter().map(|(s, _)| Bits::from_indices(n, s).complement()).collect();
    rows.sort_by_key(|r| r.to_vec());
    Ok(Incidence::new(n, rows))
}

/// A point configuration whose Gale diagram is a positive rescaling of `g`.
pub fn realize(g: &GaleDiagram) -> Result<PointConfig> {
    if !is_polytopal(g) {
        return Err(Error::NotPolytopal);
    }
    let n = g.len();
    let mut lambda = vec![Rational::zero(); n];
    for (s, v) in positive_circuits(g) {
        for (j, x) in s.iter().zip(v) {
            lambda[*j] += x;
        }
    }
    if !lambda.iter().all(Signed::is_positive) {
        return Err(Error::NotPolytopal);
    }
    let scaled: Vec<Vec<Rational>> =
        (0..g.corank).map(|r| (0..n).map(|j| &lambda[j] * &g.vectors[j][r]).collect()).collect();
    let kernel = kernel_of(&scaled, n);
    let d = n - g.corank - 1;
    let mut chosen: Vec<Vec<Rational>> = vec![vec![Rational::one(); n]];
    for k in kernel {
        if chosen.len() == d + 1 {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(k);
        if crate::exactnum::rank_of(&trial, n) == trial.len() {
            chosen = trial;
        }
    }
    let coords = (0..n).map(|i| chosen[1..].iter().map(|k| k[i].clone()).collect()).collect();
    PointConfig::with_labels(coords, g.labels.clone())
}

/// Planar Gale diagram up to combinatorial equivalence: `t` lines through the origin,
/// `2t` slots in angular order (slot `j + t` opposite slot `j`), a multiplicity per
/// slot, plus a number of zero vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContractedDiagram {
    slots: Vec<usize>,
    zero_multiplicity: usize,
}

impl ContractedDiagram {
    pub fn new(slots: Vec<usize>, zero_multiplicity: usize) -> Result<Self> {
        if slots.is_empty() || slots.len() % 2 == 1 {
            return Err(Error::Invalid("need an even, nonzero number of slots".into()));
        }
        let t = slots.len() / 2;
        if (0..t).any(|j| slots[j] + slots[j + t] == 0) {
            return Err(Error::Invalid("every line needs at least one vector".into()));
        }
        Ok(ContractedDiagram { slots, zero_multiplicity })
    }

    pub fn lines(&self) -> usize {
        self.slots.len() / 2
    }

    pub fn slot_multiplicities(&self) -> &[usize] {
        &self.slots
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.zero_multiplicity
    }

    pub fn n_points(&self) -> usize {
        self.zero_multiplicity + self.slots.iter().sum::<usize>()
    }

    /// Primitive integer direction of each slot.
    pub fn slot_direction(&self, s: usize) -> [i64; 2] {
        let t = self.lines() as i64;
        let j = (s % self.lines()) as i64;
        let g = num_integer::gcd(t - j, j.max(1)).max(1);
        let g = if j == 0 { t } else { g };
        let u = [(t - j) / g, j / g];
        if s < self.lines() {
            u
        } else {
            [-u[0], -u[1]]
        }
    }

    /// `(direction, multiplicity)` for the occupied slots, in angular order.
    pub fn directions(&self) -> Vec<([i64; 2], usize)> {
        (0..self.slots.len()).filter(|&s| self.slots[s] > 0).map(|s| (self.slot_direction(s), self.slots[s])).collect()
    }

    fn window_ok(&self) -> bool {
        let t = self.lines();
        let len = 2 * t;
        t >= 2 && (0..len).all(|s| (0..t - 1).map(|i| self.slots[(s + i) % len]).sum::<usize>() >= 2)
    }

    pub fn is_polytopal(&self) -> bool {
        self.window_ok()
    }

    /// Point index ranges: zero vectors first, then each slot's copies in slot order.
    fn slot_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = self.zero_multiplicity;
        self.slots
            .iter()
            .map(|&m| {
                let r = start..start + m;
                start += m;
                r
            })
            .collect()
    }

    /// Slot triples (one vector each) whose directions positively span the plane.
    fn spanning_triples(&self) -> Vec<[usize; 3]> {
        let len = self.slots.len();
        let t = self.lines();
        combinations(len, 3)
            .filter(|s| s.iter().all(|&x| self.slots[x] > 0))
            .filter(|s| {
                let gaps = [s[1] - s[0], s[2] - s[1], len + s[0] - s[2]];
                gaps.iter().all(|&g| g < t)
            })
            .map(|s| [s[0], s[1], s[2]])
            .collect()
    }

    pub fn facet_count(&self) -> usize {
        let t = self.lines();
        let pairs: usize = (0..t).map(|j| self.slots[j] * self.slots[j + t]).sum();
        let triples: usize =
            self.spanning_triples().iter().map(|s| s.iter().map(|&x| self.slots[x]).product::<usize>()).sum();
        self.zero_multiplicity + pairs + triples
    }

    /// Facet-vertex incidence read off the diagram (complements of positive circuits).
    pub fn incidence(&self) -> Incidence {
        let n = self.n_points();
        let t = self.lines();
        let ranges = self.slot_ranges();
        let mut cofacets: Vec<Vec<usize>> = (0..self.zero_multiplicity).map(|i| vec![i]).collect();
        for j in 0..t {
            for a in ranges[j].clone() {
                for b in ranges[j + t].clone() {
                    cofacets.push(vec![a, b]);
                }
            }
        }
        for s in self.spanning_triples() {
            for a in ranges[s[0]].clone() {
                for b in ranges[s[1]].clone() {
                    for c in ranges[s[2]].clone() {
                        cofacets.push(vec![a, b, c]);
                    }
                }
            }
        }
        let mut rows: Vec<Bits> = cofacets.into_iter().map(|c| Bits::from_indices(n, c).complement()).collect();
        rows.sort_by_key(|r| r.to_vec());
        Incidence::new(n, rows)
    }

    /// Explicit Gale vectors: slot directions, zero vectors for the apexes.
    pub fn gale_diagram(&self) -> GaleDiagram {
        let mut vectors = vec![vec![Rational::zero(), Rational::zero()]; self.zero_multiplicity];
        for (s, &m) in self.slots.iter().enumerate() {
            let u = self.slot_direction(s);
            for _ in 0..m {
                vectors.push(vec![int(u[0]), int(u[1])]);
            }
        }
        GaleDiagram::new(2, vectors).expect("planar vectors")
    }

    /// Lexicographically least slot sequence under rotations and reflections.
    fn canonical_slots(&self) -> Vec<usize> {
        let len = self.slots.len();
        let mut best = self.slots.clone();
        for r in 0..len {
            let rot: Vec<usize> = (0..len).map(|i| self.slots[(i + r) % len]).collect();
            let refl: Vec<usize> = (0..len).map(|i| self.slots[(r + len - i) % len]).collect();
            best = best.min(rot).min(refl);
        }
        best
    }
}

/// All distributions of `total` points over `2t` slots with every line occupied,
/// canonical under the dihedral symmetries.
fn canonical_sequences(t: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(t: usize, j: usize, left: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<usize>>) {
        if j == t {
            if left == 0 {
                let mut slots: Vec<usize> = cur.iter().map(|p| p.0).collect();
                slots.extend(cur.iter().map(|p| p.1));
                out.push(slots);
            }
            return;
        }
        let lines_after = t - j - 1;
        for s in 1..=left.saturating_sub(lines_after) {
            for a in 0..=s {
                cur.push((a, s - a));
                rec(t, j + 1, left - s, cur, out);
                cur.pop();
            }
        }
    }
    let mut all = Vec::new();
    rec(t, 0, total, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|s| {
            let c = ContractedDiagram { slots: s.clone(), zero_multiplicity: 0 };
            c.window_ok() && c.canonical_slots() == *s
        })
        .collect()
}

/// One combinatorial type of a d-polytope with d+3 vertices.
#[derive(Clone, Debug)]
pub struct EnumeratedType {
    pub diagram: ContractedDiagram,
    pub incidence: Incidence,
    pub polytope: Polytope,
}

/// Facet count, sorted facet sizes, sorted vertex degrees.
type TypeKey = (usize, Vec<usize>, Vec<usize>);

fn invariant_key(inc: &Incidence) -> TypeKey {
    let mut sizes: Vec<usize> = inc.facets().iter().map(Bits::count).collect();
    sizes.sort_unstable();
    let mut degrees: Vec<usize> = (0..inc.n_vertices()).map(|v| inc.vertex_facets(v).count()).collect();
    degrees.sort_unstable();
    (inc.n_facets(), sizes, degrees)
}

/// Combinatorial types of d-polytopes with d+3 vertices, for `2 <= d <= 8`.
pub fn enumerate_d_plus_3(d: usize) -> Result<Vec<EnumeratedType>> {
    enumerate_filtered(d, |_| true)
}

/// Enumeration restricted to diagrams accepted by `keep` before deduplication.
pub fn enumerate_filtered(d: usize, keep: impl Fn(&ContractedDiagram) -> bool + Sync) -> Result<Vec<EnumeratedType>> {
    if !(2..=8).contains(&d) {
        return Err(Error::EnumerationRange(d));
    }
    let n = d + 3;
    let mut diagrams = Vec::new();
    for z in 0..n {
        let total = n - z;
        for t in 2..=total {
            for slots in canonical_sequences(t, total) {
                diagrams.push(ContractedDiagram { slots, zero_multiplicity: z });
            }
        }
    }
    let diagrams: Vec<ContractedDiagram> = diagrams.into_par_iter().filter(|c| keep(c)).collect();
    let mut buckets: HashMap<TypeKey, Vec<(ContractedDiagram, Incidence)>> = HashMap::new();
    let with_inc: Vec<(ContractedDiagram, Incidence)> = diagrams
        .into_par_iter()
        .map(|c| {
            let i = c.incidence();
            (c, i)
        })
        .collect();
    for (c, inc) in with_inc {
        buckets.entry(invariant_key(&inc)).or_default().push((c, inc));
    }
    let mut keys: Vec<_> = buckets.keys().cloned().collect();
    keys.sort();
    let unique: Vec<(ContractedDiagram, Incidence)> = keys
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut reps: Vec<(ContractedDiagram, Incidence)> = Vec::new();
            for (c, inc) in &buckets[&k] {
                if !reps.iter().any(|(_, r)| incidence_iso(r, inc).is_some()) {
                    reps.push((c.clone(), inc.clone()));
                }
            }
            reps
        })
        .collect();
    unique
        .into_par_iter()
        .map(|(diagram, incidence)| {
            let pts = realize(&diagram.gale_diagram())?;
            let polytope =
                Polytope::from_facet_sets(pts.points().to_vec(), pts.labels().to_vec(), incidence.facets().to_vec())?;
            Ok(EnumeratedType { diagram, incidence, polytope })
        })
        .collect()
}

/// A non-pyramidal d-polytope with d+4 vertices and d+3 facets.
#[derive(Clone, Debug)]
pub struct Sporadic {
    pub dim: usize,
    pub polytope: Polytope,
    /// Contracted Gale diagram of the polar.
    pub polar_diagram: ContractedDiagram,
}

/// Polars of the non-pyramidal (d+3)-vertex types with d+4 facets, `3 <= d <= max_dim`.
pub fn sporadic_up_to(max_dim: usize) -> Result<Vec<Sporadic>> {
    let mut out = Vec::new();
    for d in 3..=max_dim {
        let types = enumerate_filtered(d, |c| c.zero_multiplicity == 0 && c.facet_count() == d + 4)?;
        let mut found: Vec<Sporadic> = types
            .into_iter()
            .map(|t| Sporadic { dim: d, polytope: polar_dual(&t.polytope), polar_diagram: t.diagram })
            .filter(|s| pyramid_decompose(&s.polytope).k() == 0)
            .collect();
        found.sort_by(|a, b| a.polar_diagram.slots.cmp(&b.polar_diagram.slots));
        out.extend(found);
    }
    Ok(out)
}

pub fn sporadic_d4_vertices() -> Result<Vec<Sporadic>> {
    sporadic_up_to(7)
}
