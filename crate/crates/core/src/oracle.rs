//! Independent checks: slack matrices, the rectangle covering lower bound, and exact
//! verification of extensions.

use std::collections::{HashSet, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::exactnum::{rank_of, Rational};
use crate::polytope::{hull, project, Polytope};

/// Cell limit for the exact cover search.
pub const COVER_GUARD: usize = 200;

/// Facet-by-vertex slacks `b - a . v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlackMatrix {
    entries: Vec<Vec<Rational>>,
    cols: usize,
}

impl SlackMatrix {
    pub fn from_entries(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged slack matrix".into()));
        }
        Ok(SlackMatrix { entries, cols })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.entries, self.cols)
    }

    /// Row `f` lists the columns with a nonzero entry.
    pub fn support(&self) -> Vec<Bits> {
        self.entries
            .iter()
            .map(|r| Bits::from_indices(self.cols, (0..self.cols).filter(|&j| !r[j].is_zero())))
            .collect()
    }

    pub fn transpose(&self) -> SlackMatrix {
        let entries = (0..self.cols).map(|j| self.entries.iter().map(|r| r[j].clone()).collect()).collect();
        SlackMatrix { entries, cols: self.rows() }
    }
}

pub fn slack_matrix(p: &Polytope) -> SlackMatrix {
    let local = p.local_vertices();
    let entries = p.facets().iter().map(|f| local.iter().map(|y| f.slack(y)).collect()).collect();
    SlackMatrix { entries, cols: p.n_vertices() }
}

struct CoverProblem {
    n_cells: usize,
    cell_pos: Vec<(usize, usize)>,
    support: Vec<Bits>,
    rects: Vec<Bits>,
    rects_of_cell: Vec<Vec<usize>>,
    largest: usize,
}

impl CoverProblem {
    fn new(support: Vec<Bits>, cols: usize) -> Self {
        let mut cell_id = vec![vec![usize::MAX; cols]; support.len()];
        let mut cell_pos = Vec::new();
        for (r, row) in support.iter().enumerate() {
            for c in row.iter() {
                cell_id[r][c] = cell_pos.len();
                cell_pos.push((r, c));
            }
        }
        let n_cells = cell_pos.len();
        // Maximal rectangles correspond to nonempty intersections of row supports.
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut queue: VecDeque<Bits> = VecDeque::new();
        for row in &support {
            if !row.is_empty() && seen.insert(row.clone()) {
                queue.push_back(row.clone());
            }
        }
        while let Some(x) = queue.pop_front() {
            for row in &support {
                let y = x.intersect(row);
                if !y.is_empty() && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut col_sets: Vec<Bits> = seen.into_iter().collect();
        col_sets.sort_by_key(|c| c.to_vec());
        let rects: Vec<Bits> = col_sets
            .iter()
            .map(|cs| {
                Bits::from_indices(
                    n_cells,
                    support
                        .iter()
                        .enumerate()
                        .filter(|(_, row)| cs.is_subset(row))
                        .flat_map(|(r, _)| cs.iter().map(|c| cell_id[r][c]).collect::<Vec<_>>()),
                )
            })
            .collect();
        let mut rects_of_cell = vec![Vec::new(); n_cells];
        for (i, r) in rects.iter().enumerate() {
            for c in r.iter() {
                rects_of_cell[c].push(i);
            }
        }
        let largest = rects.iter().map(Bits::count).max().unwrap_or(0);
        CoverProblem { n_cells, cell_pos, support, rects, rects_of_cell, largest }
    }

    /// Two cells fit in one rectangle iff the crossing cells are in the support too.
    fn compatible(&self, a: usize, b: usize) -> bool {
        let (i, j) = self.cell_pos[a];
        let (k, l) = self.cell_pos[b];
        self.support[i].contains(l) && self.support[k].contains(j)
    }

    fn lower_bound(&self, uncovered: &Bits) -> usize {
        let mut fooling: Vec<usize> = Vec::new();
        for c in uncovered.iter() {
            if fooling.iter().all(|&f| !self.compatible(c, f)) {
                fooling.push(c);
            }
        }
        let by_area = uncovered.count().div_ceil(self.largest.max(1));
        fooling.len().max(by_area)
    }

    fn greedy(&self) -> usize {
        let mut uncovered = Bits::full(self.n_cells);
        let mut used = 0;
        while !uncovered.is_empty() {
            let best = self
                .rects
                .iter()
                .max_by_key(|r| r.intersect(&uncovered).count())
                .expect("every cell lies in a rectangle");
            uncovered = uncovered.intersect(&best.complement());
            used += 1;
        }
        used
    }

    fn search(&self, uncovered: &Bits, depth: usize, best: &mut usize) {
        if uncovered.is_empty() {
            *best = (*best).min(depth);
            return;
        }
        if depth + self.lower_bound(uncovered) >= *best {
            return;
        }
        let cell = uncovered.iter().min_by_key(|&c| self.rects_of_cell[c].len()).expect("nonempty");
        let mut options: Vec<(usize, Bits)> = self.rects_of_cell[cell]
            .iter()
            .map(|&r| {
                let rest = uncovered.intersect(&self.rects[r].complement());
                (rest.count(), rest)
            })
            .collect();
        options.sort_by_key(|o| o.0);
        for (_, rest) in options {
            self.search(&rest, depth + 1, best);
        }
    }

    fn solve(&self) -> usize {
        if self.n_cells == 0 {
            return 0;
        }
        let mut best = self.greedy();
        self.search(&Bits::full(self.n_cells), 0, &mut best);
        best
    }
}

/// Minimum number of combinatorial rectangles covering the support of `s`.
pub fn rectangle_cover_bound(s: &SlackMatrix) -> Result<usize> {
    let cells = s.rows() * s.cols();
    if cells > COVER_GUARD {
        return Err(Error::SupportTooLarge(cells));
    }
    Ok(CoverProblem::new(s.support(), s.cols()).solve())
}

/// Minimum rectangle cover of an explicit 0/1 pattern (rows of column sets).
pub fn rectangle_cover_of_support(support: &[Bits], cols: usize) -> Result<usize> {
    let cells = support.len() * cols;
    if cells > COVER_GUARD {
        return Err(Error::SupportTooLarge(cells));
    }
    Ok(CoverProblem::new(support.to_vec(), cols).solve())
}

/// Which polytope the extension projects onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Primal,
    Polar,
}

/// `Q` projects onto the target by keeping its first `keep` coordinates.
#[derive(Clone, Debug)]
pub struct ExtensionCertificate {
    pub target: Target,
    pub keep: usize,
    pub q: Polytope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub facet_count: usize,
}

fn vertex_set(p: &Polytope) -> HashSet<Vec<Rational>> {
    p.vertices().iter().cloned().collect()
}

/// Exact check that `cert.q` projects onto `p` (the target already resolved).
pub fn verify_extension(p: &Polytope, cert: &ExtensionCertificate) -> Verification {
    let facet_count = cert.q.n_facets();
    let image = if cert.keep == cert.q.ambient_dim() { Ok(cert.q.clone()) } else { project(&cert.q, cert.keep) };
    let ok = match image {
        Ok(img) => {
            img.ambient_dim() == p.ambient_dim()
                && vertex_set(&img) == vertex_set(p)
                && hull(&img.point_config()).is_ok()
        }
        Err(_) => false,
    };
    Verification { ok, facet_count }
}

/// `[max(d+1, cover bound within the guard), min(n, m)]`.
pub fn xc_interval(p: &Polytope) -> (usize, usize) {
    let hi = p.n_vertices().min(p.n_facets());
    let cover = rectangle_cover_bound(&slack_matrix(p)).unwrap_or(0);
    ((p.dim() + 1).max(cover), hi)
}
