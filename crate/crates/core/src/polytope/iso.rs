//! Combinatorial isomorphism of vertex–facet incidence structures.
//!
//! Colour refinement on the bipartite incidence graph, followed by individualisation
//! and backtracking when refinement leaves non-singleton classes.

use std::collections::BTreeMap;

use super::Incidence;

/// A vertex bijection and a facet bijection carrying one incidence onto the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertex_map: Vec<usize>,
    pub facet_map: Vec<usize>,
}

struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    fn from_incidence(inc: &Incidence) -> Graph {
        let n = inc.n_vertices();
        let m = inc.n_facets();
        let mut adj = vec![Vec::new(); n + m];
        for f in 0..m {
            for v in inc.facet(f).iter() {
                adj[v].push(n + f);
                adj[n + f].push(v);
            }
        }
        Graph { n, adj }
    }

    fn size(&self) -> usize {
        self.adj.len()
    }
}

/// Refines both colourings simultaneously so colour ids are comparable across graphs.
fn refine(g: &Graph, h: &Graph, cg: &mut Vec<usize>, ch: &mut Vec<usize>) {
    let classes = |cg: &[usize], ch: &[usize]| {
        let mut all: Vec<usize> = cg.iter().chain(ch).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let mut count = classes(cg, ch);
    loop {
        let sig = |gr: &Graph, col: &[usize], v: usize| {
            let mut nb: Vec<usize> = gr.adj[v].iter().map(|&u| col[u]).collect();
            nb.sort_unstable();
            (col[v], nb)
        };
        let sg: Vec<_> = (0..g.size()).map(|v| sig(g, cg, v)).collect();
        let sh: Vec<_> = (0..h.size()).map(|v| sig(h, ch, v)).collect();
        let mut ids: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in sg.iter().chain(&sh) {
            ids.insert(s, 0);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        let ng: Vec<usize> = sg.iter().map(|s| ids[s]).collect();
        let nh: Vec<usize> = sh.iter().map(|s| ids[s]).collect();
        let new_count = ids.len();
        *cg = ng;
        *ch = nh;
        if new_count == count {
            return;
        }
        count = new_count;
    }
}

fn histogram(c: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn search(g: &Graph, h: &Graph, mut cg: Vec<usize>, mut ch: Vec<usize>) -> Option<Vec<usize>> {
    refine(g, h, &mut cg, &mut ch);
    let hg = histogram(&cg);
    if hg != histogram(&ch) {
        return None;
    }
    // Smallest non-singleton class, preferring vertex-side nodes.
    let target = hg
        .iter()
        .filter(|(_, &size)| size > 1)
        .min_by_key(|(&col, &size)| {
            let on_vertex = cg.iter().position(|&c| c == col).unwrap() < g.n;
            (!on_vertex, size, col)
        })
        .map(|(&col, _)| col);
    let Some(col) = target else {
        let mut map = vec![0; g.size()];
        let mut where_h = BTreeMap::new();
        for (v, &c) in ch.iter().enumerate() {
            where_h.insert(c, v);
        }
        for (v, c) in cg.iter().enumerate() {
            map[v] = where_h[c];
        }
        return is_isomorphism(g, h, &map).then_some(map);
    };
    let fresh = cg.iter().chain(&ch).max().unwrap() + 1;
    let x = cg.iter().position(|&c| c == col).unwrap();
    for y in (0..h.size()).filter(|&y| ch[y] == col) {
        let mut cg2 = cg.clone();
        let mut ch2 = ch.clone();
        cg2[x] = fresh;
        ch2[y] = fresh;
        if let Some(m) = search(g, h, cg2, ch2) {
            return Some(m);
        }
    }
    None
}

fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    (0..g.size()).all(|v| {
        let mut a: Vec<usize> = g.adj[v].iter().map(|&u| map[u]).collect();
        let mut b = h.adj[map[v]].clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b && ((v < g.n) == (map[v] < h.n))
    })
}

/// Finds a vertex and facet bijection making the two incidences equal, if one exists.
pub fn incidence_iso(a: &Incidence, b: &Incidence) -> Option<Isomorphism> {
    if a.n_vertices() != b.n_vertices() || a.n_facets() != b.n_facets() {
        return None;
    }
    let mut sa: Vec<usize> = (0..a.n_facets()).map(|f| a.facet(f).count()).collect();
    let mut sb: Vec<usize> = (0..b.n_facets()).map(|f| b.facet(f).count()).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let g = Graph::from_incidence(a);
    let h = Graph::from_incidence(b);
    let side = |gr: &Graph| (0..gr.size()).map(|v| usize::from(v >= gr.n)).collect::<Vec<_>>();
    let map = search(&g, &h, side(&g), side(&h))?;
    let n = g.n;
    Some(Isomorphism { vertex_map: map[..n].to_vec(), facet_map: map[n..].iter().map(|&f| f - h.n).collect() })
}
