//! Facet enumeration by exhaustive hyperplane search.
//!
//! Every `d`-subset of the (chart-local) points spans a candidate hyperplane; it is a
//! facet when all points lie weakly on one side. With `n <= d + 5` points this is
//! `C(n, n - d)` small eliminations, all done over the integers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::bits::{combinations, Bits};
use crate::exactnum::{bareiss, integer_row, primitive, Rational};

/// Homogeneous integer rows `L * (y, -1)` for chart-local points `y`.
pub(crate) fn homogeneous_rows(local: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    local
        .iter()
        .map(|y| {
            let mut row = y.clone();
            row.push(-Rational::from_integer(1.into()));
            integer_row(&row)
        })
        .collect()
}

fn eval(h: &[BigInt], row: &[BigInt]) -> BigInt {
    h.iter().zip(row).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
}

/// Primitive `(a, b)` with `a . y <= b` tight exactly on `subset`'s hyperplane, or
/// `None` if the subset does not span a supporting hyperplane.
fn supporting_hyperplane(rows: &[Vec<BigInt>], subset: &[usize], d: usize) -> Option<(Vec<BigInt>, Bits)> {
    let sub: Vec<Vec<BigInt>> = subset.iter().map(|&i| rows[i].clone()).collect();
    let ech = bareiss(sub, d + 1);
    if ech.rank() != d {
        return None;
    }
    let kernel = ech.kernel();
    let mut h = primitive(&kernel[0]);
    let mut pos = false;
    let mut neg = false;
    let mut tight = Bits::new(rows.len());
    for (j, r) in rows.iter().enumerate() {
        let s = eval(&h, r);
        if s.is_zero() {
            tight.insert(j);
        } else if s.is_positive() {
            pos = true;
        } else {
            neg = true;
        }
        if pos && neg {
            return None;
        }
    }
    if pos {
        h.iter_mut().for_each(|x| *x = -x.clone());
    }
    Some((h, tight))
}

/// All facets of the full-dimensional configuration `local` (dimension `d`), keyed by
/// their tight point sets; sorted by the tight sets' index lists.
pub(crate) fn enumerate_facets(local: &[Vec<Rational>], d: usize) -> Vec<(Vec<BigInt>, Bits)> {
    let rows = homogeneous_rows(local);
    let subsets: Vec<Vec<usize>> = combinations(local.len(), d).collect();
    let found: Vec<(Vec<BigInt>, Bits)> =
        subsets.par_iter().filter_map(|s| supporting_hyperplane(&rows, s, d)).collect();
    let mut unique: HashMap<Bits, Vec<BigInt>> = HashMap::new();
    for (h, tight) in found {
        unique.entry(tight).or_insert(h);
    }
    let mut out: Vec<(Vec<BigInt>, Bits)> = unique.into_iter().map(|(t, h)| (h, t)).collect();
    out.sort_by_key(|a| a.1.to_vec());
    out
}

/// Points that are vertices: the facets through a vertex meet only in that vertex.
pub(crate) fn vertex_mask(n: usize, facets: &[(Vec<BigInt>, Bits)]) -> Vec<bool> {
    (0..n)
        .map(|j| {
            let mut meet = Bits::full(n);
            for (_, t) in facets.iter().filter(|(_, t)| t.contains(j)) {
                meet = meet.intersect(t);
            }
            meet.count() == 1
        })
        .collect()
}
