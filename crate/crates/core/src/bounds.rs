//! Closed-form lower bounds, realization-space dimension counts and family counts.
//! Every comparison with a square root is done by squaring integers.

use num_integer::Roots;
use serde::Serialize;

use crate::bits::binomial;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Ceiling of `2 sqrt(r - d) - d + 1`, and whether the real bound is an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenericBound {
    pub value: i64,
    pub exact: bool,
}

fn ceil_sqrt(x: u64) -> u64 {
    let s = x.sqrt();
    if s * s == x {
        s
    } else {
        s + 1
    }
}

pub fn generic_xc_lower(r: u64, d: u64) -> Result<GenericBound> {
    if r <= d {
        return Err(Error::BoundDomain(format!("need r > d, got r={r}, d={d}")));
    }
    let four = 4 * (r - d);
    let s = ceil_sqrt(four);
    Ok(GenericBound { value: s as i64 - d as i64 + 1, exact: s * s == four })
}

/// Whether `2 sqrt(r - d) - d + 1 > t`.
pub fn exceeds(r: u64, d: u64, t: i64) -> bool {
    let shifted = t + d as i64 - 1;
    shifted < 0 || (4 * (r - d)) as i128 > (shifted as i128) * (shifted as i128)
}

pub fn simple_or_simplicial_lower(d: u64, n: u64) -> Result<GenericBound> {
    if d == 0 || n < d + 1 {
        return Err(Error::BoundDomain(format!("need d >= 1 and n >= d+1, got d={d}, n={n}")));
    }
    generic_xc_lower(d * n, d)
}

/// `DN - (D+1)(D-d)`.
pub fn realization_dim_upper(n_facets: u64, big_d: u64, d: u64) -> Result<u64> {
    if big_d < d || n_facets < big_d + 1 {
        return Err(Error::BoundDomain(format!("need D >= d and N >= D+1, got N={n_facets}, D={big_d}, d={d}")));
    }
    Ok(big_d * n_facets - (big_d + 1) * (big_d - d))
}

/// `((D+1)(D-d) + r) / D`.
pub fn min_facets_needed(big_d: u64, d: u64, r: u64) -> Result<Rational> {
    if d == 0 || big_d < d {
        return Err(Error::BoundDomain(format!("need D >= d >= 1, got D={big_d}, d={d}")));
    }
    let num = (big_d + 1) * (big_d - d) + r;
    Ok(Rational::new(num.into(), big_d.into()))
}

/// Smallest `d` with `d > ((alpha - 1) / 2)^2`.
pub fn alpha_threshold(alpha: u64) -> Result<u64> {
    if alpha == 0 {
        return Err(Error::BoundDomain("alpha must be at least 1".into()));
    }
    Ok((alpha - 1) * (alpha - 1) / 4 + 1)
}

/// `floor((d-4)^2 / 4)`, zero below dimension 4.
pub fn join_family_count(d: u64) -> u64 {
    if d < 4 {
        0
    } else {
        (d - 4) * (d - 4) / 4
    }
}

/// Number of combinatorial types of d-polytopes with d+2 vertices, `floor(d^2 / 4)`.
pub fn d_plus_2_vertex_types(d: u64) -> u64 {
    d * d / 4
}

/// Growth shape `C(d-1, 2)` of the chain-form count; the constant factor is unknown.
pub fn chain_multiplier(d: u64) -> u64 {
    if d < 3 {
        0
    } else {
        binomial(d as usize - 1, 2) as u64
    }
}

/// `F(x, y)`.
pub fn pyramid_dim_bound(x: u64, y: u64) -> u64 {
    match x {
        _ if x == 0 || y == 0 => 0,
        1..=5 => 3 * x + y - 2,
        _ => x * (x - 1) / 2 + y + 3,
    }
}

/// `min(F(a, b), F(b, a))`.
pub fn dimension_guard(a: u64, b: u64) -> u64 {
    pyramid_dim_bound(a, b).min(pyramid_dim_bound(b, a))
}

/// Every bound that applies to the given parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_lower: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_lower_exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_lower: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_threshold: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub join_family_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_plus_2_vertex_types: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_multiplier: Option<u64>,
}

/// `n` is the vertex (or facet) count of a simple or simplicial polytope; `r` overrides
/// the realization-space dimension `d * n`.
pub fn report(d: Option<u64>, n: Option<u64>, r: Option<u64>, alpha: Option<u64>) -> Result<BoundsReport> {
    let mut out = BoundsReport { d, n, r, alpha, ..Default::default() };
    if let Some(d) = d {
        out.trivial_lower = Some(d + 1);
        out.join_family_count = Some(join_family_count(d));
        out.d_plus_2_vertex_types = Some(d_plus_2_vertex_types(d));
        out.chain_multiplier = Some(chain_multiplier(d));
        let bound = match (n, r) {
            (_, Some(r)) => Some(generic_xc_lower(r, d)?),
            (Some(n), None) => Some(simple_or_simplicial_lower(d, n)?),
            (None, None) => None,
        };
        if let Some(b) = bound {
            out.generic_lower = Some(b.value);
            out.generic_lower_exact = Some(b.exact);
        }
    } else if n.is_some() || r.is_some() {
        return Err(Error::BoundDomain("--n and --r need --d".into()));
    }
    if let Some(a) = alpha {
        out.alpha_threshold = Some(alpha_threshold(a)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn generic_examples() {
        assert_eq!(generic_xc_lower(18, 2).unwrap(), GenericBound { value: 7, exact: true });
        assert_eq!(generic_xc_lower(12, 3).unwrap(), GenericBound { value: 4, exact: true });
        assert_eq!(generic_xc_lower(32, 4).unwrap(), GenericBound { value: 8, exact: false });
        assert!(generic_xc_lower(3, 3).is_err());
    }

    #[test]
    fn simplicial_examples() {
        assert_eq!(simple_or_simplicial_lower(2, 9).unwrap().value, 7);
        assert_eq!(simple_or_simplicial_lower(2, 3).unwrap().value, 3);
        assert_eq!(simple_or_simplicial_lower(6, 10).unwrap().value, 10);
        assert!(simple_or_simplicial_lower(3, 3).is_err());
    }

    #[test]
    fn realization_dimension() {
        assert_eq!(realization_dim_upper(5, 3, 2).unwrap(), 11);
        assert_eq!(realization_dim_upper(7, 4, 4).unwrap(), 28);
        assert_eq!(realization_dim_upper(4, 3, 2).unwrap(), 8);
        assert!(realization_dim_upper(3, 3, 2).is_err());
        assert!(realization_dim_upper(9, 2, 3).is_err());
    }

    #[test]
    fn facets_needed() {
        assert_eq!(min_facets_needed(3, 3, 12).unwrap(), int(4));
        assert_eq!(min_facets_needed(4, 2, 18).unwrap(), int(7));
        assert_eq!(min_facets_needed(5, 2, 18).unwrap(), frac(36, 5));
        assert!(min_facets_needed(1, 2, 18).is_err());
    }

    #[test]
    fn thresholds_and_counts() {
        assert_eq!(alpha_threshold(1).unwrap(), 1);
        assert_eq!(alpha_threshold(3).unwrap(), 2);
        assert_eq!(alpha_threshold(5).unwrap(), 5);
        assert_eq!(join_family_count(8), 4);
        assert_eq!(join_family_count(5), 0);
        assert_eq!(join_family_count(6), 1);
        assert_eq!(join_family_count(3), 0);
        assert_eq!(chain_multiplier(5), 6);
    }

    #[test]
    fn function_f() {
        assert_eq!(pyramid_dim_bound(3, 2), 9);
        assert_eq!(pyramid_dim_bound(2, 3), 7);
        assert_eq!(dimension_guard(3, 2), 7);
        assert_eq!(pyramid_dim_bound(0, 7), 0);
        assert_eq!(pyramid_dim_bound(4, 0), 0);
        for y in 1..20 {
            assert_eq!(3 * 5 + y - 2, 5 * 4 / 2 + y + 3);
            assert_eq!(pyramid_dim_bound(5, y), 13 + y);
        }
        assert_eq!(pyramid_dim_bound(5, 1), 14);
        assert_eq!(pyramid_dim_bound(6, 1), 19);
    }

    #[test]
    fn report_fields() {
        let r = report(Some(2), Some(9), None, None).unwrap();
        assert_eq!(r.generic_lower, Some(7));
        assert_eq!(r.generic_lower_exact, Some(true));
        assert!(report(None, Some(4), None, None).is_err());
        assert_eq!(report(None, None, None, Some(5)).unwrap().alpha_threshold, Some(5));
    }

    proptest! {
        #[test]
        fn ceiling_is_tight(r in 2u64..5000, d in 1u64..40) {
            prop_assume!(r > d);
            let b = generic_xc_lower(r, d).unwrap();
            prop_assert!(!exceeds(r, d, b.value));
            prop_assert!(exceeds(r, d, b.value - 1));
        }

        #[test]
        fn facets_needed_dominates_the_bound(r in 2u64..3000, d in 1u64..20, extra in 0u64..30) {
            prop_assume!(r > d);
            let big_d = d + extra;
            let n = min_facets_needed(big_d, d, r).unwrap();
            let ceil = n.ceil().to_integer();
            let b = generic_xc_lower(r, d).unwrap().value;
            prop_assert!(ceil >= b.into());
        }

        #[test]
        fn facets_needed_monotone_in_r(r in 0u64..3000, d in 1u64..20, extra in 0u64..30) {
            let big_d = d + extra;
            prop_assert!(min_facets_needed(big_d, d, r).unwrap() < min_facets_needed(big_d, d, r + 1).unwrap());
        }
    }

    /// Minimum over integer `D` sits between the bound minus one and the values at the
    /// two integers around the real optimum.
    #[test]
    fn discreteness_sandwich() {
        for d in 1u64..15 {
            for r in d + 1..d + 400 {
                let b = generic_xc_lower(r, d).unwrap().value;
                let s = (r - d).sqrt();
                let best = (d..d + 500)
                    .map(|big_d| min_facets_needed(big_d, d, r).unwrap().ceil().to_integer())
                    .min()
                    .unwrap();
                let best: i64 = best.try_into().unwrap();
                prop_assert_sandwich(
                    best,
                    b,
                    [s.max(d), (s + 1).max(d)]
                        .map(|x| min_facets_needed(x, d, r).unwrap().ceil().to_integer().try_into().unwrap()),
                );
            }
        }
    }

    fn prop_assert_sandwich(best: i64, bound: i64, around: [i64; 2]) {
        assert!(best >= bound - 1, "{best} < {bound} - 1");
        assert!(best <= around[0].min(around[1]));
    }
}
