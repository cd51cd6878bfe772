//! Exact rational scalars, matrices and projective-plane primitives.
//!
//! Everything here is exact: `Rational` is an arbitrary-precision fraction kept in
//! lowest terms, and elimination is carried out fraction-free over the integers.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Parses `"p"` or `"p/q"` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(token.to_string());
    let t = token.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn centroid(points: &[Vec<Rational>]) -> Vec<Rational> {
    let dim = points[0].len();
    let n = int(points.len() as i64);
    (0..dim).map(|j| points.iter().fold(Rational::zero(), |acc, p| acc + &p[j]) / &n).collect()
}

/// Dense rectangular matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to describe matrices with no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        let nrows = rows.len();
        Ok(RMatrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        RMatrix::from_rows(cols, rows.iter().map(|r| ints(r)).collect()).expect("rows of equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Rational> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        assert!(i < self.rows, "row {i} out of bounds");
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RMatrix {
        let mut t = RMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self[(i, j)].clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j).unwrap_or_else(|| panic!("entry ({i},{j}) out of bounds"))
    }
}

/// Scales a rational row by the lcm of its denominators.
pub(crate) fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Positive rescaling of a nonzero rational vector to a primitive integer vector.
pub(crate) fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let ints = integer_row(v);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub(crate) fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Row echelon form produced by fraction-free (Bareiss) elimination.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub(crate) fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots, cols }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis: one vector per free column, obtained by back substitution.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (r, &p) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[r];
                    let mut acc = Rational::zero();
                    for j in p + 1..self.cols {
                        if !row[j].is_zero() && !x[j].is_zero() {
                            acc += Rational::from_integer(row[j].clone()) * &x[j];
                        }
                    }
                    x[p] = -acc / Rational::from_integer(row[p].clone());
                }
                x
            })
            .collect()
    }
}

pub(crate) fn echelon_of_rows(rows: &[Vec<Rational>], cols: usize) -> Echelon {
    bareiss(rows.iter().map(|r| integer_row(r)).collect(), cols)
}

/// Exact rank by fraction-free elimination.
pub fn rank(m: &RMatrix) -> usize {
    echelon_of_rows(&m.row_vecs(), m.cols).rank()
}

/// Basis of the right kernel; its size is `cols - rank`.
pub fn null_space(m: &RMatrix) -> Vec<Vec<Rational>> {
    echelon_of_rows(&m.row_vecs(), m.cols).kernel()
}

pub(crate) fn rank_of(rows: &[Vec<Rational>], cols: usize) -> usize {
    echelon_of_rows(rows, cols).rank()
}

pub(crate) fn kernel_of(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    echelon_of_rows(rows, cols).kernel()
}

fn cross(u: &[Rational; 3], v: &[Rational; 3]) -> [Rational; 3] {
    [&u[1] * &v[2] - &u[2] * &v[1], &u[2] * &v[0] - &u[0] * &v[2], &u[0] * &v[1] - &u[1] * &v[0]]
}

fn det3(a: &[Rational; 3], b: &[Rational; 3], c: &[Rational; 3]) -> Rational {
    let x = cross(b, c);
    &a[0] * &x[0] + &a[1] * &x[1] + &a[2] * &x[2]
}

fn normalize3(v: [Rational; 3]) -> [Rational; 3] {
    let mut p = to_rationals(&primitive(&v));
    if let Some(first) = p.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            p.iter_mut().for_each(|x| *x = -x.clone());
        }
    }
    [p[0].clone(), p[1].clone(), p[2].clone()]
}

fn proportional(u: &[Rational; 3], v: &[Rational; 3]) -> bool {
    cross(u, v).iter().all(Zero::is_zero)
}

/// Line `a x + b y + c = 0`; equality is up to nonzero scaling.
#[derive(Clone, Debug)]
pub struct HomLine([Rational; 3]);

impl HomLine {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::Invalid("all line coefficients are zero".into()));
        }
        Ok(HomLine(normalize3([a, b, c])))
    }

    pub fn coefficients(&self) -> &[Rational; 3] {
        &self.0
    }

    pub fn contains(&self, p: &[Rational; 2]) -> bool {
        (&self.0[0] * &p[0] + &self.0[1] * &p[1] + &self.0[2]).is_zero()
    }

    pub fn scaled(&self, s: &Rational) -> HomLine {
        assert!(!s.is_zero());
        HomLine([&self.0[0] * s, &self.0[1] * s, &self.0[2] * s])
    }
}

impl PartialEq for HomLine {
    fn eq(&self, other: &Self) -> bool {
        proportional(&self.0, &other.0)
    }
}

/// Point of the projective plane; `(x : y : 0)` is the point at infinity in direction `(x, y)`.
#[derive(Clone, Debug)]
pub struct HomPoint([Rational; 3]);

impl HomPoint {
    pub fn new(x: Rational, y: Rational, w: Rational) -> Result<Self> {
        if x.is_zero() && y.is_zero() && w.is_zero() {
            return Err(Error::Invalid("all homogeneous coordinates are zero".into()));
        }
        Ok(HomPoint(normalize3([x, y, w])))
    }

    pub fn finite(x: Rational, y: Rational) -> Self {
        HomPoint::new(x, y, Rational::one()).expect("w = 1")
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.0
    }

    pub fn is_at_infinity(&self) -> bool {
        self.0[2].is_zero()
    }

    /// Affine coordinates, or `None` for a point at infinity.
    pub fn affine(&self) -> Option<[Rational; 2]> {
        (!self.is_at_infinity()).then(|| [&self.0[0] / &self.0[2], &self.0[1] / &self.0[2]])
    }

    pub fn lies_on(&self, l: &HomLine) -> bool {
        (&self.0[0] * &l.0[0] + &self.0[1] * &l.0[1] + &self.0[2] * &l.0[2]).is_zero()
    }
}

impl PartialEq for HomPoint {
    fn eq(&self, other: &Self) -> bool {
        proportional(&self.0, &other.0)
    }
}

impl fmt::Display for HomPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.0[0], self.0[1], self.0[2])
    }
}

pub fn line_through(p: &[Rational; 2], q: &[Rational; 2]) -> Result<HomLine> {
    if p == q {
        return Err(Error::DegenerateLine);
    }
    let u = [p[0].clone(), p[1].clone(), Rational::one()];
    let v = [q[0].clone(), q[1].clone(), Rational::one()];
    let [a, b, c] = cross(&u, &v);
    HomLine::new(a, b, c)
}

/// Projective concurrency of three distinct lines: `Some(common point)` when the
/// coefficient determinant vanishes (parallel lines meet at infinity).
pub fn concurrent(l1: &HomLine, l2: &HomLine, l3: &HomLine) -> Result<Option<HomPoint>> {
    if l1 == l2 || l1 == l3 || l2 == l3 {
        return Err(Error::DegeneratePencil);
    }
    if !det3(&l1.0, &l2.0, &l3.0).is_zero() {
        return Ok(None);
    }
    let [x, y, w] = cross(&l1.0, &l2.0);
    Ok(Some(HomPoint::new(x, y, w)?))
}
