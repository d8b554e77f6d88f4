//! Sparse exact linear algebra over `Q`.
//!
//! Rows are stored as primitive integer vectors and eliminated fraction-free:
//! reducing `r` by a basis row `b` with pivot coefficient `p` replaces `r` by
//! `p*r - r[pivot]*b` and then divides out the content. Each basis row's pivot
//! is its lowest column, so with columns ordered by degree the remainder of a
//! vector is the unique representative of its coset supported off the pivot
//! columns, independent of insertion order.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

pub type SparseRow = Vec<(usize, BigInt)>;

/// Sort and merge duplicate columns of a rational sparse vector.
pub fn normalize(mut v: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    v.sort_by_key(|(c, _)| *c);
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Clear denominators of a sorted rational row. Returns the integer row and
/// the common denominator `d` with `row / d == v`.
pub fn clear_denominators(v: &[(usize, Rational)]) -> (SparseRow, BigInt) {
    let d = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let row = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (*c, x.numer() * (&d / x.denom())))
        .collect();
    (row, d)
}

fn content(row: &SparseRow) -> BigInt {
    row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x))
}

fn make_primitive(row: &mut SparseRow) {
    let mut c = content(row);
    if c.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        c = -c;
    }
    if !c.is_one() {
        for (_, x) in row.iter_mut() {
            *x = &*x / &c;
        }
    }
}

/// `p*r - c*b` over sorted sparse rows.
fn combine(r: &SparseRow, p: &BigInt, b: &SparseRow, c: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < b.len() {
        let take_r = j >= b.len() || (i < r.len() && r[i].0 < b[j].0);
        let take_b = i >= r.len() || (j < b.len() && b[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, p * &r[i].1));
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let x = p * &r[i].1 - c * &b[j].1;
            if !x.is_zero() {
                out.push((r[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon basis of a subspace of `Q^N`, pivot = lowest column of a row.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows, each primitive with its pivot first.
    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    /// Reduce an integer row; returns the reduced row and the factor `s`
    /// such that `reduced == s * (row - combination of basis rows)`.
    fn reduce_int(&self, mut r: SparseRow) -> (SparseRow, BigInt) {
        let mut scale = BigInt::one();
        let mut idx = 0;
        while idx < r.len() {
            let col = r[idx].0;
            let Some(&bi) = self.pivot_of.get(&col) else {
                idx += 1;
                continue;
            };
            let b = &self.rows[bi];
            let p = &b[0].1;
            let c = r[idx].1.clone();
            let g = p.gcd(&c);
            let (p, c) = (p / &g, c / &g);
            r = combine(&r, &p, b, &c);
            scale *= &p;
            // entries before idx are untouched; r[idx] is now past `col`
            let cont = content(&r).gcd(&scale);
            if !cont.is_zero() && !cont.is_one() {
                for (_, x) in r.iter_mut() {
                    *x = &*x / &cont;
                }
                scale /= &cont;
            }
        }
        (r, scale)
    }

    /// Add an integer row; returns whether it increased the rank.
    pub fn insert_int(&mut self, row: SparseRow) -> bool {
        let (mut r, _) = self.reduce_int(row);
        if r.is_empty() {
            return false;
        }
        make_primitive(&mut r);
        self.pivot_of.insert(r[0].0, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        let (row, _) = clear_denominators(&normalize(v.to_vec()));
        self.insert_int(row)
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        let (row, _) = clear_denominators(&normalize(v.to_vec()));
        self.reduce_int(row).0.is_empty()
    }

    /// Canonical representative of `v` modulo the span, supported off the
    /// pivot columns.
    pub fn remainder(&self, v: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
        let (row, d) = clear_denominators(&normalize(v.to_vec()));
        let (r, s) = self.reduce_int(row);
        let denom = s * d;
        r.into_iter()
            .map(|(c, x)| (c, Rational::new(x, denom.clone())))
            .collect()
    }
}

/// Rank of a family of rational vectors.
pub fn rank_of<'a>(vectors: impl IntoIterator<Item = &'a Vec<(usize, Rational)>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
