//! The group algebra `QH` of `H = Z^2g` as exact Laurent polynomials.
//!
//! J-adic questions are answered through the shifted expansion in
//! `y_i = x_i - 1`: the associated graded ring of `QH` at the augmentation
//! ideal `J` is the polynomial ring `Q[y_1, ..., y_2g]`, so `p` lies in `J^n`
//! exactly when every term of its shifted expansion below degree `n` vanishes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Exponent vector ordered graded-lexicographically (total degree first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact Laurent polynomial in the commuting variables `x_1, ..., x_2g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    genus: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(genus: usize) -> Self {
        LaurentPoly { genus, terms: BTreeMap::new() }
    }

    pub fn one(genus: usize) -> Self {
        Self::constant(genus, Rational::one())
    }

    pub fn constant(genus: usize, c: Rational) -> Self {
        Self::term(genus, c, vec![0; 2 * genus])
    }

    pub fn from_int(genus: usize, c: i64) -> Self {
        Self::constant(genus, Rational::from_integer(BigInt::from(c)))
    }

    /// `c * x^exps`; `exps` has length `2g`.
    pub fn term(genus: usize, c: Rational, exps: Vec<i64>) -> Self {
        assert_eq!(exps.len(), 2 * genus, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        LaurentPoly { genus, terms }
    }

    /// The group element `x^exps` of `H`.
    pub fn group_element(genus: usize, exps: &[i64]) -> Self {
        Self::term(genus, Rational::one(), exps.to_vec())
    }

    /// The variable `x_i`, 1-based.
    pub fn var(genus: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * genus];
        e[i - 1] = 1;
        Self::term(genus, Rational::one(), e)
    }

    /// `y_i = x_i - 1`.
    pub fn shifted_var(genus: usize, i: usize) -> Self {
        &Self::var(genus, i) - &Self::one(genus)
    }

    /// `prod_i (x_i - 1)^{e_i}` for a nonnegative exponent vector.
    pub fn shifted_monomial(genus: usize, exps: &[u32]) -> Self {
        let mut out = Self::one(genus);
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                out = &out * &Self::shifted_var(genus, i + 1);
            }
        }
        out
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn nvars(&self) -> usize {
        2 * self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[i64]) -> Rational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        Ok(self * other)
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.genus);
        }
        LaurentPoly {
            genus: self.genus,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiply by the group element `x^exps`.
    pub fn shift(&self, exps: &[i64]) -> Self {
        let s = Monomial(exps.to_vec());
        LaurentPoly {
            genus: self.genus,
            terms: self.terms.iter().map(|(m, v)| (m.mul(&s), v.clone())).collect(),
        }
    }

    /// Whether the polynomial is `c * x^e` with `c != 0`, i.e. a unit of `QH`.
    pub fn as_unit(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Integer power; negative exponents are only defined for units.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 {
            let (m, c) = self.as_unit().ok_or_else(|| {
                Error::InvalidArgument(format!("cannot invert non-monomial {self}"))
            })?;
            LaurentPoly::term(self.genus, c.recip(), m.0.iter().map(|e| -e).collect())
        } else {
            self.clone()
        };
        let mut out = Self::one(self.genus);
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Sum of coefficients: evaluation at `x_i = 1`.
    pub fn augmentation(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Expansion in `y_i = x_i - 1` truncated below total degree `m`, with
    /// `x_i^-1 = sum_k (-1)^k y_i^k`.
    pub fn shifted_expand(&self, m: usize) -> ShiftedTruncation {
        let nvars = self.nvars();
        let mut out = ShiftedTruncation::zero(self.genus, m);
        if m == 0 {
            return out;
        }
        let mut cache: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
        for (mono, c) in &self.terms {
            let series: Vec<Vec<Rational>> = mono
                .0
                .iter()
                .map(|&e| cache.entry(e).or_insert_with(|| binomial_series(e, m)).clone())
                .collect();
            let mut exps = vec![0u32; nvars];
            expand_product(&series, 0, m, c.clone(), &mut exps, &mut out);
        }
        out
    }

    /// Least `n < m` with a nonzero degree-`n` term in the shifted expansion,
    /// or `m` when there is none (meaning "at least `m`").
    pub fn j_valuation(&self, m: usize) -> usize {
        self.shifted_expand(m).min_degree().unwrap_or(m)
    }

    /// Exact division by `1 - x_var` (1-based `var`), if it divides.
    pub fn div_one_minus_var(&self, var: usize) -> Option<Self> {
        let k = var - 1;
        // group terms by the exponents of the other variables
        let mut groups: BTreeMap<Vec<i64>, BTreeMap<i64, Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let e = rest[k];
            rest[k] = 0;
            groups.entry(rest).or_default().insert(e, c.clone());
        }
        let mut out = Self::zero(self.genus);
        for (rest, uni) in groups {
            // q(t)(1 - t) = p(t): q_e = sum_{j <= e} p_j, for e below the top exponent
            let lo = *uni.keys().next().unwrap();
            let hi = *uni.keys().next_back().unwrap();
            let mut acc = Rational::zero();
            for e in lo..=hi {
                if let Some(c) = uni.get(&e) {
                    acc += c;
                }
                if e == hi {
                    if !acc.is_zero() {
                        return None;
                    }
                } else if !acc.is_zero() {
                    let mut mono = rest.clone();
                    mono[k] = e;
                    out.add_term(Monomial(mono), acc.clone());
                }
            }
        }
        Some(out)
    }

    /// Parse expressions such as `(x1-1)*(x2-1)*x3^-1 + 2`. Variables are
    /// `x<k>`, `a<i>`, `b<i>`; coefficients may be integers or `p/q`.
    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        let mut p = Parser { genus, src: text.as_bytes(), pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("trailing input at offset {} in `{text}`", p.pos)));
        }
        Ok(out)
    }
}

fn check_genus(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::GenusMismatch { left, right });
    }
    Ok(())
}

/// Coefficients of `(1 + y)^e` up to `y^{m-1}`.
fn binomial_series(e: i64, m: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(m);
    let mut c = Rational::one();
    for k in 0..m as i64 {
        if c.is_zero() {
            out.push(Rational::zero());
            continue;
        }
        out.push(c.clone());
        // C(e, k+1) = C(e, k) * (e - k) / (k + 1)
        c = c * Rational::from_integer(BigInt::from(e - k)) / Rational::from_integer(BigInt::from(k + 1));
    }
    out
}

fn expand_product(
    series: &[Vec<Rational>],
    var: usize,
    budget: usize,
    coeff: Rational,
    exps: &mut Vec<u32>,
    out: &mut ShiftedTruncation,
) {
    if var == series.len() {
        out.add_term(exps.clone(), coeff);
        return;
    }
    for (k, c) in series[var].iter().enumerate().take(budget) {
        if c.is_zero() {
            continue;
        }
        exps[var] = k as u32;
        expand_product(series, var + 1, budget - k, &coeff * c, exps, out);
    }
    exps[var] = 0;
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    /// # Panics
    /// On genus mismatch; use [`LaurentPoly::try_add`] to get an error instead.
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            genus: self.genus,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        let mut out = LaurentPoly::zero(self.genus);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(k, &e)| if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{}", k + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Element of `QH / J^m` written in the coordinates `y_i = x_i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedTruncation {
    genus: usize,
    bound: usize,
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

impl ShiftedTruncation {
    pub fn zero(genus: usize, bound: usize) -> Self {
        ShiftedTruncation { genus, bound, coeffs: BTreeMap::new() }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.coeffs.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|e| e.iter().sum::<u32>() as usize).min()
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() || exps.iter().sum::<u32>() as usize >= self.bound {
            return;
        }
        match self.coeffs.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Truncated sum; the result keeps the smaller bound.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = ShiftedTruncation::zero(self.genus, self.bound.min(other.bound));
        for (e, c) in self.coeffs.iter().chain(&other.coeffs) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Truncated product; the result keeps the smaller bound.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ShiftedTruncation::zero(self.genus, self.bound.min(other.bound));
        for (e1, c1) in &self.coeffs {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.coeffs {
                if (d1 + e2.iter().sum::<u32>()) as usize >= out.bound {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

struct Parser<'a> {
    genus: usize,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: i64 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("bad exponent"))?;
            return base.pow(n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(LaurentPoly::constant(self.genus, Rational::new(num, den)));
                }
                Ok(LaurentPoly::constant(self.genus, Rational::from_integer(num)))
            }
            Some(b'x' | b'a' | b'b') => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let tok = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let gen = crate::words::parse_generator(self.genus, tok)?;
                Ok(LaurentPoly::var(self.genus, gen))
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("bad integer"))
    }
}
