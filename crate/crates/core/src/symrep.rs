//! Representations of `sp(2g)` on `Sym^n(H) (x) Lambda^2 H`.
//!
//! `H_Q` has the symplectic basis `a_1..a_g, b_1..b_g` with `omega(a_i, b_j) =
//! delta_ij`; internally basis vector `a_i` has index `i - 1` and `b_i` index
//! `g + i - 1`. The Cartan element `h_i` gives `a_i` weight `e_i` and `b_i`
//! weight `-e_i`. Raising operators:
//!
//! * `X_i` (root `e_i - e_{i+1}`, `i < g`): `a_{i+1} -> a_i`, `b_i -> -b_{i+1}`;
//! * `X_g` (root `2 e_g`): `b_g -> a_g`.
//!
//! Lowering operators are the transposes. Fundamental weights are
//! `lambda_i = e_1 + ... + e_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fox::{alexander_class, AlexVector};
use crate::laurent::LaurentPoly;
use crate::words::FreeWord;
use crate::Rational;

/// A dominant weight `sum_i c_i lambda_i` with `c_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DominantWeight {
    coeffs: Vec<u32>,
}

impl DominantWeight {
    pub fn new(coeffs: Vec<u32>) -> Self {
        DominantWeight { coeffs }
    }

    pub fn zero(genus: usize) -> Self {
        DominantWeight { coeffs: vec![0; genus] }
    }

    /// `lambda_i`, 1-based.
    pub fn fundamental(genus: usize, i: usize) -> Result<Self> {
        if i == 0 || i > genus {
            return Err(Error::InvalidArgument(format!("lambda_{i} undefined for genus {genus}")));
        }
        let mut coeffs = vec![0; genus];
        coeffs[i - 1] = 1;
        Ok(DominantWeight { coeffs })
    }

    /// `n lambda_1 + lambda_k` (with `k = 0` meaning no second summand).
    pub fn combo(genus: usize, n: u32, k: usize) -> Result<Self> {
        let mut w = DominantWeight::zero(genus);
        if genus >= 1 {
            w.coeffs[0] += n;
        }
        if k > 0 {
            if k > genus {
                return Err(Error::InvalidArgument(format!("lambda_{k} undefined for genus {genus}")));
            }
            w.coeffs[k - 1] += 1;
        }
        Ok(w)
    }

    /// From coordinates in the `e_i` basis; must be weakly decreasing and nonnegative.
    pub fn from_coordinates(coords: &[i64]) -> Result<Self> {
        let g = coords.len();
        let ok = coords.windows(2).all(|w| w[0] >= w[1]) && coords.last().is_none_or(|&c| c >= 0);
        if !ok {
            return Err(Error::NonDominantWeight(format!("{coords:?}")));
        }
        let coeffs = (0..g)
            .map(|i| (coords[i] - coords.get(i + 1).copied().unwrap_or(0)) as u32)
            .collect();
        Ok(DominantWeight { coeffs })
    }

    /// Parse comma-separated fundamental-weight coefficients, e.g. `1,1,0`.
    /// Missing trailing coefficients are zero.
    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let c: i64 = part.parse().map_err(|_| Error::Parse(format!("bad weight coefficient `{part}`")))?;
            if c < 0 {
                return Err(Error::NonDominantWeight(text.to_string()));
            }
            coeffs.push(c as u32);
        }
        if coeffs.len() > genus {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients given for genus {genus}",
                coeffs.len()
            )));
        }
        coeffs.resize(genus, 0);
        Ok(DominantWeight { coeffs })
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coordinates in the `e_i` basis: `c_i = sum_{k >= i} coeff_k`.
    pub fn coordinates(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.coeffs.len()];
        let mut acc = 0i64;
        for i in (0..self.coeffs.len()).rev() {
            acc += i64::from(self.coeffs[i]);
            out[i] = acc;
        }
        out
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| if c == 1 { format!("l{}", i + 1) } else { format!("{c}l{}", i + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// `dim V(lambda)` by the Weyl dimension formula for type `C_g`:
/// the product over positive roots `e_i - e_j`, `e_i + e_j` (`i < j`) and
/// `2 e_i` of `<lambda + rho, alpha> / <rho, alpha>`, with `rho = (g, ..., 1)`.
pub fn weyl_dim(lambda: &DominantWeight) -> BigInt {
    let g = lambda.genus();
    let c = lambda.coordinates();
    let rho: Vec<i64> = (0..g).map(|i| (g - i) as i64).collect();
    let shifted: Vec<i64> = c.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..g {
        for j in i + 1..g {
            num *= shifted[i] - shifted[j];
            den *= rho[i] - rho[j];
            num *= shifted[i] + shifted[j];
            den *= rho[i] + rho[j];
        }
        num *= 2 * shifted[i];
        den *= 2 * rho[i];
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `dim Sym^n(H) (x) Lambda^2 H = C(2g + n - 1, n) * g (2g - 1)`.
pub fn ambient_dim(genus: usize, n: usize) -> BigInt {
    binomial(BigInt::from(2 * genus + n - 1), BigInt::from(n)) * BigInt::from(genus * (2 * genus - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub weight: DominantWeight,
    pub label: String,
    pub multiplicity: u32,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub genus: usize,
    pub degree: usize,
    pub summands: Vec<Summand>,
    pub total: u64,
    pub ambient_dim: u64,
    pub pass: bool,
}

/// The summands of `Sym^n(H) (x) Lambda^2 H` with multiplicities, following the
/// two displayed cases (`n = 1` and `n >= 2`; `g = 2` and `g >= 3`).
pub fn decomposition_summands(genus: usize, n: usize) -> Result<Vec<(DominantWeight, u32)>> {
    if genus < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!("decomposition needs g >= 2 and n >= 1 (g = {genus}, n = {n})")));
    }
    let n32 = n as u32;
    let mut out = vec![
        (DominantWeight::combo(genus, n32, 2)?, 1),
        (DominantWeight::combo(genus, n32, 0)?, 2),
    ];
    if genus >= 3 {
        out.push((DominantWeight::combo(genus, n32 - 1, 3)?, 1));
    }
    if n >= 2 {
        out.push((DominantWeight::combo(genus, n32 - 2, 2)?, 1));
    }
    Ok(out)
}

pub fn decomposition_check(genus: usize, n: usize) -> Result<DecompositionReport> {
    let summands: Vec<Summand> = decomposition_summands(genus, n)?
        .into_iter()
        .map(|(weight, multiplicity)| {
            let dim = to_u64(&weyl_dim(&weight))?;
            Ok(Summand { label: weight.to_string(), weight, multiplicity, dim })
        })
        .collect::<Result<_>>()?;
    let total: u64 = summands.iter().map(|s| u64::from(s.multiplicity) * s.dim).sum();
    let ambient = to_u64(&ambient_dim(genus, n))?;
    Ok(DecompositionReport { genus, degree: n, summands, total, ambient_dim: ambient, pass: total == ambient })
}

fn to_u64(x: &BigInt) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::BudgetExceeded(format!("dimension {x} does not fit in 64 bits")))
}

/// A Chevalley generator of `sp(2g)`; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpGenerator {
    Cartan(usize),
    Raise(usize),
    Lower(usize),
}

impl SpGenerator {
    pub fn raising(genus: usize) -> impl Iterator<Item = SpGenerator> {
        (1..=genus).map(SpGenerator::Raise)
    }

    pub fn lowering(genus: usize) -> impl Iterator<Item = SpGenerator> {
        (1..=genus).map(SpGenerator::Lower)
    }

    pub fn all(genus: usize) -> impl Iterator<Item = SpGenerator> {
        (1..=genus).flat_map(|i| [SpGenerator::Cartan(i), SpGenerator::Raise(i), SpGenerator::Lower(i)])
    }

    /// Image of basis vector `idx` of `H` as `(index, coefficient)` pairs.
    pub fn act_on_basis(self, genus: usize, idx: usize) -> Vec<(usize, i64)> {
        let a = |i: usize| i - 1;
        let b = |i: usize| genus + i - 1;
        match self {
            SpGenerator::Cartan(i) if idx == a(i) => vec![(idx, 1)],
            SpGenerator::Cartan(i) if idx == b(i) => vec![(idx, -1)],
            SpGenerator::Raise(i) if i < genus && idx == a(i + 1) => vec![(a(i), 1)],
            SpGenerator::Raise(i) if i < genus && idx == b(i) => vec![(b(i + 1), -1)],
            SpGenerator::Raise(i) if i == genus && idx == b(i) => vec![(a(i), 1)],
            SpGenerator::Lower(i) if i < genus && idx == a(i) => vec![(a(i + 1), 1)],
            SpGenerator::Lower(i) if i < genus && idx == b(i + 1) => vec![(b(i), -1)],
            SpGenerator::Lower(i) if i == genus && idx == a(i) => vec![(b(i), 1)],
            _ => vec![],
        }
    }
}

/// `omega(u, v)` on basis vectors.
pub fn symplectic_form(genus: usize, u: usize, v: usize) -> i64 {
    if u < genus && v == u + genus {
        1
    } else if v < genus && u == v + genus {
        -1
    } else {
        0
    }
}

pub fn a_index(genus: usize, i: usize) -> usize {
    debug_assert!(i >= 1 && i <= genus);
    i - 1
}

pub fn b_index(genus: usize, i: usize) -> usize {
    debug_assert!(i >= 1 && i <= genus);
    genus + i - 1
}

fn basis_name(genus: usize, idx: usize) -> String {
    if idx < genus {
        format!("a{}", idx + 1)
    } else {
        format!("b{}", idx - genus + 1)
    }
}

type TensorKey = (Vec<u32>, usize, usize);

/// Element of `Sym^n(H_Q) (x) Lambda^2 H_Q`, keyed by
/// `(sym exponents, p, q)` with `p < q` standing for `h_p ∧ h_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    genus: usize,
    degree: usize,
    terms: BTreeMap<TensorKey, Rational>,
}

impl TensorElement {
    pub fn zero(genus: usize, degree: usize) -> Self {
        TensorElement { genus, degree, terms: BTreeMap::new() }
    }

    /// `c * h^sym (x) h_p ∧ h_q`, normalized to `p < q`.
    pub fn basis(genus: usize, sym: &[u32], p: usize, q: usize, c: Rational) -> Self {
        assert_eq!(sym.len(), 2 * genus);
        let degree = sym.iter().sum::<u32>() as usize;
        let mut t = TensorElement::zero(genus, degree);
        t.add_term(sym.to_vec(), p, q, c);
        t
    }

    /// `h^sym (x) theta` with `theta = sum_i a_i ∧ b_i`.
    pub fn sym_times_theta(genus: usize, sym: &[u32]) -> Self {
        let mut t = TensorElement::zero(genus, sym.iter().sum::<u32>() as usize);
        for i in 1..=genus {
            t.add_term(sym.to_vec(), a_index(genus, i), b_index(genus, i), Rational::one());
        }
        t
    }

    /// `theta` in degree 0.
    pub fn theta(genus: usize) -> Self {
        Self::sym_times_theta(genus, &vec![0; 2 * genus])
    }

    /// `i(x ∧ y ∧ z) = x (x) y∧z + y (x) z∧x + z (x) x∧y`.
    pub fn iota(genus: usize, x: usize, y: usize, z: usize) -> Self {
        let mut t = TensorElement::zero(genus, 1);
        for (s, p, q) in [(x, y, z), (y, z, x), (z, x, y)] {
            let mut sym = vec![0; 2 * genus];
            sym[s] = 1;
            t.add_term(sym, p, q, Rational::one());
        }
        t
    }

    /// `i(x ∧ theta) = sum_i i(x ∧ a_i ∧ b_i)`.
    pub fn iota_theta(genus: usize, x: usize) -> Self {
        let mut t = TensorElement::zero(genus, 1);
        for i in 1..=genus {
            t = t.add(&Self::iota(genus, x, a_index(genus, i), b_index(genus, i)));
        }
        t
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, sym: Vec<u32>, p: usize, q: usize, c: Rational) {
        if p == q || c.is_zero() {
            return;
        }
        let (p, q, c) = if p < q { (p, q, c) } else { (q, p, -c) };
        match self.terms.entry((sym, p, q)) {
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

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        let mut out = self.clone();
        if out.terms.is_empty() {
            out.degree = other.degree;
        }
        for ((s, p, q), c) in &other.terms {
            out.add_term(s.clone(), *p, *q, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = TensorElement::zero(self.genus, self.degree);
        for ((s, p, q), v) in &self.terms {
            out.add_term(s.clone(), *p, *q, v * c);
        }
        out
    }

    /// Multiply the symmetric factor by the monomial `h^sym`.
    pub fn mul_sym(&self, sym: &[u32]) -> Self {
        let extra = sym.iter().sum::<u32>() as usize;
        let mut out = TensorElement::zero(self.genus, self.degree + extra);
        for ((s, p, q), c) in &self.terms {
            let e: Vec<u32> = s.iter().zip(sym).map(|(a, b)| a + b).collect();
            out.add_term(e, *p, *q, c.clone());
        }
        out
    }

    /// Weight of a basis key in the `e_i` coordinates.
    fn key_weight(genus: usize, key: &TensorKey) -> Vec<i64> {
        let mut w = vec![0i64; genus];
        let mut bump = |idx: usize, k: i64| {
            if idx < genus {
                w[idx] += k;
            } else {
                w[idx - genus] -= k;
            }
        };
        for (idx, &e) in key.0.iter().enumerate() {
            bump(idx, i64::from(e));
        }
        bump(key.1, 1);
        bump(key.2, 1);
        w
    }

    /// The common weight of all terms, if the element is a weight vector.
    pub fn weight(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|k| Self::key_weight(self.genus, k));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Action of a Chevalley generator, extended as a derivation.
    pub fn sp_act(&self, x: SpGenerator) -> Self {
        let g = self.genus;
        let mut out = TensorElement::zero(g, self.degree);
        for ((sym, p, q), c) in &self.terms {
            for (k, &e) in sym.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                for (l, s) in x.act_on_basis(g, k) {
                    let mut ns = sym.clone();
                    ns[k] -= 1;
                    ns[l] += 1;
                    out.add_term(ns, *p, *q, c * Rational::from_integer(BigInt::from(s * i64::from(e))));
                }
            }
            for (l, s) in x.act_on_basis(g, *p) {
                out.add_term(sym.clone(), l, *q, c * Rational::from_integer(BigInt::from(s)));
            }
            for (l, s) in x.act_on_basis(g, *q) {
                out.add_term(sym.clone(), *p, l, c * Rational::from_integer(BigInt::from(s)));
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((sym, p, q), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = sym
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| {
                    let n = basis_name(self.genus, k);
                    if e == 1 { n } else { format!("{n}^{e}") }
                })
                .collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("") };
            write!(
                f,
                "({c}) {mono}(x){}^{}",
                basis_name(self.genus, *p),
                basis_name(self.genus, *q)
            )?;
        }
        Ok(())
    }
}

/// Every basis key of `Sym^n(H) (x) Lambda^2 H`.
pub fn ambient_basis(genus: usize, n: usize) -> Vec<TensorKey> {
    let h = 2 * genus;
    let mut syms = Vec::new();
    let mut cur = vec![0u32; h];
    fn rec(left: u32, var: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if var + 1 == cur.len() {
            cur[var] = left;
            out.push(cur.clone());
            cur[var] = 0;
            return;
        }
        for k in 0..=left {
            cur[var] = k;
            rec(left - k, var + 1, cur, out);
        }
        cur[var] = 0;
    }
    rec(n as u32, 0, &mut cur, &mut syms);
    let mut out = Vec::new();
    for s in syms {
        for p in 0..h {
            for q in p + 1..h {
                out.push((s.clone(), p, q));
            }
        }
    }
    out
}

/// Whether `t` is a nonzero vector of weight `lambda` killed by every raising operator.
pub fn verify_highest_weight(t: &TensorElement, lambda: &DominantWeight) -> Result<bool> {
    if t.is_zero() {
        return Err(Error::ZeroVector);
    }
    if lambda.genus() != t.genus {
        return Err(Error::GenusMismatch { left: lambda.genus(), right: t.genus });
    }
    if t.weight() != Some(lambda.coordinates()) {
        return Ok(false);
    }
    Ok(SpGenerator::raising(t.genus).all(|x| t.sp_act(x).is_zero()))
}

/// One row of the table of highest weight vectors.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub label: String,
    pub weight: DominantWeight,
    pub vector: TensorElement,
    /// The `a_1^n (x) a_1 ∧ a_2` row, the only one surviving in `gr_n A`.
    pub is_top: bool,
}

/// The listed highest weight vectors in `Sym^n(H) (x) Lambda^2 H`, restricted
/// to the rows whose formulae make sense for this `(g, n)`.
pub fn table1_vectors(genus: usize, n: usize) -> Result<Vec<Table1Row>> {
    if genus < 2 {
        return Err(Error::GenusTooSmall { genus, min: 2 });
    }
    let h = 2 * genus;
    let a = |i: usize| a_index(genus, i);
    let a1_pow = |k: usize| {
        let mut s = vec![0u32; h];
        s[a(1)] = k as u32;
        s
    };
    let one = Rational::one();
    let n32 = n as u32;
    let pow = |k: usize| match k {
        0 => String::new(),
        1 => "a1".to_string(),
        k => format!("a1^{k}"),
    };
    let times = |k: usize| if k == 0 { String::new() } else { format!("{} . ", pow(k)) };
    let mut rows = vec![
        Table1Row {
            label: format!("{} (x) a1^a2", if n == 0 { "1".to_string() } else { pow(n) }),
            weight: DominantWeight::combo(genus, n32, 2)?,
            vector: TensorElement::basis(genus, &a1_pow(n), a(1), a(2), one.clone()),
            is_top: true,
        },
        Table1Row {
            label: format!("{} (x) theta", if n == 0 { "1".to_string() } else { pow(n) }),
            weight: DominantWeight::combo(genus, n32, 0)?,
            vector: TensorElement::sym_times_theta(genus, &a1_pow(n)),
            is_top: false,
        },
    ];
    if n >= 1 {
        rows.push(Table1Row {
            label: format!("{}i(a1^theta)", times(n - 1)),
            weight: DominantWeight::combo(genus, n32, 0)?,
            vector: TensorElement::iota_theta(genus, a(1)).mul_sym(&a1_pow(n - 1)),
            is_top: false,
        });
    }
    if n >= 1 && genus >= 3 {
        rows.push(Table1Row {
            label: format!("{}i(a1^a2^a3)", times(n - 1)),
            weight: DominantWeight::combo(genus, n32 - 1, 3)?,
            vector: TensorElement::iota(genus, a(1), a(2), a(3)).mul_sym(&a1_pow(n - 1)),
            is_top: false,
        });
    }
    if n >= 2 {
        let mut a1a2 = a1_pow(n - 2);
        a1a2[a(2)] += 1;
        let first = TensorElement::iota_theta(genus, a(1)).mul_sym(&a1a2);
        let second = TensorElement::iota_theta(genus, a(2)).mul_sym(&a1_pow(n - 1));
        rows.push(Table1Row {
            label: format!("{}a2 . i(a1^theta) - {}i(a2^theta)", pow(n - 2), times(n - 1)),
            weight: DominantWeight::combo(genus, n32 - 2, 2)?,
            vector: first.sub(&second),
            is_top: false,
        });
    }
    Ok(rows)
}

/// The surjection onto the graded pieces of `A`:
/// `h^e (x) y ∧ z -> prod (x_k - 1)^{e_k} [y, z]`, extended linearly.
pub fn grading_map(t: &TensorElement) -> Result<AlexVector> {
    let g = t.genus;
    let mut out = AlexVector::zero(g);
    for ((sym, p, q), c) in &t.terms {
        let y = FreeWord::generator(g, p + 1)?;
        let z = FreeWord::generator(g, q + 1)?;
        let class = alexander_class(&FreeWord::commutator(&y, &z)?)?;
        let scalar = LaurentPoly::shifted_monomial(g, sym).scalar_mul(c);
        out = &out + &class.scale(&scalar)?;
    }
    Ok(out)
}
