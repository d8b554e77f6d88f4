//! Truncated Magnus expansions, lower central series depth and Johnson
//! homomorphisms.
//!
//! The expansion sends `x_i -> 1 + X_i` into the noncommutative power series
//! ring `Q<<X_1, ..., X_2g>>`, truncated below degree `k`. Depth in the free
//! group is the least degree of a nonzero term of `mu(w) - 1`.
//!
//! For the surface group the completed group algebra is the power series ring
//! modulo the closed two-sided ideal generated by `r = mu(relator) - 1`, whose
//! lowest-degree part is `omega = sum_i [X_i, X_{g+i}]`. Its image below degree
//! `k` is spanned by `u r v` with `|u| + |v| <= k - 3`. Reduction uses an
//! echelon basis whose pivots are lowest-degree columns, so the least degree of
//! the remainder is exactly the lower central series depth over `Q`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::words::{EndoImages, FreeWord};
use crate::Rational;

/// A noncommutative monomial: 0-based letter indices, ordered by degree then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcWord(pub Vec<u8>);

impl Ord for NcWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NcWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl NcWord {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn concat(&self, other: &NcWord) -> NcWord {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        NcWord(v)
    }
}

/// Element of `Q<X_1..X_2g>` modulo terms of degree `>= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    genus: usize,
    bound: usize,
    terms: BTreeMap<NcWord, Rational>,
}

impl TruncatedSeries {
    pub fn zero(genus: usize, bound: usize) -> Self {
        TruncatedSeries { genus, bound, terms: BTreeMap::new() }
    }

    pub fn one(genus: usize, bound: usize) -> Self {
        let mut s = Self::zero(genus, bound);
        s.add_term(NcWord(vec![]), Rational::one());
        s
    }

    /// The single term `c X_{w_1} ... X_{w_d}` (letters 1-based).
    pub fn monomial(genus: usize, bound: usize, letters: &[usize], c: Rational) -> Result<Self> {
        let mut w = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l > 2 * genus {
                return Err(Error::GeneratorOutOfRange { index: l, max: 2 * genus, genus });
            }
            w.push((l - 1) as u8);
        }
        let mut s = Self::zero(genus, bound);
        s.add_term(NcWord(w), c);
        Ok(s)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NcWord, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial given by 1-based letters.
    pub fn coefficient(&self, letters: &[usize]) -> Rational {
        let w = NcWord(letters.iter().map(|&l| (l - 1) as u8).collect());
        self.terms.get(&w).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, w: NcWord, c: Rational) {
        if w.degree() >= self.bound || c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    fn check(&self, other: &Self) {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        assert_eq!(self.bound, other.bound, "truncation mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.genus, self.bound);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.genus, self.bound);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.degree() + v.degree() >= self.bound {
                    // `other` is degree ordered, so later terms are longer still
                    break;
                }
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// Right multiplication by `mu(x_gen^{±1})`.
    fn mul_letter(&self, letter: u8, inverse: bool) -> Self {
        let mut out = self.clone();
        if !inverse {
            for (w, c) in &self.terms {
                let mut v = w.0.clone();
                v.push(letter);
                out.add_term(NcWord(v), c.clone());
            }
            return out;
        }
        // sum_{j >= 1} (-1)^j X^j
        for (w, c) in &self.terms {
            let mut v = w.0.clone();
            let mut sign = -Rational::one();
            while v.len() + 1 < self.bound {
                v.push(letter);
                out.add_term(NcWord(v.clone()), &sign * c);
                sign = -sign;
            }
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn degree_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.genus, self.bound);
        for (w, c) in &self.terms {
            if w.degree() == d {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// Least degree of a nonzero term.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(NcWord::degree)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: String = w.0.iter().map(|l| format!("X{}", l + 1)).collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs} {mono}")?;
            }
        }
        Ok(())
    }
}

/// `mu(w)` truncated below degree `k`.
pub fn magnus_expand(w: &FreeWord, k: usize) -> Result<TruncatedSeries> {
    if k < 2 {
        return Err(Error::TruncationTooSmall { operation: "magnus_expand".into(), m: k, min: 2 });
    }
    let mut s = TruncatedSeries::one(w.genus(), k);
    for l in w.letters() {
        s = s.mul_letter((l.gen - 1) as u8, l.inverse);
    }
    Ok(s)
}

/// Lower central series depth of `w` in the free group, capped at `k`.
pub fn free_lcs_depth(w: &FreeWord, k: usize) -> Result<usize> {
    let s = magnus_expand(w, k)?.sub(&TruncatedSeries::one(w.genus(), k));
    Ok(s.min_degree().unwrap_or(k))
}

/// Column index of a word: all words of smaller degree come first.
fn word_index(alphabet: usize, w: &[u8]) -> usize {
    let offset: usize = (0..w.len()).map(|d| alphabet.pow(d as u32)).sum();
    offset + w.iter().fold(0usize, |acc, &l| acc * alphabet + l as usize)
}

fn index_word(alphabet: usize, mut idx: usize) -> NcWord {
    let mut d = 0;
    while idx >= alphabet.pow(d as u32) {
        idx -= alphabet.pow(d as u32);
        d += 1;
    }
    let mut w = vec![0u8; d];
    for slot in w.iter_mut().rev() {
        *slot = (idx % alphabet) as u8;
        idx /= alphabet;
    }
    NcWord(w)
}

/// All words of length `d` over `alphabet` letters, in lexicographic order.
fn words_of_length(alphabet: usize, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u8>| {
                (0..alphabet as u8).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// The surface relator ideal below degree `k`, as an echelon basis.
#[derive(Debug)]
pub struct SurfaceIdeal {
    genus: usize,
    bound: usize,
    echelon: Echelon,
}

impl SurfaceIdeal {
    /// Build (or fetch from the shared cache) the ideal for `(g, k)`.
    pub fn get(genus: usize, k: usize) -> Result<Arc<SurfaceIdeal>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<OnceLock<Arc<SurfaceIdeal>>>>>> = OnceLock::new();
        if genus < 1 {
            return Err(Error::GenusTooSmall { genus, min: 1 });
        }
        let slot = Arc::clone(CACHE.get_or_init(Default::default).lock().unwrap().entry((genus, k)).or_default());
        // concurrent callers for the same key wait here instead of rebuilding
        let built = slot.get_or_init(|| Arc::new(Self::build(genus, k).expect("arguments validated above")));
        Ok(Arc::clone(built))
    }

    fn build(genus: usize, k: usize) -> Result<Self> {
        let s = 2 * genus;
        let mut echelon = Echelon::new();
        if k >= 3 {
            let r = magnus_expand(&FreeWord::relator(genus), k)?.sub(&TruncatedSeries::one(genus, k));
            let terms: Vec<(&NcWord, &Rational)> = r.terms().collect();
            let mut pairs = Vec::new();
            for t in 0..=k - 3 {
                for a in 0..=t {
                    for u in words_of_length(s, a) {
                        for v in words_of_length(s, t - a) {
                            pairs.push((u.clone(), v));
                        }
                    }
                }
            }
            let rows: Vec<Vec<(usize, Rational)>> = pairs
                .par_iter()
                .map(|(u, v)| {
                    terms
                        .iter()
                        .take_while(|(w, _)| u.len() + w.degree() + v.len() < k)
                        .map(|(w, c)| {
                            let mut word = u.clone();
                            word.extend_from_slice(&w.0);
                            word.extend_from_slice(v);
                            (word_index(s, &word), (*c).clone())
                        })
                        .collect()
                })
                .collect();
            for row in &rows {
                echelon.insert(row);
            }
        }
        Ok(SurfaceIdeal { genus, bound: k, echelon })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Dimension of the ideal's image below degree `k`.
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn reduce(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        if x.genus != self.genus {
            return Err(Error::GenusMismatch { left: x.genus, right: self.genus });
        }
        if x.bound != self.bound {
            return Err(Error::InvalidArgument(format!(
                "series truncated at {} reduced by ideal truncated at {}",
                x.bound, self.bound
            )));
        }
        let s = 2 * self.genus;
        let row: Vec<(usize, Rational)> = x.terms().map(|(w, c)| (word_index(s, &w.0), c.clone())).collect();
        let mut out = TruncatedSeries::zero(self.genus, self.bound);
        for (idx, c) in self.echelon.remainder(&row) {
            out.add_term(index_word(s, idx), c);
        }
        Ok(out)
    }
}

/// Canonical representative of `x` modulo the surface relator ideal.
pub fn surface_reduce(x: &TruncatedSeries) -> Result<TruncatedSeries> {
    SurfaceIdeal::get(x.genus, x.bound)?.reduce(x)
}

/// Lower central series depth of the image of `w` in the surface group,
/// capped at `k`.
pub fn surface_lcs_depth(w: &FreeWord, k: usize) -> Result<usize> {
    let s = magnus_expand(w, k)?.sub(&TruncatedSeries::one(w.genus(), k));
    Ok(surface_reduce(&s)?.min_degree().unwrap_or(k))
}

/// Lyndon words of length `1..=n` over `alphabet` letters (Duval's algorithm),
/// in lexicographic order.
pub fn lyndon_words(alphabet: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if alphabet == 0 || n == 0 {
        return out;
    }
    let top = (alphabet - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        out.push(w.clone());
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

/// Dimensions of the rational graded Lie algebra of the surface group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieGraded {
    pub genus: usize,
    pub bound: usize,
    /// Free Lie algebra dimensions, degrees `1..bound`.
    pub free_dims: Vec<u64>,
    /// Dimensions of the Lie ideal generated by `omega`.
    pub ideal_dims: Vec<u64>,
    /// `free_dims - ideal_dims`.
    pub dims: Vec<u64>,
}

/// `dim L_n(pi) (x) Q` for `n = 1..k-1`. Fails if `k > budget`.
pub fn graded_lie_dims(genus: usize, k: usize, budget: usize) -> Result<LieGraded> {
    if k > budget {
        return Err(Error::BudgetExceeded(format!("graded_lie_dims with k = {k} > budget {budget}")));
    }
    if genus < 1 {
        return Err(Error::GenusTooSmall { genus, min: 1 });
    }
    if k < 2 {
        return Err(Error::TruncationTooSmall { operation: "graded_lie_dims".into(), m: k, min: 2 });
    }
    let s = 2 * genus;
    let mut free_dims = vec![0u64; k - 1];
    for w in lyndon_words(s, k - 1) {
        free_dims[w.len() - 1] += 1;
    }

    // Degree-d homogeneous vectors indexed by the base-s value of the word.
    let mut ideal_dims = vec![0u64; k - 1];
    let mut level = Echelon::new();
    if k > 2 {
        let omega: SparseRow = (0..genus)
            .flat_map(|i| {
                let (a, b) = (i, genus + i);
                [(a * s + b, BigInt::one()), (b * s + a, -BigInt::one())]
            })
            .collect::<BTreeMap<_, _>>()
            .into_iter()
            .collect();
        level.insert_int(omega);
        ideal_dims[1] = level.rank() as u64;
        for d in 2..k - 1 {
            let shift = s.pow(d as u32);
            let rows: Vec<SparseRow> = level
                .rows()
                .par_iter()
                .flat_map_iter(|v| {
                    (0..s).map(move |i| {
                        let mut m: BTreeMap<usize, BigInt> = BTreeMap::new();
                        for (idx, c) in v {
                            *m.entry(i * shift + idx).or_insert_with(BigInt::zero) += c;
                            *m.entry(idx * s + i).or_insert_with(BigInt::zero) -= c;
                        }
                        m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                    })
                })
                .collect();
            let mut next = Echelon::new();
            for r in rows {
                next.insert_int(r);
            }
            ideal_dims[d] = next.rank() as u64;
            level = next;
        }
    }
    let dims = free_dims.iter().zip(&ideal_dims).map(|(f, i)| f - i).collect();
    Ok(LieGraded { genus, bound: k, free_dims, ideal_dims, dims })
}

/// Values of the Johnson homomorphism `tau_n` on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JohnsonTau {
    pub genus: usize,
    pub degree: usize,
    pub truncation: usize,
    /// Degree `n + 1` component for `x_1, ..., x_2g`.
    pub components: Vec<TruncatedSeries>,
}

impl JohnsonTau {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(TruncatedSeries::is_zero)
    }

    pub fn add(&self, other: &JohnsonTau) -> JohnsonTau {
        JohnsonTau {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect(),
            ..self.clone()
        }
    }
}

/// `x -> e(x) x^-1` for every generator, checking that `e` fixes `H`.
fn displacements(e: &EndoImages) -> Result<Vec<FreeWord>> {
    if let Some(generator) = e.homology_defect() {
        return Err(Error::DoesNotFixHomology { generator });
    }
    (1..=2 * e.genus())
        .map(|i| e.image(i).mul(&FreeWord::generator(e.genus(), i)?.inverse()))
        .collect()
}

/// `tau_n(e)`: the degree `n + 1` part of the reduced expansion of `e(x) x^-1`.
pub fn johnson_tau(e: &EndoImages, n: usize, k: usize) -> Result<JohnsonTau> {
    if n < 1 {
        return Err(Error::InvalidArgument("johnson_tau needs n >= 1".into()));
    }
    if k < n + 2 {
        return Err(Error::TruncationTooSmall { operation: "johnson_tau".into(), m: k, min: n + 2 });
    }
    let g = e.genus();
    let one = TruncatedSeries::one(g, k);
    let components = displacements(e)?
        .iter()
        .map(|d| Ok(surface_reduce(&magnus_expand(d, k)?.sub(&one))?.degree_part(n + 1)))
        .collect::<Result<_>>()?;
    Ok(JohnsonTau { genus: g, degree: n, truncation: k, components })
}

/// Largest `n < k` such that every `e(x) x^-1` lies in the `(n+1)`-st term of
/// the lower central series.
pub fn johnson_depth(e: &EndoImages, k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::TruncationTooSmall { operation: "johnson_depth".into(), m: k, min: 2 });
    }
    let mut depth = k;
    for d in displacements(e)? {
        depth = depth.min(surface_lcs_depth(&d, k)?);
    }
    Ok(depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn generator_and_inverse() {
        let x1 = FreeWord::generator(2, 1).unwrap();
        assert_eq!(magnus_expand(&x1, 3).unwrap().to_string(), "1 + X1");
        let inv = magnus_expand(&x1.inverse(), 4).unwrap();
        assert_eq!(inv.to_string(), "1 - X1 + X1X1 - X1X1X1");
        assert!(inv.mul(&magnus_expand(&x1, 4).unwrap()) == TruncatedSeries::one(2, 4));
    }

    #[test]
    fn commutator_expansion() {
        let c = FreeWord::commutator(&FreeWord::a(2, 1).unwrap(), &FreeWord::b(2, 1).unwrap()).unwrap();
        assert_eq!(magnus_expand(&c, 3).unwrap().to_string(), "1 + X1X3 - X3X1");
    }

    #[test]
    fn word_indexing_round_trip() {
        for s in [2usize, 4, 6] {
            for idx in 0..300 {
                let w = index_word(s, idx);
                assert_eq!(word_index(s, &w.0), idx);
            }
        }
    }

    #[test]
    fn lyndon_counts() {
        let mut counts = [0usize; 6];
        for w in lyndon_words(2, 6) {
            counts[w.len() - 1] += 1;
        }
        assert_eq!(counts, [2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn relator_reduces_to_zero() {
        for g in 2..=3 {
            let k = 5;
            let r = magnus_expand(&FreeWord::relator(g), k).unwrap().sub(&TruncatedSeries::one(g, k));
            assert!(surface_reduce(&r).unwrap().is_zero());
            assert_eq!(surface_lcs_depth(&FreeWord::relator(g), k).unwrap(), k);
        }
    }

    #[test]
    fn small_depths() {
        let g = 2;
        let a1 = FreeWord::a(g, 1).unwrap();
        let b1 = FreeWord::b(g, 1).unwrap();
        let c = FreeWord::commutator(&a1, &b1).unwrap();
        let cc = FreeWord::commutator(&c, &a1).unwrap();
        assert_eq!(free_lcs_depth(&a1, 5).unwrap(), 1);
        assert_eq!(free_lcs_depth(&c, 5).unwrap(), 2);
        assert_eq!(free_lcs_depth(&cc, 5).unwrap(), 3);
        assert_eq!(surface_lcs_depth(&c, 5).unwrap(), 2);
        assert_eq!(surface_lcs_depth(&cc, 5).unwrap(), 3);
    }

    #[test]
    fn free_monomials_are_fixed() {
        let g = 2;
        let m = TruncatedSeries::monomial(g, 4, &[1, 2, 1], q(1)).unwrap();
        assert_eq!(surface_reduce(&m).unwrap(), m);
    }

    #[test]
    fn lie_dims_low_degrees() {
        for g in 2..=3 {
            let d = graded_lie_dims(g, 4, 6).unwrap();
            assert_eq!(d.dims[0], 2 * g as u64);
            assert_eq!(d.dims[1], (2 * g * g - g - 1) as u64);
        }
        assert!(matches!(graded_lie_dims(2, 7, 6), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn identity_has_full_depth() {
        let e = EndoImages::identity(2);
        assert_eq!(johnson_depth(&e, 4).unwrap(), 3);
        assert!(johnson_tau(&e, 1, 4).unwrap().is_zero());
    }
}
