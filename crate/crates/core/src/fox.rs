//! Fox calculus and the rational Alexander invariant `A = H_1(pi^(2); Q)`.
//!
//! Elements of `A` are vectors `v in (QH)^2g` with `sum_j v_j (x_j - 1) = 0`,
//! taken modulo the submodule generated by
//! `Theta = sum_j (1 - x_{g+j}) e_j - (1 - x_j) e_{g+j}`.
//!
//! # J-adic filtration
//!
//! The kernel `K = {v : sum_j v_j (x_j - 1) = 0}` is generated over `QH` by the
//! Koszul vectors `kappa_ij = D([x_i, x_j])`. Writing `U_n = J^n K + QH Theta`, the
//! filtration is `J^n A = U_n / QH Theta`. [`JFiltration`] models `U_n` inside
//! `(QH / J^m)^2g` through the shifted expansion: `U_n` is spanned by
//! `y^e kappa_ij` with `|e| >= n` and `y^e Theta`. For `m >= n + 2` the truncated
//! ranks compute `dim gr_n A` exactly; every answer is also recomputed at
//! `m + 1` and the two must agree.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::Echelon;
use crate::words::FreeWord;
use crate::Rational;

/// A vector in `(QH)^2g` against the basis `e_1, ..., e_2g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexVector {
    genus: usize,
    entries: Vec<LaurentPoly>,
}

impl AlexVector {
    pub fn zero(genus: usize) -> Self {
        AlexVector { genus, entries: vec![LaurentPoly::zero(genus); 2 * genus] }
    }

    pub fn new(genus: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != 2 * genus {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries, got {}",
                2 * genus,
                entries.len()
            )));
        }
        if let Some(p) = entries.iter().find(|p| p.genus() != genus) {
            return Err(Error::GenusMismatch { left: genus, right: p.genus() });
        }
        Ok(AlexVector { genus, entries })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    /// Entry `j`, 1-based.
    pub fn entry(&self, j: usize) -> &LaurentPoly {
        &self.entries[j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// Entrywise product with a scalar of `QH`.
    pub fn scale(&self, p: &LaurentPoly) -> Result<Self> {
        if p.genus() != self.genus {
            return Err(Error::GenusMismatch { left: p.genus(), right: self.genus });
        }
        Ok(AlexVector { genus: self.genus, entries: self.entries.iter().map(|e| p * e).collect() })
    }

    /// `sum_j v_j (x_j - 1)`; zero exactly on the kernel realizing `A`.
    pub fn kernel_defect(&self) -> LaurentPoly {
        self.entries
            .iter()
            .enumerate()
            .fold(LaurentPoly::zero(self.genus), |acc, (j, v)| {
                &acc + &(v * &LaurentPoly::shifted_var(self.genus, j + 1))
            })
    }

    pub fn satisfies_kernel(&self) -> bool {
        self.kernel_defect().is_zero()
    }
}

impl Add for &AlexVector {
    type Output = AlexVector;

    fn add(self, rhs: &AlexVector) -> AlexVector {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        AlexVector {
            genus: self.genus,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &AlexVector {
    type Output = AlexVector;

    fn sub(self, rhs: &AlexVector) -> AlexVector {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        AlexVector {
            genus: self.genus,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &AlexVector {
    type Output = AlexVector;

    fn neg(self) -> AlexVector {
        AlexVector { genus: self.genus, entries: self.entries.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for AlexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The relator vector `Theta`, the single relation of the presentation of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRelator {
    vector: AlexVector,
}

impl ThetaRelator {
    pub fn new(genus: usize) -> Self {
        let one = LaurentPoly::one(genus);
        let mut entries = vec![LaurentPoly::zero(genus); 2 * genus];
        for j in 1..=genus {
            entries[j - 1] = &one - &LaurentPoly::var(genus, genus + j);
            entries[genus + j - 1] = -&(&one - &LaurentPoly::var(genus, j));
        }
        ThetaRelator { vector: AlexVector { genus, entries } }
    }

    pub fn vector(&self) -> &AlexVector {
        &self.vector
    }

    pub fn genus(&self) -> usize {
        self.vector.genus
    }

    /// `r` with `v = r * Theta`, if it exists. Divides the first entry by
    /// `1 - x_{g+1}` and verifies the quotient against every entry.
    pub fn divide(&self, v: &AlexVector) -> Option<LaurentPoly> {
        if v.genus != self.genus() {
            return None;
        }
        let r = v.entries[0].div_one_minus_var(self.genus() + 1)?;
        let rt = self.vector.scale(&r).ok()?;
        (&rt == v).then_some(r)
    }
}

/// `Theta` as a plain vector.
pub fn theta(genus: usize) -> AlexVector {
    ThetaRelator::new(genus).vector
}

/// The Fox derivative `D_j(w)` (1-based `j`), via
/// `D_j(uv) = D_j(u) + phi(u) D_j(v)` and `D_j(x^-1) = -phi(x)^-1 D_j(x)`.
pub fn fox_derivative(j: usize, w: &FreeWord) -> LaurentPoly {
    fox_vector(w).entries.swap_remove(j - 1)
}

/// `(D_1(w), ..., D_2g(w))`.
pub fn fox_vector(w: &FreeWord) -> AlexVector {
    let g = w.genus();
    let mut entries = vec![LaurentPoly::zero(g); 2 * g];
    let mut prefix = vec![0i64; 2 * g];
    for l in w.letters() {
        let k = l.gen - 1;
        if l.inverse {
            // phi(prefix) * D(x^-1) = -phi(prefix) x^-1
            prefix[k] -= 1;
            entries[k] = &entries[k] - &LaurentPoly::group_element(g, &prefix);
        } else {
            entries[k] = &entries[k] + &LaurentPoly::group_element(g, &prefix);
            prefix[k] += 1;
        }
    }
    AlexVector { genus: g, entries }
}

/// The class of `w in [F, F]` in `A`, represented by its Fox vector.
pub fn alexander_class(w: &FreeWord) -> Result<AlexVector> {
    if !w.in_commutator_subgroup() {
        return Err(Error::NotInCommutatorSubgroup { word: w.to_string() });
    }
    Ok(fox_vector(w))
}

/// The witness `r` when `v = r * Theta`.
pub fn is_multiple_of_theta(v: &AlexVector) -> Option<LaurentPoly> {
    ThetaRelator::new(v.genus).divide(v)
}

pub fn equivalent_mod_theta(u: &AlexVector, v: &AlexVector) -> bool {
    u.genus == v.genus && is_multiple_of_theta(&(u - v)).is_some()
}

pub fn module_scalar(p: &LaurentPoly, v: &AlexVector) -> Result<AlexVector> {
    v.scale(p)
}

/// The Koszul generators `D([x_i, x_j])`, `i < j`, in lexicographic order.
pub fn koszul_generators(genus: usize) -> Result<Vec<AlexVector>> {
    if genus < 2 {
        return Err(Error::GenusTooSmall { genus, min: 2 });
    }
    let mut out = Vec::new();
    for i in 1..=2 * genus {
        for j in i + 1..=2 * genus {
            let xi = FreeWord::generator(genus, i)?;
            let xj = FreeWord::generator(genus, j)?;
            out.push(fox_vector(&FreeWord::commutator(&xi, &xj)?));
        }
    }
    Ok(out)
}

/// Nonnegative exponent vectors of total degree `< bound` in graded order.
#[derive(Clone, Debug)]
pub(crate) struct MonomialIndex {
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    by_degree: Vec<std::ops::Range<usize>>,
}

impl MonomialIndex {
    pub(crate) fn new(nvars: usize, bound: usize) -> Self {
        let mut monomials = Vec::new();
        let mut by_degree = Vec::new();
        for d in 0..bound {
            let start = monomials.len();
            let mut cur = vec![0u32; nvars];
            push_compositions(d as u32, 0, &mut cur, &mut monomials);
            by_degree.push(start..monomials.len());
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialIndex { monomials, index, by_degree }
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.monomials.len()
    }

    pub(crate) fn get(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub(crate) fn of_degree(&self, d: usize) -> &[Vec<u32>] {
        match self.by_degree.get(d) {
            Some(r) => &self.monomials[r.clone()],
            None => &[],
        }
    }
}

fn push_compositions(left: u32, var: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if var + 1 == cur.len() {
        cur[var] = left;
        out.push(cur.clone());
        cur[var] = 0;
        return;
    }
    for k in (0..=left).rev() {
        cur[var] = k;
        push_compositions(left - k, var + 1, cur, out);
    }
    cur[var] = 0;
}

/// Truncated model of the filtration `U_0 ⊇ U_1 ⊇ ...` of the kernel module
/// inside `(QH / J^m)^2g`.
#[derive(Debug)]
pub struct JFiltration {
    genus: usize,
    trunc: usize,
    monomials: MonomialIndex,
    /// `layers[n]` spans the image of `U_n`, for `n` in `0..trunc`.
    layers: Vec<Echelon>,
}

impl JFiltration {
    /// Build (or fetch from the shared cache) the model for genus `g` and
    /// truncation bound `m >= 2`.
    pub fn get(genus: usize, m: usize) -> Result<Arc<JFiltration>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<OnceLock<Arc<JFiltration>>>>>> = OnceLock::new();
        if genus < 2 {
            return Err(Error::GenusTooSmall { genus, min: 2 });
        }
        if m < 2 {
            return Err(Error::TruncationTooSmall { operation: "J-adic filtration".into(), m, min: 2 });
        }
        let slot = Arc::clone(CACHE.get_or_init(Default::default).lock().unwrap().entry((genus, m)).or_default());
        // concurrent callers for the same key wait here instead of rebuilding
        let built = slot.get_or_init(|| Arc::new(Self::build(genus, m).expect("arguments validated above")));
        Ok(Arc::clone(built))
    }

    fn build(genus: usize, m: usize) -> Result<Self> {
        let nvars = 2 * genus;
        let monomials = MonomialIndex::new(nvars, m);
        let kappas: Vec<Vec<(Vec<u32>, usize, Rational)>> = koszul_generators(genus)?
            .iter()
            .map(|k| expand_terms(k, m))
            .collect();
        let theta_terms = expand_terms(&theta(genus), m);

        let shifted_rows = |terms: &Vec<(Vec<u32>, usize, Rational)>, e: &Vec<u32>| {
            let mut row = Vec::with_capacity(terms.len());
            for (exps, j, c) in terms {
                let shifted: Vec<u32> = exps.iter().zip(e).map(|(a, b)| a + b).collect();
                if let Some(col) = monomials.get(&shifted) {
                    row.push((col * nvars + j, c.clone()));
                }
            }
            row
        };

        // U_n for n >= m - 1 is the span of the Theta multiples alone.
        let mut echelon = Echelon::new();
        let theta_rows: Vec<_> = (0..m.saturating_sub(1))
            .flat_map(|d| monomials.of_degree(d).iter())
            .collect::<Vec<_>>()
            .par_iter()
            .map(|e| shifted_rows(&theta_terms, e))
            .collect();
        for row in &theta_rows {
            echelon.insert(row);
        }
        let mut layers = vec![Echelon::new(); m];
        layers[m - 1] = echelon.clone();
        for n in (0..m - 1).rev() {
            let rows: Vec<_> = monomials
                .of_degree(n)
                .par_iter()
                .flat_map_iter(|e| kappas.iter().map(move |k| (k, e)))
                .map(|(k, e)| shifted_rows(k, e))
                .collect();
            for row in &rows {
                echelon.insert(row);
            }
            layers[n] = echelon.clone();
        }
        Ok(JFiltration { genus, trunc: m, monomials, layers })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    fn layer(&self, n: usize) -> &Echelon {
        &self.layers[n.min(self.trunc - 1)]
    }

    /// Rank of the truncated image of `U_n`.
    pub fn rank(&self, n: usize) -> usize {
        self.layer(n).rank()
    }

    /// `rank(U_n) - rank(U_{n+1})`.
    pub fn graded_rank(&self, n: usize) -> usize {
        self.rank(n) - self.rank(n + 1)
    }

    /// Truncated coordinates of `v`: column `mono * 2g + j`.
    pub fn row(&self, v: &AlexVector) -> Vec<(usize, Rational)> {
        let nvars = 2 * self.genus;
        expand_terms(v, self.trunc)
            .into_iter()
            .filter_map(|(exps, j, c)| self.monomials.get(&exps).map(|col| (col * nvars + j, c)))
            .collect()
    }

    pub fn contains(&self, n: usize, v: &AlexVector) -> bool {
        self.layer(n).contains(&self.row(v))
    }

    /// Largest `n <= max_n` with `v` in the truncated `U_n`.
    pub fn valuation(&self, v: &AlexVector, max_n: usize) -> usize {
        let row = self.row(v);
        (0..=max_n)
            .find(|&n| !self.layer(n).contains(&row))
            .map_or(max_n, |n| n.saturating_sub(1))
    }

    /// Rank of the span of `U_n` together with extra rows.
    pub fn rank_with(&self, n: usize, extra: &[Vec<(usize, Rational)>]) -> usize {
        let mut e = self.layer(n).clone();
        for r in extra {
            e.insert(r);
        }
        e.rank()
    }
}

/// Shifted expansion of each entry as `(exponents, entry index, coefficient)`.
fn expand_terms(v: &AlexVector, m: usize) -> Vec<(Vec<u32>, usize, Rational)> {
    let mut out = Vec::new();
    for (j, p) in v.entries.iter().enumerate() {
        for (exps, c) in p.shifted_expand(m).terms() {
            out.push((exps.clone(), j, c.clone()));
        }
    }
    out
}

/// JSON-facing record of a certified truncated computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComputationReport {
    pub operation: String,
    pub genus: usize,
    pub degree: usize,
    pub truncation: usize,
    pub value: usize,
    pub stable: bool,
}

/// `dim_Q J^n A / J^{n+1} A`, computed at truncations `m` and `m + 1`.
pub fn graded_dimension(genus: usize, n: usize, m: usize) -> Result<ComputationReport> {
    if m < n + 2 {
        return Err(Error::TruncationTooSmall { operation: "graded_dimension".into(), m, min: n + 2 });
    }
    let at_m = JFiltration::get(genus, m)?.graded_rank(n);
    let at_next = JFiltration::get(genus, m + 1)?.graded_rank(n);
    if at_m != at_next {
        return Err(Error::TruncationUnstable {
            operation: "graded_dimension".into(),
            m,
            next: m + 1,
            at_m: at_m.to_string(),
            at_next: at_next.to_string(),
        });
    }
    Ok(ComputationReport {
        operation: "graded_dimension".into(),
        genus,
        degree: n,
        truncation: m,
        value: at_m,
        stable: true,
    })
}

/// Largest `n <= max_n` with `v in J^n A` (`max_n` meaning "at least
/// `max_n`"), computed at truncations `m` and `m + 1`.
pub fn a_valuation(v: &AlexVector, max_n: usize, m: usize) -> Result<ComputationReport> {
    if !v.satisfies_kernel() {
        return Err(Error::InvalidArgument("vector does not satisfy the kernel condition".into()));
    }
    if m < max_n + 2 {
        return Err(Error::TruncationTooSmall { operation: "a_valuation".into(), m, min: max_n + 2 });
    }
    let g = v.genus;
    let at_m = JFiltration::get(g, m)?.valuation(v, max_n);
    let at_next = JFiltration::get(g, m + 1)?.valuation(v, max_n);
    if at_m != at_next {
        return Err(Error::TruncationUnstable {
            operation: "a_valuation".into(),
            m,
            next: m + 1,
            at_m: at_m.to_string(),
            at_next: at_next.to_string(),
        });
    }
    Ok(ComputationReport {
        operation: "a_valuation".into(),
        genus: g,
        degree: max_n,
        truncation: m,
        value: at_m,
        stable: true,
    })
}

/// Whether `v` is zero in `A`, i.e. a multiple of `Theta`.
pub fn vanishes_in_a(v: &AlexVector) -> bool {
    v.is_zero() || is_multiple_of_theta(v).is_some()
}
