//! Words in the free group `F = <x_1, ..., x_2g>`.
//!
//! Conventions used everywhere in the crate:
//!
//! * commutator `[u, v] = u v u^-1 v^-1`;
//! * conjugation `u^v = v^-1 u v`;
//! * `a_i = x_i` and `b_i = x_{g+i}`, so the surface relator is
//!   `[a_1, b_1] ... [a_g, b_g]`.
//!
//! A [`FreeWord`] is always freely reduced.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// A generator `x_gen` (1-based) or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

fn check_index(genus: usize, gen: usize) -> Result<()> {
    if gen == 0 || gen > 2 * genus {
        return Err(Error::GeneratorOutOfRange { index: gen, max: 2 * genus, genus });
    }
    Ok(())
}

fn same_genus(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::GenusMismatch { left, right });
    }
    Ok(())
}

/// Freely reduce a letter sequence with a single stack pass.
fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&last) if last.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// A freely reduced word in the free group of rank `2 * genus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    genus: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(genus: usize) -> Self {
        FreeWord { genus, letters: Vec::new() }
    }

    /// Reduce a raw letter sequence. Fails if any index lies outside `1..=2g`.
    pub fn reduce(genus: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        for l in &letters {
            check_index(genus, l.gen)?;
        }
        Ok(FreeWord { genus, letters: free_reduce(letters) })
    }

    /// Reduce a sequence of `(index, exponent)` pairs with exponent `+1` or `-1`.
    pub fn from_pairs(genus: usize, pairs: &[(usize, i32)]) -> Result<Self> {
        let mut letters = Vec::with_capacity(pairs.len());
        for &(gen, exp) in pairs {
            let inverse = match exp {
                1 => false,
                -1 => true,
                _ => return Err(Error::InvalidArgument(format!("exponent {exp} is not +1 or -1"))),
            };
            letters.push(Letter { gen, inverse });
        }
        Self::reduce(genus, letters)
    }

    pub fn generator(genus: usize, gen: usize) -> Result<Self> {
        check_index(genus, gen)?;
        Ok(FreeWord { genus, letters: vec![Letter::pos(gen)] })
    }

    /// `a_i = x_i`.
    pub fn a(genus: usize, i: usize) -> Result<Self> {
        if i == 0 || i > genus {
            return Err(Error::GeneratorOutOfRange { index: i, max: genus, genus });
        }
        Self::generator(genus, i)
    }

    /// `b_i = x_{g+i}`.
    pub fn b(genus: usize, i: usize) -> Result<Self> {
        if i == 0 || i > genus {
            return Err(Error::GeneratorOutOfRange { index: i, max: genus, genus });
        }
        Self::generator(genus, genus + i)
    }

    /// The surface relator `[x_1, x_{g+1}] ... [x_g, x_2g]`.
    pub fn relator(genus: usize) -> Self {
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 1..=genus {
            let j = genus + i;
            letters.extend([Letter::pos(i), Letter::pos(j), Letter::neg(i), Letter::neg(j)]);
        }
        FreeWord { genus, letters: free_reduce(letters) }
    }

    /// `[a_1, b_1] ... [a_h, b_h]`, the boundary of the first `h` handles.
    pub fn handle_boundary(genus: usize, h: usize) -> Self {
        let mut letters = Vec::with_capacity(4 * h);
        for i in 1..=h.min(genus) {
            let j = genus + i;
            letters.extend([Letter::pos(i), Letter::pos(j), Letter::neg(i), Letter::neg(j)]);
        }
        FreeWord { genus, letters: free_reduce(letters) }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Result<Self> {
        same_genus(self.genus, other.genus)?;
        Ok(self.concat(other))
    }

    pub(crate) fn concat(&self, other: &FreeWord) -> Self {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            match letters.last() {
                Some(&last) if last.cancels(l) => {
                    letters.pop();
                }
                _ => letters.push(l),
            }
        }
        FreeWord { genus: self.genus, letters }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity(self.genus);
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> Result<Self> {
        same_genus(u.genus, v.genus)?;
        Ok(u.concat(v).concat(&u.inverse()).concat(&v.inverse()))
    }

    /// `self^by = by^-1 self by`.
    pub fn conjugate_by(&self, by: &FreeWord) -> Result<Self> {
        same_genus(self.genus, by.genus)?;
        Ok(by.inverse().concat(self).concat(by))
    }

    /// Exponent sums, i.e. the image in `H = Z^2g`.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut out = vec![0i64; 2 * self.genus];
        for l in &self.letters {
            out[l.gen - 1] += l.exponent();
        }
        out
    }

    pub fn in_commutator_subgroup(&self) -> bool {
        self.abelianize().iter().all(|&e| e == 0)
    }

    /// Cyclically reduced core of the word.
    pub fn cyclic_reduce(&self) -> Self {
        let l = &self.letters;
        let (mut lo, mut hi) = (0usize, l.len());
        while hi - lo >= 2 && l[lo].cancels(l[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        FreeWord { genus: self.genus, letters: l[lo..hi].to_vec() }
    }

    /// Decide whether `self` and `other` are conjugate in `F`: cyclically
    /// reduced forms must agree up to rotation.
    pub fn is_conjugate_to(&self, other: &FreeWord) -> bool {
        if self.genus != other.genus {
            return false;
        }
        let a = self.cyclic_reduce().letters;
        let b = other.cyclic_reduce().letters;
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter()))
    }

    /// Uniformly random reduced word of length exactly `len`.
    pub fn random<R: Rng + ?Sized>(genus: usize, len: usize, rng: &mut R) -> Self {
        let rank = 2 * genus;
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let l = Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5));
            if letters.last().is_some_and(|&last| last.cancels(l)) {
                continue;
            }
            letters.push(l);
        }
        FreeWord { genus, letters }
    }

    /// Random element of `[F, F]`: a commutator of two random words.
    pub fn random_commutator<R: Rng + ?Sized>(genus: usize, len: usize, rng: &mut R) -> Self {
        let u = Self::random(genus, len.max(1), rng);
        let v = Self::random(genus, len.max(1), rng);
        u.concat(&v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Parse whitespace-separated tokens `x<k>`, `x<k>^-1`, `x<k>^n`, with
    /// aliases `a<i> = x<i>` and `b<i> = x<g+i>`. The literal `1` or an empty
    /// string denote the identity.
    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    (b, e)
                }
                None => (token, 1),
            };
            let gen = parse_generator(genus, base)?;
            let l = Letter::new(gen, exp < 0);
            for _ in 0..exp.unsigned_abs() {
                letters.push(l);
            }
        }
        Self::reduce(genus, letters)
    }
}

/// Parse `x<k>`, `a<i>` or `b<i>` into a 1-based generator index.
pub fn parse_generator(genus: usize, token: &str) -> Result<usize> {
    let bad = || Error::Parse(format!("unknown generator `{token}`"));
    let mut chars = token.chars();
    let head = chars.next().ok_or_else(bad)?;
    let k: usize = chars.as_str().parse().map_err(|_| bad())?;
    let gen = match head {
        'x' => k,
        'a' if (1..=genus).contains(&k) => k,
        'b' if (1..=genus).contains(&k) => genus + k,
        'a' | 'b' => return Err(Error::GeneratorOutOfRange { index: k, max: genus, genus }),
        _ => return Err(bad()),
    };
    check_index(genus, gen)?;
    Ok(gen)
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", l.gen)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// An endomorphism of `F` given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoImages {
    genus: usize,
    images: Vec<FreeWord>,
}

impl EndoImages {
    pub fn new(genus: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != 2 * genus {
            return Err(Error::InvalidArgument(format!(
                "expected {} generator images, got {}",
                2 * genus,
                images.len()
            )));
        }
        for w in &images {
            same_genus(genus, w.genus)?;
        }
        Ok(EndoImages { genus, images })
    }

    pub fn identity(genus: usize) -> Self {
        let images = (1..=2 * genus)
            .map(|i| FreeWord { genus, letters: vec![Letter::pos(i)] })
            .collect();
        EndoImages { genus, images }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Image of `x_gen` (1-based).
    pub fn image(&self, gen: usize) -> &FreeWord {
        &self.images[gen - 1]
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    /// Apply the substitution homomorphism to `w`.
    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        same_genus(self.genus, w.genus)?;
        let mut out = FreeWord::identity(self.genus);
        for l in &w.letters {
            let img = &self.images[l.gen - 1];
            if l.inverse {
                out = out.concat(&img.inverse());
            } else {
                out = out.concat(img);
            }
        }
        Ok(out)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &EndoImages) -> Result<EndoImages> {
        same_genus(self.genus, other.genus)?;
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(EndoImages { genus: self.genus, images })
    }

    /// First generator whose image has a different abelianization, if any.
    pub fn homology_defect(&self) -> Option<usize> {
        (1..=2 * self.genus).find(|&i| {
            let ab = self.images[i - 1].abelianize();
            ab.iter().enumerate().any(|(j, &e)| e != i64::from(j + 1 == i))
        })
    }

    pub fn fixes_homology(&self) -> bool {
        self.homology_defect().is_none()
    }

    /// Whether the image of the surface relator is a conjugate of the relator.
    pub fn preserves_relator(&self) -> bool {
        let rel = FreeWord::relator(self.genus);
        self.apply(&rel).is_ok_and(|img| img.is_conjugate_to(&rel))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn naive_reduce(mut letters: Vec<Letter>) -> Vec<Letter> {
        loop {
            let pos = letters.windows(2).position(|w| w[0].cancels(w[1]));
            match pos {
                Some(i) => {
                    letters.drain(i..i + 2);
                }
                None => return letters,
            }
        }
    }

    #[test]
    fn cancellation() {
        let w = FreeWord::from_pairs(2, &[(1, 1), (1, -1)]).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn relator_is_reduced_of_length_8() {
        let r = FreeWord::relator(2);
        assert_eq!(r.len(), 8);
        assert_eq!(r.to_string(), "x1 x3 x1^-1 x3^-1 x2 x4 x2^-1 x4^-1");
        let again = FreeWord::reduce(2, r.letters().to_vec()).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn reduce_matches_rescan_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let raw: Vec<Letter> = (0..50)
                .map(|_| Letter::new(rng.gen_range(1..=4), rng.gen_bool(0.5)))
                .collect();
            let w = FreeWord::reduce(2, raw.clone()).unwrap();
            assert_eq!(w.letters(), naive_reduce(raw).as_slice());
        }
    }

    #[test]
    fn out_of_range_index() {
        assert_eq!(
            FreeWord::from_pairs(2, &[(5, 1)]),
            Err(Error::GeneratorOutOfRange { index: 5, max: 4, genus: 2 })
        );
        assert!(FreeWord::from_pairs(2, &[(0, 1)]).is_err());
    }

    #[test]
    fn commutators() {
        let x1 = FreeWord::generator(2, 1).unwrap();
        let x3 = FreeWord::generator(2, 3).unwrap();
        assert!(FreeWord::commutator(&x1, &x1).unwrap().is_empty());
        let c = FreeWord::commutator(&x1, &x3).unwrap();
        assert_eq!(c.to_string(), "x1 x3 x1^-1 x3^-1");
        let y = FreeWord::generator(3, 1).unwrap();
        assert_eq!(
            FreeWord::commutator(&x1, &y),
            Err(Error::GenusMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn abelianization() {
        assert_eq!(FreeWord::relator(3).abelianize(), vec![0; 6]);
        let w = FreeWord::parse(2, "x1 x1 x2^-1").unwrap();
        assert_eq!(w.abelianize(), vec![2, -1, 0, 0]);
    }

    #[test]
    fn parse_aliases() {
        let w = FreeWord::parse(3, "a1 b1 a1^-1 b1^-1").unwrap();
        assert_eq!(w, FreeWord::commutator(&FreeWord::a(3, 1).unwrap(), &FreeWord::b(3, 1).unwrap()).unwrap());
        assert_eq!(FreeWord::parse(2, "x1^3").unwrap().len(), 3);
        assert!(FreeWord::parse(2, "b3").is_err());
        assert!(FreeWord::parse(2, "y1").is_err());
        assert!(FreeWord::parse(2, "x1^q").is_err());
        assert!(FreeWord::parse(2, "").unwrap().is_empty());
    }

    #[test]
    fn cyclic_conjugacy() {
        let r = FreeWord::relator(2);
        let u = FreeWord::parse(2, "x2 x1^-1 x4").unwrap();
        let conj = u.concat(&r).concat(&u.inverse());
        assert!(conj.is_conjugate_to(&r));
        assert!(!FreeWord::parse(2, "x1 x2").unwrap().is_conjugate_to(&r));
    }

    #[test]
    fn identity_endomorphism() {
        let id = EndoImages::identity(2);
        let w = FreeWord::parse(2, "x1 x4^-1 x2").unwrap();
        assert_eq!(id.apply(&w).unwrap(), w);
        assert!(id.fixes_homology());
        assert!(id.preserves_relator());
    }

    #[test]
    fn composition_matches_double_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = 2;
        let e = EndoImages::new(g, (0..4).map(|_| FreeWord::random(g, 3, &mut rng)).collect()).unwrap();
        let f = EndoImages::new(g, (0..4).map(|_| FreeWord::random(g, 3, &mut rng)).collect()).unwrap();
        let ef = e.compose(&f).unwrap();
        for _ in 0..20 {
            let w = FreeWord::random(g, 6, &mut rng);
            assert_eq!(ef.apply(&w).unwrap(), e.apply(&f.apply(&w).unwrap()).unwrap());
        }
    }

    #[test]
    fn hall_witt_identity() {
        // [x, yz] = [x, y] [x, z]^{y^-1}
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = FreeWord::random(2, 4, &mut rng);
            let y = FreeWord::random(2, 4, &mut rng);
            let z = FreeWord::random(2, 4, &mut rng);
            let lhs = FreeWord::commutator(&x, &y.concat(&z)).unwrap();
            let rhs = FreeWord::commutator(&x, &y)
                .unwrap()
                .concat(&FreeWord::commutator(&x, &z).unwrap().conjugate_by(&y.inverse()).unwrap());
            assert!(lhs.concat(&rhs.inverse()).is_empty());
        }
    }
}
