//! Separating Dehn twists as endomorphisms of the free group, and their action
//! on the Alexander invariant.
//!
//! The twist about the curve bounding the first `h` handles acts by
//! conjugation by `c_h = [a_1, b_1] ... [a_h, b_h]` on `a_1..a_h, b_1..b_h`
//! and fixes the remaining generators. For `h = 1` this gives
//! `a_1 -> c a_1 c^-1 = [[a_1, b_1], a_1] a_1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fox::{a_valuation, alexander_class, vanishes_in_a, AlexVector, JFiltration, MonomialIndex};
use crate::laurent::LaurentPoly;
use crate::words::{EndoImages, FreeWord};

/// A separating twist on the first `h` handles of a genus-`g` surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    genus: usize,
    handles: usize,
    endo: EndoImages,
}

impl TwistSpec {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn handles(&self) -> usize {
        self.handles
    }

    pub fn endo(&self) -> &EndoImages {
        &self.endo
    }

    /// `twist:c<h>`.
    pub fn name(&self) -> String {
        format!("twist:c{}", self.handles)
    }

    /// Parse `twist:c<h>` for the given genus.
    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        let h = text
            .trim()
            .strip_prefix("twist:c")
            .and_then(|h| h.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("expected `twist:c<h>`, got `{text}`")))?;
        separating_twist(genus, h)
    }
}

/// The twist about `c_h`, for `1 <= h < g`.
pub fn separating_twist(genus: usize, h: usize) -> Result<TwistSpec> {
    if h == 0 || h >= genus {
        return Err(Error::HandleOutOfRange { h, genus });
    }
    let c = FreeWord::handle_boundary(genus, h);
    let c_inv = c.inverse();
    let images = (1..=2 * genus)
        .map(|i| {
            let x = FreeWord::generator(genus, i)?;
            let moved = i <= h || (genus < i && i <= genus + h);
            if moved {
                c.mul(&x)?.mul(&c_inv)
            } else {
                Ok(x)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let endo = EndoImages::new(genus, images)?;
    debug_assert!(endo.fixes_homology() && endo.preserves_relator());
    Ok(TwistSpec { genus, handles: h, endo })
}

/// `class(e([u, v])) - class([u, v])`, as a representative modulo `Theta`.
pub fn twist_difference(e: &EndoImages, u: &FreeWord, v: &FreeWord) -> Result<AlexVector> {
    if let Some(generator) = e.homology_defect() {
        return Err(Error::DoesNotFixHomology { generator });
    }
    let uv = FreeWord::commutator(u, v)?;
    Ok(&alexander_class(&e.apply(&uv)?)? - &alexander_class(&uv)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeEntry {
    pub twist: String,
    pub pair: (String, String),
    /// The difference is zero in `A`.
    pub vanishes: bool,
    /// `a_valuation`, saturating at `max_n`; absent when the difference vanishes.
    pub valuation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeLayer {
    pub n: usize,
    /// `dim gr_n A`.
    pub graded_dim: usize,
    /// Dimension of the image of the probed submodule in `A / J^n A`.
    pub span_mod_j_n: usize,
    /// Dimension of its image in `gr_n A`.
    pub span_in_gr_n: usize,
}

/// Exploratory evidence on the submodule generated by twist differences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub genus: usize,
    pub twists: Vec<String>,
    pub pairs: Vec<(String, String)>,
    pub valuations: Vec<ProbeEntry>,
    pub span_dims_per_degree: Vec<ProbeLayer>,
    pub truncation: usize,
    pub max_n: usize,
    pub note: String,
}

/// Span and valuation data for the differences `twist_difference(t, u, v)`
/// over all twists and pairs. Requires `m >= max_n + 2`; the span dimensions
/// are recomputed at `m + 1` and must agree.
pub fn kg1_probe(
    genus: usize,
    twists: &[TwistSpec],
    pairs: &[(FreeWord, FreeWord)],
    max_n: usize,
    m: usize,
) -> Result<ProbeReport> {
    if m < max_n + 2 {
        return Err(Error::TruncationTooSmall { operation: "kg1_probe".into(), m, min: max_n + 2 });
    }
    let mut diffs = Vec::new();
    let mut valuations = Vec::new();
    for t in twists {
        if t.genus() != genus {
            return Err(Error::GenusMismatch { left: genus, right: t.genus() });
        }
        for (u, v) in pairs {
            let d = twist_difference(t.endo(), u, v)?;
            let vanishes = vanishes_in_a(&d);
            let valuation = if vanishes { None } else { Some(a_valuation(&d, max_n, m)?.value) };
            valuations.push(ProbeEntry { twist: t.name(), pair: (u.to_string(), v.to_string()), vanishes, valuation });
            if !vanishes {
                diffs.push(d);
            }
        }
    }
    let layers = probe_layers(genus, &diffs, max_n, m)?;
    let again = probe_layers(genus, &diffs, max_n, m + 1)?;
    if layers != again {
        return Err(Error::TruncationUnstable {
            operation: "kg1_probe".into(),
            m,
            next: m + 1,
            at_m: format!("{:?}", layers.iter().map(|l| l.span_mod_j_n).collect::<Vec<_>>()),
            at_next: format!("{:?}", again.iter().map(|l| l.span_mod_j_n).collect::<Vec<_>>()),
        });
    }
    Ok(ProbeReport {
        genus,
        twists: twists.iter().map(TwistSpec::name).collect(),
        pairs: pairs.iter().map(|(u, v)| (u.to_string(), v.to_string())).collect(),
        valuations,
        span_dims_per_degree: layers,
        truncation: m,
        max_n,
        note: "finite truncated evidence only; makes no claim about equality of the filtrations".into(),
    })
}

fn probe_layers(genus: usize, diffs: &[AlexVector], max_n: usize, m: usize) -> Result<Vec<ProbeLayer>> {
    let filt = JFiltration::get(genus, m)?;
    let monomials = MonomialIndex::new(2 * genus, m);
    let mut rows = Vec::new();
    for d in diffs {
        for deg in 0..m {
            for e in monomials.of_degree(deg) {
                let multiple = d.scale(&LaurentPoly::shifted_monomial(genus, e))?;
                rows.push(filt.row(&multiple));
            }
        }
    }
    // A / J^n A is faithfully modelled for n < m, gr_n A for n < m - 1
    let quotient: Vec<usize> = (0..=max_n + 1).map(|n| filt.rank_with(n, &rows) - filt.rank(n)).collect();
    Ok((0..=max_n)
        .map(|n| ProbeLayer {
            n,
            graded_dim: filt.graded_rank(n),
            span_mod_j_n: quotient[n],
            span_in_gr_n: quotient[n + 1] - quotient[n],
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::equivalent_mod_theta;

    fn w(g: usize, s: &str) -> FreeWord {
        FreeWord::parse(g, s).unwrap()
    }

    #[test]
    fn twist_images_match_hand_words() {
        let t = separating_twist(2, 1).unwrap();
        let c = FreeWord::commutator(&w(2, "a1"), &w(2, "b1")).unwrap();
        let expected = FreeWord::commutator(&c, &w(2, "a1")).unwrap().mul(&w(2, "a1")).unwrap();
        assert_eq!(t.endo().image(1), &expected);
        assert_eq!(expected, w(2, "a1 b1 a1^-1 b1^-1 a1 b1 a1 b1^-1 a1^-1"));
        assert_eq!(t.endo().image(2), &w(2, "a2"));
        assert_eq!(t.name(), "twist:c1");
    }

    #[test]
    fn twists_fix_homology_and_relator() {
        for g in 2..=4 {
            for h in 1..g {
                let t = separating_twist(g, h).unwrap();
                assert!(t.endo().fixes_homology());
                assert!(t.endo().preserves_relator());
                for i in h + 1..=g {
                    assert_eq!(t.endo().image(i), &FreeWord::a(g, i).unwrap());
                    assert_eq!(t.endo().image(g + i), &FreeWord::b(g, i).unwrap());
                }
            }
        }
        assert!(matches!(separating_twist(2, 2), Err(Error::HandleOutOfRange { .. })));
        assert!(matches!(separating_twist(3, 0), Err(Error::HandleOutOfRange { .. })));
    }

    #[test]
    fn parse_twist_name() {
        assert_eq!(TwistSpec::parse(3, "twist:c2").unwrap(), separating_twist(3, 2).unwrap());
        assert!(TwistSpec::parse(3, "twist:x2").is_err());
    }

    #[test]
    fn identity_and_fixed_pairs_give_zero() {
        let id = EndoImages::identity(2);
        assert!(twist_difference(&id, &w(2, "a1"), &w(2, "b2")).unwrap().is_zero());
        let t = separating_twist(3, 1).unwrap();
        assert!(twist_difference(t.endo(), &w(3, "a2"), &w(3, "b2")).unwrap().is_zero());
    }

    #[test]
    fn lemma_difference_by_hand() {
        for g in 2..=3 {
            let t = separating_twist(g, 1).unwrap();
            let d = twist_difference(t.endo(), &w(g, "a1"), &w(g, "a2")).unwrap();
            let c = alexander_class(&w(g, "a1 b1 a1^-1 b1^-1")).unwrap();
            let p = LaurentPoly::parse(g, "(a1 - 1)*(a2 - 1)").unwrap();
            assert!(equivalent_mod_theta(&d, &c.scale(&p).unwrap()));
        }
    }
}
