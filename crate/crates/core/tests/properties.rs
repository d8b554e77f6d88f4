//! Property tests for the algebraic invariants of each module.

use alexinv::fox::{
    alexander_class, equivalent_mod_theta, fox_derivative, fox_vector, is_multiple_of_theta, module_scalar,
    AlexVector,
};
use alexinv::magnus::{
    free_lcs_depth, johnson_tau, magnus_expand, surface_reduce, TruncatedSeries,
};
use alexinv::mapclass::{separating_twist, twist_difference};
use alexinv::symrep::{ambient_basis, weyl_dim, SpGenerator, TensorElement};
use alexinv::{DominantWeight, FreeWord, LaurentPoly, Letter, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn word_strategy(genus: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1..=2 * genus, any::<bool>()), 0..=max_len)
        .prop_map(move |ls| FreeWord::reduce(genus, ls.into_iter().map(|(g, i)| Letter::new(g, i))).unwrap())
}

fn letters_strategy(genus: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1..=2 * genus, any::<bool>()), 0..=max_len)
        .prop_map(|ls| ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
}

fn poly_strategy(genus: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(-2i64..=2, 2 * genus)), 0..5).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(genus), |acc, (c, e)| &acc + &LaurentPoly::term(genus, q(c), e))
    })
}

fn generator_word(genus: usize) -> impl Strategy<Value = FreeWord> {
    (1..=2 * genus, any::<bool>()).prop_map(move |(g, inv)| FreeWord::reduce(genus, [Letter::new(g, inv)]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // words

    #[test]
    fn reduce_is_idempotent_and_shortens(letters in letters_strategy(3, 30)) {
        let w = FreeWord::reduce(3, letters.clone()).unwrap();
        prop_assert!(w.len() <= letters.len());
        prop_assert_eq!(FreeWord::reduce(3, w.letters().to_vec()).unwrap(), w);
    }

    #[test]
    fn products_associate_and_invert(u in word_strategy(2, 10), v in word_strategy(2, 10), w in word_strategy(2, 10)) {
        let left = u.mul(&v).unwrap().mul(&w).unwrap();
        let right = u.mul(&v.mul(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(u.mul(&u.inverse()).unwrap().is_empty());
    }

    #[test]
    fn twists_act_trivially_on_homology(w in word_strategy(4, 12), h in 1usize..4) {
        let t = separating_twist(4, h).unwrap();
        prop_assert_eq!(t.endo().apply(&w).unwrap().abelianize(), w.abelianize());
    }

    #[test]
    fn hall_witt_identity(x in word_strategy(2, 5), y in word_strategy(2, 5), z in word_strategy(2, 5)) {
        let term = |u: &FreeWord, v: &FreeWord, w: &FreeWord| {
            FreeWord::commutator(&FreeWord::commutator(&u.inverse(), v).unwrap(), w)
                .unwrap()
                .conjugate_by(&u.inverse())
                .unwrap()
        };
        let product = term(&y, &x, &z).mul(&term(&z, &y, &x)).unwrap().mul(&term(&x, &z, &y)).unwrap();
        prop_assert!(product.is_empty());
    }

    // laurent

    #[test]
    fn valuation_is_additive(p in poly_strategy(2), r in poly_strategy(2)) {
        let m = 6;
        let vp = p.j_valuation(m);
        let vr = r.j_valuation(m);
        prop_assert_eq!((&p * &r).j_valuation(m), (vp + vr).min(m));
    }

    #[test]
    fn augmentation_detects_valuation_zero(p in poly_strategy(2)) {
        prop_assert_eq!(p.augmentation() != q(0), p.j_valuation(4) == 0);
    }

    #[test]
    fn shifted_expansion_is_a_ring_map(p in poly_strategy(2), r in poly_strategy(2)) {
        let m = 5;
        prop_assert_eq!((&p * &r).shifted_expand(m), p.shifted_expand(m).mul(&r.shifted_expand(m)));
        prop_assert_eq!((&p + &r).shifted_expand(m), p.shifted_expand(m).add(&r.shifted_expand(m)));
    }

    #[test]
    fn display_parses_back(p in poly_strategy(2)) {
        prop_assert_eq!(LaurentPoly::parse(2, &p.to_string()).unwrap(), p);
    }

    // fox

    #[test]
    fn fundamental_formula(w in word_strategy(3, 16)) {
        let g = 3;
        let mut lhs = LaurentPoly::zero(g);
        for j in 1..=2 * g {
            lhs = &lhs + &(&fox_derivative(j, &w) * &(&LaurentPoly::var(g, j) - &LaurentPoly::one(g)));
        }
        let rhs = &LaurentPoly::group_element(g, &w.abelianize()) - &LaurentPoly::one(g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fox_product_rule(u in word_strategy(2, 8), v in word_strategy(2, 8)) {
        let phi_u = LaurentPoly::group_element(2, &u.abelianize());
        let expected = &fox_vector(&u) + &fox_vector(&v).scale(&phi_u).unwrap();
        prop_assert_eq!(fox_vector(&u.mul(&v).unwrap()), expected);
    }

    #[test]
    fn jacobi_identity_in_a(x in generator_word(2), y in generator_word(2), z in generator_word(2)) {
        let br = |a: &FreeWord, b: &FreeWord, c: &FreeWord| {
            alexander_class(&FreeWord::commutator(a, &FreeWord::commutator(b, c).unwrap()).unwrap()).unwrap()
        };
        let sum = &(&br(&x, &y, &z) + &br(&y, &z, &x)) + &br(&z, &x, &y);
        prop_assert!(equivalent_mod_theta(&sum, &AlexVector::zero(2)));
    }

    #[test]
    fn relator_conjugates_vanish_in_a(u in word_strategy(2, 6), x in word_strategy(2, 4), y in word_strategy(2, 4)) {
        let g = 2;
        let w = FreeWord::commutator(&x, &y).unwrap();
        let rel = FreeWord::relator(g);
        let twisted = u.mul(&rel).unwrap().mul(&u.inverse()).unwrap().mul(&rel.inverse()).unwrap().mul(&w).unwrap();
        prop_assert!(equivalent_mod_theta(&alexander_class(&twisted).unwrap(), &alexander_class(&w).unwrap()));
    }

    #[test]
    fn conjugation_is_the_module_action(u in word_strategy(2, 6), x in word_strategy(2, 4), y in word_strategy(2, 4)) {
        let w = FreeWord::commutator(&x, &y).unwrap();
        let conj = u.mul(&w).unwrap().mul(&u.inverse()).unwrap();
        let phi_u = LaurentPoly::group_element(2, &u.abelianize());
        prop_assert_eq!(alexander_class(&conj).unwrap(), module_scalar(&phi_u, &alexander_class(&w).unwrap()).unwrap());
    }

    // symrep

    #[test]
    fn weyl_dim_is_one_only_for_zero(coeffs in prop::collection::vec(0u32..4, 2..=4)) {
        let w = DominantWeight::new(coeffs);
        let d = weyl_dim(&w);
        prop_assert!(d >= BigInt::from(1));
        prop_assert_eq!(d == BigInt::from(1), w.is_zero());
    }

    #[test]
    fn action_is_linear(i in 0usize..60, j in 0usize..60, c in -3i64..=3, gen in 0usize..9) {
        let g = 3;
        let basis = ambient_basis(g, 1);
        let (ki, kj) = (&basis[i % basis.len()], &basis[j % basis.len()]);
        let a = TensorElement::basis(g, &ki.0, ki.1, ki.2, q(1));
        let b = TensorElement::basis(g, &kj.0, kj.1, kj.2, q(1));
        let x = SpGenerator::all(g).nth(gen).unwrap();
        let lhs = a.add(&b.scale(&q(c))).sp_act(x);
        let rhs = a.sp_act(x).add(&b.sp_act(x).scale(&q(c)));
        prop_assert_eq!(lhs, rhs);
    }

    // magnus

    #[test]
    fn magnus_is_multiplicative(u in word_strategy(2, 8), v in word_strategy(2, 8)) {
        let k = 5;
        let uv = magnus_expand(&u.mul(&v).unwrap(), k).unwrap();
        prop_assert_eq!(uv, magnus_expand(&u, k).unwrap().mul(&magnus_expand(&v, k).unwrap()));
    }

    #[test]
    fn commutator_depth_adds(u in word_strategy(2, 6), v in word_strategy(2, 6)) {
        prop_assume!(!u.is_empty() && !v.is_empty());
        let k = 6;
        let c = FreeWord::commutator(&u, &v).unwrap();
        let du = free_lcs_depth(&u, k).unwrap();
        let dv = free_lcs_depth(&v, k).unwrap();
        prop_assert!(free_lcs_depth(&c, k).unwrap() >= (du + dv).min(k));
    }

    #[test]
    fn surface_reduce_is_an_idempotent_filtered_projection(u in word_strategy(2, 8), v in word_strategy(2, 8), c in -3i64..=3) {
        let k = 5;
        let one = TruncatedSeries::one(2, k);
        let a = magnus_expand(&u, k).unwrap().sub(&one);
        let b = magnus_expand(&v, k).unwrap().sub(&one);
        let ra = surface_reduce(&a).unwrap();
        prop_assert_eq!(surface_reduce(&ra).unwrap(), ra.clone());
        let lin = surface_reduce(&a.add(&b.scale(&q(c)))).unwrap();
        prop_assert_eq!(lin, ra.add(&surface_reduce(&b).unwrap().scale(&q(c))));
        prop_assert!(ra.min_degree().unwrap_or(k) >= a.min_degree().unwrap_or(k));
    }

    #[test]
    fn relator_conjugates_reduce_to_zero(u in word_strategy(2, 6)) {
        let k = 5;
        let w = u.mul(&FreeWord::relator(2)).unwrap().mul(&u.inverse()).unwrap();
        let s = magnus_expand(&w, k).unwrap().sub(&TruncatedSeries::one(2, k));
        prop_assert!(surface_reduce(&s).unwrap().is_zero());
    }

    // mapclass

    #[test]
    fn twist_differences_lie_in_j2(i in 1usize..=4, j in 1usize..=4) {
        prop_assume!(i != j);
        let g = 2;
        let t = separating_twist(g, 1).unwrap();
        let d = twist_difference(t.endo(), &FreeWord::generator(g, i).unwrap(), &FreeWord::generator(g, j).unwrap()).unwrap();
        if is_multiple_of_theta(&d).is_none() && !d.is_zero() {
            prop_assert!(alexinv::fox::a_valuation(&d, 2, 4).unwrap().value >= 2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn a_is_torsion_free(p in poly_strategy(2), seed in 0u64..1000) {
        prop_assume!(!p.is_zero());
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let w = FreeWord::random_commutator(2, 4, &mut rng);
            let v = alexander_class(&w).unwrap();
            if is_multiple_of_theta(&v).is_some() {
                continue;
            }
            prop_assert!(is_multiple_of_theta(&v.scale(&p).unwrap()).is_none());
        }
    }
}

#[test]
fn tau_is_additive_on_twist_pairs() {
    let g = 3;
    let (k, n) = (4, 2);
    let pairs = [(1, 2), (2, 1), (1, 1), (2, 2)];
    for (h1, h2) in pairs {
        let e = separating_twist(g, h1).unwrap();
        let f = separating_twist(g, h2).unwrap();
        let ef = e.endo().compose(f.endo()).unwrap();
        let lhs = johnson_tau(&ef, n, k).unwrap();
        let rhs = johnson_tau(e.endo(), n, k).unwrap().add(&johnson_tau(f.endo(), n, k).unwrap());
        assert_eq!(lhs, rhs, "h = ({h1}, {h2})");
    }
}

#[test]
fn twist_difference_valuation_bounded_by_depth() {
    let g = 2;
    let t = separating_twist(g, 1).unwrap();
    let depth = alexinv::magnus::johnson_depth(t.endo(), 5).unwrap();
    for i in 1..=2 * g {
        for j in 1..=2 * g {
            if i == j {
                continue;
            }
            let d = twist_difference(t.endo(), &FreeWord::generator(g, i).unwrap(), &FreeWord::generator(g, j).unwrap())
                .unwrap();
            if is_multiple_of_theta(&d).is_some() {
                continue;
            }
            let v = alexinv::fox::a_valuation(&d, 3, 5).unwrap().value;
            assert!(v >= depth, "pair ({i}, {j}): valuation {v} < depth {depth}");
        }
    }
}
