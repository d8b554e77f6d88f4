//! Independent recomputations of derived quantities, built only from the
//! definitions and compared with the library.

use std::collections::HashMap;

use alexinv::fox::fox_derivative;
use alexinv::linalg::Echelon;
use alexinv::magnus::{graded_lie_dims, lyndon_words, magnus_expand};
use alexinv::symrep::{ambient_basis, table1_vectors, verify_highest_weight, weyl_dim, SpGenerator, TensorElement};
use alexinv::{DominantWeight, FreeWord, LaurentPoly, Letter, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dimension of the span of `v` and everything reachable by lowering operators.
fn cyclic_dim(v: &TensorElement, genus: usize) -> usize {
    let index: HashMap<_, usize> =
        ambient_basis(genus, v.degree()).into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let coords = |t: &TensorElement| -> Vec<(usize, Rational)> {
        let mut c: Vec<_> = t.terms().map(|(k, c)| (index[k], c.clone())).collect();
        c.sort_by_key(|(i, _)| *i);
        c
    };
    let mut span = Echelon::new();
    span.insert(&coords(v));
    let mut frontier = vec![v.clone()];
    while let Some(t) = frontier.pop() {
        for x in SpGenerator::lowering(genus) {
            let y = t.sp_act(x);
            if !y.is_zero() && span.insert(&coords(&y)) {
                frontier.push(y);
            }
        }
    }
    span.rank()
}

fn highest_weight_vectors(genus: usize, n: usize) -> Vec<(String, TensorElement)> {
    let mut out: Vec<_> = table1_vectors(genus, n).unwrap().into_iter().map(|r| (r.label, r.vector)).collect();
    let mut a1n = vec![0u32; 2 * genus];
    a1n[0] = n as u32;
    out.push(("a1^n (x) theta".into(), TensorElement::sym_times_theta(genus, &a1n)));
    out
}

#[test]
fn weyl_dimension_matches_orbit_span() {
    for genus in 2..=3 {
        for n in 0..=3 {
            if genus == 3 && n == 3 {
                continue;
            }
            for (label, v) in highest_weight_vectors(genus, n) {
                let weight = DominantWeight::from_coordinates(&v.weight().expect("weight vector")).unwrap();
                assert!(verify_highest_weight(&v, &weight).unwrap(), "{label}");
                let expected = cyclic_dim(&v, genus);
                assert_eq!(weyl_dim(&weight), BigInt::from(expected), "g={genus} n={n} {label} ({weight})");
            }
        }
    }
}

#[test]
fn standard_representation_has_dimension_2g() {
    for genus in 2..=4 {
        let v = TensorElement::iota_theta(genus, 0);
        let lambda1 = DominantWeight::fundamental(genus, 1).unwrap();
        assert!(verify_highest_weight(&v, &lambda1).unwrap());
        assert_eq!(cyclic_dim(&v, genus), 2 * genus);
        assert_eq!(weyl_dim(&lambda1), BigInt::from(2 * genus));
    }
}

/// Recover `d_n` from `prod_n (1 - t^n)^(-d_n) = 1 / (1 - 2g t + t^2)`.
fn lie_dims_by_series(genus: usize, top: usize) -> Vec<BigInt> {
    let g2 = BigInt::from(2 * genus);
    let mut target = vec![BigInt::one(), g2.clone()];
    for i in 2..=top {
        let next = &g2 * &target[i - 1] - &target[i - 2];
        target.push(next);
    }
    let mut dims = Vec::new();
    // product so far, as a truncated series
    let mut prod = vec![BigInt::zero(); top + 1];
    prod[0] = BigInt::one();
    for n in 1..=top {
        let d = &target[n] - &prod[n];
        // multiply by (1 - t^n)^(-d) = sum_k binom(d + k - 1, k) t^(nk)
        let mut next = vec![BigInt::zero(); top + 1];
        let mut coeff = BigInt::one();
        let mut k = 0usize;
        while n * k <= top {
            for i in 0..=top - n * k {
                next[i + n * k] += &coeff * &prod[i];
            }
            k += 1;
            coeff = coeff * (&d + BigInt::from(k - 1)) / BigInt::from(k);
        }
        prod = next;
        dims.push(d);
    }
    dims
}

#[test]
fn lie_dimensions_match_series_inversion() {
    for genus in 2..=3 {
        let lib = graded_lie_dims(genus, 6, 6).unwrap();
        let oracle = lie_dims_by_series(genus, 5);
        let got: Vec<BigInt> = lib.dims.iter().map(|&d| BigInt::from(d)).collect();
        assert_eq!(got, oracle, "genus {genus}");
    }
}

#[test]
fn lyndon_counts_match_necklace_formula() {
    fn mobius(n: usize) -> i64 {
        let (mut n, mut sign, mut p) = (n, 1i64, 2usize);
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            -sign
        } else {
            sign
        }
    }
    for s in 2..=6usize {
        let words = lyndon_words(s, 5);
        for n in 1..=5usize {
            let count = words.iter().filter(|w| w.len() == n).count() as i64;
            let formula: i64 =
                (1..=n).filter(|d| n % d == 0).map(|d| mobius(n / d) * (s as i64).pow(d as u32)).sum::<i64>() / n as i64;
            assert_eq!(count, formula, "alphabet {s}, length {n}");
        }
    }
}

/// Coefficient of `X_{t_1} ... X_{t_d}` in the Magnus expansion, by dynamic
/// programming over the letters of `w`.
fn magnus_coefficient(w: &FreeWord, target: &[usize]) -> BigInt {
    let d = target.len();
    let mut dp = vec![BigInt::zero(); d + 1];
    dp[0] = BigInt::one();
    for l in w.letters() {
        let mut next = dp.clone();
        for t in 1..=d {
            if !l.inverse {
                if target[t - 1] == l.gen {
                    next[t] += &dp[t - 1];
                }
            } else {
                let mut j = 1;
                while j <= t && target[t - j] == l.gen {
                    let term = &dp[t - j];
                    if j % 2 == 1 {
                        next[t] -= term;
                    } else {
                        next[t] += term;
                    }
                    j += 1;
                }
            }
        }
        dp = next;
    }
    dp[d].clone()
}

#[test]
fn magnus_coefficients_match_counting() {
    let genus = 2;
    let k = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let w = FreeWord::random(genus, 12, &mut rng);
        let series = magnus_expand(&w, k).unwrap();
        for _ in 0..30 {
            let d = rng.gen_range(0..k);
            let target: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=2 * genus)).collect();
            let expected = Rational::from_integer(magnus_coefficient(&w, &target));
            assert_eq!(series.coefficient(&target), expected, "{w} at {target:?}");
        }
    }
}

/// `d/dx_j` from the defining sum over occurrences of `x_j^{+-1}`.
fn fox_by_definition(genus: usize, j: usize, w: &FreeWord) -> LaurentPoly {
    let mut prefix = vec![0i64; 2 * genus];
    let mut out = LaurentPoly::zero(genus);
    for l in w.letters() {
        if l.inverse {
            prefix[l.gen - 1] -= 1;
            if l.gen == j {
                out = &out - &LaurentPoly::group_element(genus, &prefix);
            }
        } else {
            if l.gen == j {
                out = &out + &LaurentPoly::group_element(genus, &prefix);
            }
            prefix[l.gen - 1] += 1;
        }
    }
    out
}

#[test]
fn fox_derivatives_match_definition() {
    let genus = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let len = rng.gen_range(0..20);
        let letters: Vec<Letter> =
            (0..len).map(|_| Letter::new(rng.gen_range(1..=2 * genus), rng.gen_bool(0.5))).collect();
        let w = FreeWord::reduce(genus, letters).unwrap();
        for j in 1..=2 * genus {
            assert_eq!(fox_derivative(j, &w), fox_by_definition(genus, j, &w), "{w}, j = {j}");
        }
    }
}
