mod common;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use classtower::arith::{ceil_two_sqrt, floor_two_sqrt, ge_two_plus_two_sqrt, isqrt, sqrt_enclosure};
use classtower::covers::{CoverModel, KummerCover};
use classtower::ffield::{FieldSpec, Poly};
use classtower::places::{point_counts, Budget, LPolynomial};
use common::{decimal_sqrt_scaled, kummer_points};

fn to_big(n: u128) -> BigInt {
    BigInt::from(n)
}

fn check_roots(x: u128) {
    let four_x = 4 * x;
    let floor = decimal_sqrt_scaled(four_x, 0);
    let exact = &floor * &floor == BigUint::from(four_x);
    let ceil = if exact { floor.clone() } else { &floor + 1u32 };
    assert_eq!(floor_two_sqrt(&to_big(x)), BigInt::from(floor.clone()), "⌊2√{x}⌋");
    assert_eq!(ceil_two_sqrt(&to_big(x)), BigInt::from(ceil), "⌈2√{x}⌉");
    assert_eq!(isqrt(&to_big(x)), BigInt::from(decimal_sqrt_scaled(x, 0)), "⌊√{x}⌋");
}

#[test]
fn integer_roots_match_long_hand_extraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let bits = rng.gen_range(1..100u32);
        check_roots(rng.gen::<u128>() >> (128 - bits));
    }
    for s in [1u128, 2, 3, 10, 1 << 20, 999_999_937] {
        for x in [s * s - 1, s * s, s * s + 1] {
            check_roots(x);
        }
    }
}

#[test]
fn sqrt_enclosure_brackets_the_decimal_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let n = rng.gen_range(2..1_000_000u64) as u128;
        let digits = rng.gen_range(1..15u32);
        let iv = sqrt_enclosure(&BigRational::from_integer(to_big(n)), digits);
        let scale = BigInt::from(10u32).pow(digits);
        let d = BigInt::from(decimal_sqrt_scaled(n, digits as usize));
        let lo = BigRational::new(d.clone(), scale.clone());
        let hi = BigRational::new(d + 1, scale.clone());
        // √n ∈ [lo, hi); the enclosure must overlap it and be narrow
        assert!(iv.lo < hi && lo <= iv.hi, "√{n}: {iv:?}");
        assert!(&iv.hi - &iv.lo <= BigRational::new(BigInt::one(), scale), "width at {n}");
    }
}

#[test]
fn tower_inequality_matches_decimal_comparison() {
    // a ≥ 2 + 2√b  ⟺  ⌊√(4b)⌋ ≤ a - 2 with equality only on perfect squares
    for a in 0..40i64 {
        for b in 0..120u128 {
            let f = decimal_sqrt_scaled(4 * b, 0);
            let square = &f * &f == BigUint::from(4 * b);
            let expect = a >= 2 && (BigInt::from(a - 2) > BigInt::from(f.clone()) || (square && BigInt::from(a - 2) == BigInt::from(f)));
            assert_eq!(ge_two_plus_two_sqrt(&BigInt::from(a), &to_big(b)), expect, "a = {a}, b = {b}");
        }
    }
}

fn squarefree_kummer(p: u64, coeffs: &[i64]) -> Option<(Vec<i64>, CoverModel)> {
    let mut c: Vec<i64> = coeffs.iter().map(|x| x.rem_euclid(p as i64)).collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    if c.len() < 2 {
        return None;
    }
    let field = FieldSpec::new(p, 1).unwrap();
    let u = Poly::from_ints(&field, &c);
    if !u.is_squarefree() {
        return None;
    }
    Some((c, CoverModel::Kummer(KummerCover::new(u).ok()?)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kummer_point_counts_match_brute_force(
        p in prop::sample::select(vec![3u64, 5, 7, 11]),
        coeffs in prop::collection::vec(0i64..11, 2..8),
    ) {
        if let Some((c, cover)) = squarefree_kummer(p, &coeffs) {
            let counts = point_counts(&cover, 2, Budget::default()).unwrap();
            prop_assert_eq!(counts[0], kummer_points(p, &c, 1));
            prop_assert_eq!(counts[1], kummer_points(p, &c, 2));
        }
    }

    #[test]
    fn base_changed_l_polynomial_predicts_counts_over_the_extension(
        p in prop::sample::select(vec![3u64, 5]),
        coeffs in prop::collection::vec(0i64..5, 4..7),
    ) {
        if let Some((c, cover)) = squarefree_kummer(p, &coeffs) {
            let g = cover.genus();
            prop_assume!(g >= 1);
            let counts = point_counts(&cover, g as u32, Budget::default()).unwrap();
            let l = LPolynomial::from_counts(p, g, &counts).unwrap();
            let l2 = l.base_change(2);
            prop_assert_eq!(l2.predicted_counts(1)[0].clone(), BigInt::from(kummer_points(p, &c, 2)));
            // the class number is the product over Frobenius eigenvalues: L(1) > 0
            prop_assert!(l2.class_number() > BigInt::from(0));
        }
    }
}
