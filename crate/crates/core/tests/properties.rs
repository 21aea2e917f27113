use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use palcomplex::complexity::build_profile;
use palcomplex::generators::{
    arnoux_rauzy_word, beta_substitution, mechanical_word, reversal_condition_beta, rote_word,
    substitution_fixed_point, BetaSpec, DirectiveSpec, SturmianSpec,
};
use palcomplex::rauzy::{build_rauzy, special_factors};
use palcomplex::realnum::{parse_expr, FieldElement, FieldSpec};
use palcomplex::wordcore::{closed_under_reversal, collect_factors, parse_word_file, write_word_file, WordWindow};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn q23() -> FieldSpec {
    FieldSpec::new(&[2, 3]).unwrap()
}

fn element() -> impl Strategy<Value = FieldElement> {
    prop::collection::vec((-40i64..40, 1i64..12), 4)
        .prop_map(|c| FieldElement::from_coords(q23(), c.into_iter().map(|(n, d)| q(n, d)).collect()).unwrap())
}

fn approx(x: &FieldElement) -> f64 {
    let f = x.field();
    x.coords().iter().enumerate().map(|(mask, c)| c.to_f64().unwrap() * (f.basis_radicand(mask) as f64).sqrt()).sum()
}

/// `(p + sqrt(d)) / s` reduced into (0, 1); irrational since `d` is not a square.
fn quadratic_slope() -> impl Strategy<Value = FieldElement> {
    (prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), -3i64..3, 1i64..5).prop_map(|(d, p, s)| {
        let x = parse_expr(&format!("({p} + sqrt({d})) / {s}")).unwrap();
        x.fract().unwrap()
    })
}

fn rational_intercept() -> impl Strategy<Value = FieldElement> {
    (0i64..50, 1i64..50).prop_map(|(n, d)| FieldElement::from_ratio(FieldSpec::rationals(), n % d, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()) == FieldElement::one(q23()));
        }
    }

    #[test]
    fn sign_and_floor_match_floats(a in element()) {
        let f = approx(&a);
        if f.abs() > 1e-6 {
            prop_assert_eq!(a.sign().unwrap(), if f > 0.0 { 1 } else { -1 });
        }
        let fl = a.floor().unwrap();
        if (f - f.round()).abs() > 1e-6 {
            prop_assert_eq!(fl.to_f64().unwrap(), f.floor());
        }
        let lo = FieldElement::from_rational(q23(), BigRational::from_integer(fl.clone()));
        let hi = FieldElement::from_rational(q23(), BigRational::from_integer(fl + 1));
        prop_assert_ne!(lo.cmp_exact(&a).unwrap(), Ordering::Greater);
        prop_assert_eq!(a.cmp_exact(&hi).unwrap(), Ordering::Less);
    }

    #[test]
    fn display_parses_back(a in element()) {
        let back = parse_expr(&a.to_string()).unwrap().embed(&q23()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn word_file_round_trip(
        letters in prop::collection::vec(0u8..12, 1..300),
        origin in -500i64..500,
        extra in 0usize..3,
    ) {
        let k = *letters.iter().max().unwrap() as usize + 1 + extra;
        let w = WordWindow::new(letters, k, origin, "finite").unwrap();
        let back = parse_word_file(&write_word_file(&w)).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(back[0].letters(), w.letters());
        prop_assert_eq!(back[0].alphabet_size(), k);
        prop_assert_eq!(back[0].origin_index(), origin);
    }

    #[test]
    fn factor_table_matches_brute_force(letters in prop::collection::vec(0u8..3, 1..200), n in 0usize..8) {
        let n = n.min(letters.len());
        let w = WordWindow::full_word(letters.clone(), 3).unwrap();
        let table = collect_factors(&w, n).unwrap();
        let mut naive: Vec<&[u8]> = if n == 0 { vec![&letters[..0]] } else { letters.windows(n).collect() };
        naive.sort();
        naive.dedup();
        prop_assert_eq!(table.count(n).unwrap(), naive.len());
        let listed: Vec<&[u8]> = table.factors(n).unwrap().collect();
        prop_assert_eq!(&listed, &naive);
        let closed = naive.iter().all(|f| {
            let r: Vec<u8> = f.iter().rev().copied().collect();
            naive.contains(&&r[..])
        });
        prop_assert_eq!(closed_under_reversal(&table, n).unwrap(), closed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sturmian_complexity(alpha in quadratic_slope(), rho in rational_intercept()) {
        let spec = SturmianSpec::new(alpha, rho).unwrap();
        let profile = build_profile(&mechanical_word(&spec, 6000).unwrap(), 40).unwrap();
        for r in profile.stable_rows() {
            prop_assert_eq!(r.c, r.n + 1);
            prop_assert_eq!(r.p, if r.n % 2 == 0 { 1 } else { 2 });
            prop_assert_eq!(r.slack, 0);
        }
    }

    #[test]
    fn rote_complement_closed(alpha in quadratic_slope(), rho in rational_intercept()) {
        let spec = SturmianSpec::new(alpha, rho).unwrap();
        let table = collect_factors(&rote_word(&spec, 6000).unwrap(), 10).unwrap();
        prop_assert!(table.is_stable(10));
        for f in table.factors(10).unwrap() {
            let bar: Vec<u8> = f.iter().map(|&l| 1 - l).collect();
            prop_assert!(table.contains(&bar));
        }
        prop_assert_eq!(table.count(10).unwrap(), 20);
    }

    #[test]
    fn arnoux_rauzy_special_factors(
        r in 2usize..5,
        pre in prop::collection::vec(0u8..4, 0..4),
        extra in prop::collection::vec(0u8..4, 0..3),
        rot in 0usize..4,
    ) {
        let pre: Vec<u8> = pre.into_iter().map(|l| l % r as u8).collect();
        let mut period: Vec<u8> = (0..r as u8).chain(extra.into_iter().map(|l| l % r as u8)).collect();
        let len = period.len();
        period.rotate_left(rot % len);
        let spec = DirectiveSpec::new(r, pre, period).unwrap();
        let w = arnoux_rauzy_word(&spec, 20000).unwrap();
        let table = collect_factors(&w, 26).unwrap();
        prop_assert!(table.is_stable(11));
        for n in (1..=25).take_while(|&n| table.is_stable(n + 1)) {
            let rep = special_factors(&build_rauzy(&table, n).unwrap()).unwrap();
            prop_assert_eq!(rep.right.len(), 1);
            prop_assert_eq!(rep.left.len(), 1);
            prop_assert_eq!(rep.right[0].1, r);
            prop_assert_eq!(rep.left[0].1, r);
            prop_assert_eq!(rep.delta_c, r as i64 - 1);
            prop_assert!(closed_under_reversal(&table, n).unwrap());
        }
    }

    #[test]
    fn reversal_closed_beta_attains_bound(t in prop::collection::vec(1u32..4, 2..4)) {
        let Ok(spec) = BetaSpec::simple(t) else { return Ok(()) };
        prop_assume!(reversal_condition_beta(&spec));
        let w = substitution_fixed_point(&beta_substitution(&spec), 20000).unwrap();
        let profile = build_profile(&w, 60).unwrap();
        prop_assert!(profile.is_reversal_closed());
        for r in profile.stable_rows().filter(|r| r.n >= 1) {
            prop_assert_eq!(r.slack, 0, "n = {}", r.n);
        }
    }
}
