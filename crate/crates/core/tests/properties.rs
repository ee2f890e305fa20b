//! Property tests for the algebraic invariants.

mod common;

use common::all_colorings;
use framed_tqft::engine::generate::{random_presentation, random_slides, GenConfig};
use framed_tqft::presentation::{first_homology, parse, parse_script, render, render_script, signature};
use framed_tqft::scalar::{CyclotomicNumber, DSquared, ExactScalar};
use framed_tqft::theory::{builtin, builtin_names, ColorVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cyclotomic(order: usize) -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec((-6i64..=6, 1i64..=4), order).prop_map(move |cs| {
        let coeffs = cs
            .into_iter()
            .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        CyclotomicNumber::from_coeffs(order, coeffs)
    })
}

fn triple() -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
    prop::sample::select(vec![1usize, 3, 4, 5, 8, 12, 15])
        .prop_flat_map(|n| (cyclotomic(n), cyclotomic(n), cyclotomic(n)))
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), CyclotomicNumber::one());
        }
        let (x, y) = (a.to_complex(), b.to_complex());
        prop_assert!(close(a.mul(&b).to_complex(), (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism((a, b, _c) in triple()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
        let z = a.to_complex();
        prop_assert!(close(a.conj().to_complex(), (z.0, -z.1)));
    }

    #[test]
    fn d_powers_fold_consistently(k in -4i64..=4, d2 in prop::sample::select(vec![2u64, 3, 4, 5, 8, 12])) {
        let ctx = DSquared(d2);
        let x = ExactScalar::d_power(k);
        let y = x.mul(&ExactScalar::d_power(2)).mul(&ExactScalar::from_integer(1)).mul(&ExactScalar::d_power(-2));
        prop_assert!(x.eq_in(&y, ctx));
        let (re, im) = x.to_complex(ctx);
        prop_assert!(close((re, im), ((d2 as f64).sqrt().powi(k as i32), 0.0)));
    }

    #[test]
    fn render_parse_roundtrip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = GenConfig { max_surgery: 4, max_genus: 2, max_lk: 3 };
        let p = random_presentation(&mut rng, 0..=2, &cfg);
        prop_assert_eq!(parse(&render(&p)).unwrap(), p.clone());
        if let Some(s) = random_slides(&mut rng, &p, 5) {
            prop_assert_eq!(parse_script(&render_script(&s)).unwrap(), s);
        }
    }

    #[test]
    fn slides_preserve_everything(seed in any::<u64>(), theory in 0usize..5) {
        let t = builtin(builtin_names()[theory]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = GenConfig { max_surgery: 3, max_genus: 1, max_lk: 3 };
        let p = random_presentation(&mut rng, 0..=2, &cfg);
        if let Some(s) = random_slides(&mut rng, &p, 6) {
            let q = s.apply(&p).unwrap();
            prop_assert_eq!(signature(&q), signature(&p));
            prop_assert_eq!(first_homology(&q), first_homology(&p));
            for colors in all_colorings(&t, &p) {
                let c = ColorVector(colors);
                prop_assert!(t.evaluate(&q, &c).unwrap().eq_in(&t.evaluate(&p, &c).unwrap(), t.d_squared()));
            }
        }
    }

    #[test]
    fn blow_up_scales_by_anomaly(seed in any::<u64>(), theory in 0usize..5, positive in any::<bool>()) {
        let t = builtin(builtin_names()[theory]).unwrap();
        let s = if positive { 1 } else { -1 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(&mut rng, 0..=1, &GenConfig::default());
        let q = p.blow_up(s).unwrap();
        prop_assert_eq!(signature(&q), signature(&p) + s);
        let g = t.gauss_milgram().pow(s).unwrap();
        for colors in all_colorings(&t, &p) {
            let c = ColorVector(colors);
            let lhs = t.evaluate(&q, &c).unwrap();
            prop_assert!(lhs.eq_in(&g.mul(&t.evaluate(&p, &c).unwrap()), t.d_squared()));
        }
    }
}
