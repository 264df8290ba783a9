//! Property tests. `SCHEME_KIT_SEED` fixes the generator seed; without it
//! a constant seed is used so runs are reproducible.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use scheme_kit::equivalence::{invert_certificate, verify_certificate, CheckOptions, Outcome};
use scheme_kit::fixtures::{build_tangency_fixture, standard_transform, transform_scheme, TangencyParams};
use scheme_kit::free_group::{column_matrix, nielsen_lift, Word};
use scheme_kit::mat2::Mat2;
use scheme_kit::scheme::{parse_scheme, serialize_scheme, validate_scheme, Scheme};

fn runner(cases: u32) -> TestRunner {
    let seed: u64 = std::env::var("SCHEME_KIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed);
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::from_seed(RngAlgorithm::ChaCha, &bytes),
    )
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0u32..3, prop::bool::ANY), 0..12)
        .prop_map(|v| Word::from_letters(v.into_iter().map(|(g, p)| (g, if p { 1 } else { -1 }))))
}

fn unimodular() -> impl Strategy<Value = Mat2> {
    let gens = [
        Mat2::new(1, 1, 0, 1),
        Mat2::new(1, 0, 1, 1),
        Mat2::new(0, 1, -1, 0),
        Mat2::new(0, 1, 1, 0),
    ];
    prop::collection::vec(0..gens.len(), 0..6).prop_map(move |ix| {
        ix.into_iter()
            .fold(Mat2::IDENTITY, |m, i| m.checked_mul(&gens[i]).unwrap())
    })
}

#[test]
fn word_group_laws() {
    runner(256)
        .run(&(word(), word(), word()), |(a, b, c)| {
            prop_assert!(a.mul(&a.inverse()).is_identity());
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b).inverse(), b.inverse().mul(&a.inverse()));
            Ok(())
        })
        .unwrap();
}

#[test]
fn nielsen_lift_is_exact() {
    runner(128)
        .run(&(unimodular(), word()), |(p, w)| {
            let (psi, psi_inv) = nielsen_lift(p).unwrap();
            prop_assert_eq!(column_matrix(&psi), Some(p));
            let w = Word::from_letters(w.letters().into_iter().map(|(g, e)| (g % 2, e)));
            prop_assert_eq!(psi.apply(&psi_inv.apply(&w)), w.clone());
            prop_assert_eq!(psi_inv.apply(&psi.apply(&w)), w);
            Ok(())
        })
        .unwrap();
}

fn tangency() -> impl Strategy<Value = Scheme<f64>> {
    (1usize..4, 1usize..3, 1usize..3, 0.1f64..0.9, 1.1f64..5.0, 0.2f64..4.0, prop::collection::vec(-3i64..4, 0..4))
        .prop_map(|(n, comps, fams, l, m, seed, windings)| {
            build_tangency_fixture(&TangencyParams {
                tau_seed: seed,
                windings,
                families: fams,
                ..TangencyParams::new(n, comps, l, m)
            })
            .unwrap()
        })
}

#[test]
fn generated_fixtures_validate_and_round_trip() {
    runner(64)
        .run(&tangency(), |s| {
            prop_assert!(validate_scheme(&s).is_empty());
            let text = serialize_scheme(&s);
            let back: Scheme<f64> = parse_scheme(&text).unwrap();
            prop_assert_eq!(serialize_scheme(&back), text);
            prop_assert_eq!(back, s);
            Ok(())
        })
        .unwrap();
}

#[test]
fn transforms_are_witnessed_both_ways() {
    runner(64)
        .run(&(tangency(), 0i64..6), |(s, variant)| {
            let (t, cert) = transform_scheme(&s, &standard_transform(&s, "x.", variant)).unwrap();
            prop_assert!(validate_scheme(&t).is_empty());
            let opts = CheckOptions::default();
            let (v, _) = verify_certificate(&s, &t, &cert, &opts);
            prop_assert_eq!(v.outcome, Outcome::Equivalent, "{}", v.to_text());
            let (v, _) = verify_certificate(&t, &s, &invert_certificate(&cert).unwrap(), &opts);
            prop_assert_eq!(v.outcome, Outcome::Equivalent, "{}", v.to_text());
            Ok(())
        })
        .unwrap();
}
