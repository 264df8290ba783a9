use scheme_kit::equivalence::{schemes_equivalent, CheckOptions, ConditionStatus, Outcome};
use scheme_kit::fixtures::{
    build_da_scheme, build_tangency_fixture, corpus, da_certificate, point_label, DaParams, FixtureError,
    TangencyParams,
};
use scheme_kit::free_group::column_matrix;
use scheme_kit::mat2::Mat2;
use scheme_kit::scheme::{serialize_scheme, validate_scheme, AttractorKind, Certificate, Scheme};

fn opts() -> CheckOptions<f64> {
    CheckOptions::default()
}

#[test]
fn da_cat_map() {
    let a = Mat2::new(2, 1, 1, 1);
    let s: Scheme<f64> = build_da_scheme(&DaParams::new(a)).unwrap();
    assert!(validate_scheme(&s).is_empty());
    let rec = &s.attractors[0];
    assert_eq!(rec.rank, 2);
    assert_eq!(column_matrix(&rec.automorphism), Some(a));
    assert_eq!(rec.boundary_points.len(), 2);
    assert_eq!(rec.bunches.len(), 1);
    assert_eq!(rec.bunches[0].degree, 2);
}

#[test]
fn abelianization_matches_matrix() {
    for a in [
        Mat2::new(2, 1, 1, 1),
        Mat2::new(3, 1, 2, 1),
        Mat2::new(-2, -1, -1, -1),
        Mat2::new(1, 1, 1, 2),
        Mat2::new(5, 2, 2, 1),
        Mat2::new(0, 1, -1, 3),
    ] {
        let s: Scheme<f64> = build_da_scheme(&DaParams::new(a)).unwrap();
        assert!(validate_scheme(&s).is_empty(), "{a:?}");
        assert_eq!(column_matrix(&s.attractors[0].automorphism), Some(a));
    }
}

#[test]
fn rejects_bad_matrices() {
    let r = build_da_scheme::<f64>(&DaParams::new(Mat2::new(1, 1, 0, 1)));
    assert_eq!(r.unwrap_err(), FixtureError::NonHyperbolic(2));
    let r = build_da_scheme::<f64>(&DaParams::new(Mat2::new(2, 1, 1, 2)));
    assert_eq!(r.unwrap_err(), FixtureError::Determinant(3));
    let r = build_da_scheme::<f64>(&DaParams::new(Mat2::new(0, -1, 1, 0)));
    assert!(matches!(r, Err(FixtureError::NonHyperbolic(0))));
}

#[test]
fn da_conjugate_pipeline() {
    let a = Mat2::new(2, 1, 1, 1);
    let p = Mat2::new(1, 1, 0, 1);
    let a2 = p.checked_mul(&a).unwrap().checked_mul(&p.inverse().unwrap()).unwrap();
    assert_eq!(a2, Mat2::new(3, -1, 1, 0));
    let s1: Scheme<f64> = build_da_scheme(&DaParams::new(a)).unwrap();
    let s2: Scheme<f64> = build_da_scheme(&DaParams { basis: p, ..DaParams::new(a2) }).unwrap();
    let cert = da_certificate(&s1, &s2, p).unwrap();
    let v = schemes_equivalent(&s1, &s2, Some(&cert), &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Equivalent, "{}", v.to_text());
}

#[test]
fn da_repeller_uses_unstable_boundary() {
    let s: Scheme<f64> = build_da_scheme(&DaParams {
        kind: AttractorKind::Repeller,
        with_facts: true,
        ..DaParams::new(Mat2::new(1, 1, 1, 2))
    })
    .unwrap();
    assert!(validate_scheme(&s).is_empty());
    assert!(s.s_boundary.is_empty());
    assert_eq!(s.u_boundary.len(), 2);
}

#[test]
fn da_is_deterministic() {
    let p = DaParams {
        family: Some((0.5, 2.0)),
        tau_seed: 1.5,
        with_facts: true,
        ..DaParams::new(Mat2::new(3, 1, 2, 1))
    };
    let a = serialize_scheme(&build_da_scheme::<f64>(&p).unwrap());
    let b = serialize_scheme(&build_da_scheme::<f64>(&p).unwrap());
    assert_eq!(a, b);
}

#[test]
fn k_f_follows_trace() {
    let s: Scheme<f64> = build_da_scheme(&DaParams::new(Mat2::new(2, 1, 1, 1))).unwrap();
    assert_eq!(s.k_f, 1);
    let s: Scheme<f64> = build_da_scheme(&DaParams::new(Mat2::new(-2, -1, -1, -1))).unwrap();
    assert_eq!(s.k_f, 2);
}

fn taus(s: &Scheme<f64>) -> Vec<f64> {
    s.points().map(|(_, p)| p.tau).collect()
}

#[test]
fn tangency_flat_pattern() {
    let s = build_tangency_fixture(&TangencyParams::new(2, 1, 0.5, 2.0)).unwrap();
    assert_eq!(taus(&s), vec![1.0, 1.0]);
    let v = schemes_equivalent(&s, &s, Some(&Certificate::identity(&s)), &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Equivalent);
}

#[test]
fn tangency_pattern_zero_three() {
    let s = build_tangency_fixture(&TangencyParams {
        windings: vec![0, 3],
        ..TangencyParams::new(2, 1, 0.5, 2.0)
    })
    .unwrap();
    assert_eq!(taus(&s), vec![1.0, 1.0 / 64.0]);
    assert_eq!(s.winding(&point_label(0, 0), &point_label(0, 1)), Some(-3));
    assert!(validate_scheme(&s).is_empty());
}

#[test]
fn tangency_perturbed_fails_4a() {
    let s = build_tangency_fixture(&TangencyParams {
        windings: vec![0, 3],
        ..TangencyParams::new(2, 1, 0.5, 2.0)
    })
    .unwrap();
    let mut t = s.clone();
    t.tangencies[0].points[1].tau *= 1.001;
    let v = schemes_equivalent(&s, &t, Some(&Certificate::identity(&s)), &opts()).unwrap();
    assert_eq!(v.status("4a"), Some(ConditionStatus::Fail));
    assert_eq!(v.outcome, Outcome::NotEquivalent);
}

#[test]
fn tangency_rejects_bad_parameters() {
    assert!(build_tangency_fixture(&TangencyParams::new(2, 3, 0.5, 2.0)).is_err());
    assert!(build_tangency_fixture(&TangencyParams::new(0, 1, 0.5, 2.0)).is_err());
    assert!(build_tangency_fixture(&TangencyParams::new(2, 1, 1.5, 2.0)).is_err());
}

#[test]
fn corpus_is_large_valid_and_unique() {
    let c = corpus();
    assert!(c.len() >= 10);
    let mut names: Vec<_> = c.iter().map(|(n, _)| *n).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), c.len());
    for (name, s) in &c {
        assert!(validate_scheme(s).is_empty(), "{name}");
    }
}

#[test]
fn fixtures_in_f32() {
    let s: Scheme<f32> = build_tangency_fixture(&TangencyParams::new(3, 2, 0.5f32, 3.0)).unwrap();
    assert!(validate_scheme(&s).is_empty());
    let v = schemes_equivalent(
        &s,
        &s,
        Some(&Certificate::identity(&s)),
        &CheckOptions { tol: 1e-5f32, ..CheckOptions::default() },
    )
    .unwrap();
    assert_eq!(v.outcome, Outcome::Equivalent);
}
