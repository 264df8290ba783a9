//! Acceptance criteria. Each one runs in isolation and prints a single
//! PASS/FAIL line; the process exits non-zero if any of them fails.
//! Built without the libtest harness so the lines always show.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scheme_kit::equivalence::{
    compose_certificates, invert_certificate, schemes_equivalent, CheckOptions, ConditionStatus, Outcome,
};
use scheme_kit::fixtures::{
    build_da_scheme, build_tangency_fixture, corpus, criteria_violation, da_certificate, non_separable_torus,
    separable_torus, transform_chain, DaParams, TangencyParams,
};
use scheme_kit::free_group::{nielsen_lift, verify_conjugacy, FreeGroupAut, Word};
use scheme_kit::mat2::Mat2;
use scheme_kit::moduli::{
    in_linear_domain, linear_saddle_apply, log_ratio, tau_at_tangency, tau_iterate, tau_pair_invariant,
    FdOptions, Poly2, SaddleChart, TransitionMap,
};
use scheme_kit::scheme::{parse_scheme, serialize_scheme, Certificate, Scheme};
use scheme_kit::separability::{check_finite_moduli_criteria, check_separable, Facts, Status};

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn within(start: Instant, limit: Duration, what: &str) {
    let t = start.elapsed();
    assert!(t < limit, "{what} took {t:?}, limit {limit:?}");
}

fn dyadic(rng: &mut ChaCha8Rng, span: i32) -> f64 {
    f64::from(rng.gen_range(-span..=span)) / 8.0
}

/// Random polynomial of total degree at most `deg`.
fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly2<f64> {
    Poly2::new(
        (0..=deg)
            .map(|i| (0..=deg - i).map(|_| dyadic(rng, 16)).collect())
            .collect(),
    )
}

fn random_chart(rng: &mut ChaCha8Rng, name: &str) -> SaddleChart<f64> {
    let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    SaddleChart {
        saddle: name.into(),
        period: 1,
        mu: sign(rng) * rng.gen_range(1.2..4.0),
        lambda: sign(rng) * rng.gen_range(0.2..0.9),
    }
}

/// Transition map with a modulus bounded away from cancellation:
/// `|τ|` is at least a thousandth of the size of its terms.
fn random_map(rng: &mut ChaCha8Rng, deg: usize) -> TransitionMap<f64> {
    loop {
        let g = TransitionMap {
            id: "g".into(),
            source: "s".into(),
            target: "u".into(),
            xi: random_poly(rng, deg),
            eta: random_poly(rng, deg),
            a_s: [dyadic(rng, 8), dyadic(rng, 8)],
        };
        let [ax, ay] = g.a_s;
        let tau = g.eta.d_dx().eval(ax, ay);
        if tau.abs() >= 1e-3 * g.eta.dx_magnitude(ax, ay).max(1.0) {
            return g;
        }
    }
}

fn scaling_law() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let g = random_map(&mut rng, 3);
        let (src, dst) = (random_chart(&mut rng, "s"), random_chart(&mut rng, "u"));
        let tau0 = g.tau_exact().unwrap();
        for k in -3..=3 {
            let tau_k = g.transported(&src, &dst, k).tau_exact().unwrap();
            let expected = tau_iterate(tau0, dst.lambda, src.mu, k);
            worst = worst.max(rel_err(tau_k.abs(), expected.abs()));
            // negative eigenvalues reverse the chart orientation
            let flip = (dst.lambda / src.mu).powi(k).signum();
            assert_eq!(tau_k.signum(), tau0.signum() * flip, "sign at k={k}");
        }
    }
    assert!(worst <= 1e-9, "worst relative error {worst:e}");
    within(start, Duration::from_secs(5), "scaling law");
}

fn finite_difference_self_check() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let opts = FdOptions::default();
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let deg = rng.gen_range(1..=4);
        let g = random_map(&mut rng, deg);
        let est = tau_at_tangency(&g, &opts).unwrap();
        worst = worst.max(rel_err(est.symbolic, est.finite_difference));
    }
    assert!(worst <= 1e-6, "worst relative error {worst:e}");
    within(start, Duration::from_secs(5), "finite differences");
}

fn invariance_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let lambda: f64 = rng.gen_range(0.2..0.9);
        let mu: f64 = rng.gen_range(1.2..4.0);
        let (t1, t2): (f64, f64) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        let lr = log_ratio(lambda, mu);
        let inv = tau_pair_invariant(t1, t2, mu);
        for n in 2..=4 {
            let (ln, mn) = (lambda.powi(n), mu.powi(n));
            assert!(rel_err(log_ratio(ln, mn), lr) <= 1e-12, "log ratio, n={n}");
            // moduli of the n-th power follow |τ| ↦ |τ|^n
            let moved = tau_pair_invariant(t1.powi(n), t2.powi(n), mn);
            assert!(rel_err(moved, inv) <= 1e-12, "pair invariant, n={n}");
        }
        for k in -3..=3 {
            let moved = tau_pair_invariant(
                tau_iterate(t1, lambda, mu, k),
                tau_iterate(t2, lambda, mu, k),
                mu,
            );
            assert!(rel_err(moved, inv) <= 1e-12, "pair invariant, k={k}");
        }
    }
    let mut flips = 0;
    for _ in 0..10_000 {
        let lambda: f64 = rng.gen_range(0.2..0.9) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let mu: f64 = rng.gen_range(1.2..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let p = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
        let t = rng.gen_range(0.1..3.0);
        let n = rng.gen_range(-3..=3);
        let q = linear_saddle_apply(mu, lambda, p, n).unwrap();
        if in_linear_domain(mu, lambda, p, t) != in_linear_domain(mu, lambda, q, t) {
            flips += 1;
        }
    }
    assert_eq!(flips, 0, "membership changed under the linear model");
}

fn axioms_on_corpus() {
    let start = Instant::now();
    let opts = CheckOptions::default();
    let c = corpus();
    assert!(c.len() >= 10, "corpus has {} fixtures", c.len());
    for (name, s) in &c {
        let v = schemes_equivalent(s, s, Some(&Certificate::identity(s)), &opts).unwrap();
        assert_eq!(v.outcome, Outcome::Equivalent, "{name}: reflexivity");
        let (t1, c1, t2, c2) = transform_chain(s);
        let v = schemes_equivalent(s, &t1, Some(&c1), &opts).unwrap();
        assert_eq!(v.outcome, Outcome::Equivalent, "{name}: witness {}", v.to_text());
        let inv = invert_certificate(&c1).unwrap();
        let v = schemes_equivalent(&t1, s, Some(&inv), &opts).unwrap();
        assert_eq!(v.outcome, Outcome::Equivalent, "{name}: symmetry {}", v.to_text());
        let comp = compose_certificates(&c1, &c2).unwrap();
        let v = schemes_equivalent(s, &t2, Some(&comp), &opts).unwrap();
        assert_eq!(v.outcome, Outcome::Equivalent, "{name}: transitivity {}", v.to_text());
    }
    within(start, Duration::from_secs(10), "axioms");
}

fn classification_sensitivity() {
    let opts = CheckOptions::<f64> {
        matrix_bound: 10,
        m_bound: 64,
        ..CheckOptions::default()
    };
    let a = Mat2::new(2, 1, 1, 1);
    let p = Mat2::new(1, 1, 0, 1);
    let a2 = p.checked_mul(&a).unwrap().checked_mul(&p.inverse().unwrap()).unwrap();
    let s1: Scheme<f64> = build_da_scheme(&DaParams::new(a)).unwrap();
    let s2: Scheme<f64> = build_da_scheme(&DaParams { basis: p, ..DaParams::new(a2) }).unwrap();
    let cert = da_certificate(&s1, &s2, p).unwrap();
    let v = schemes_equivalent(&s1, &s2, Some(&cert), &opts).unwrap();
    assert_eq!(v.outcome, Outcome::Equivalent, "{}", v.to_text());

    let t4: Scheme<f64> = build_da_scheme(&DaParams::new(Mat2::new(3, 1, 2, 1))).unwrap();
    let v = schemes_equivalent(&s1, &t4, None, &opts).unwrap();
    assert_eq!(v.outcome, Outcome::NotEquivalent);
    assert_eq!(v.status("1"), Some(ConditionStatus::Fail));

    // |λ/μ| = 1/4 and no power of 4 equals 3
    let s: Scheme<f64> = build_tangency_fixture(&TangencyParams::new(2, 2, 0.5, 2.0)).unwrap();
    let mut t = s.clone();
    t.tangencies[0].points[1].tau *= 3.0;
    let mut cert = Certificate::identity(&s);
    cert.m_values.clear();
    let v = schemes_equivalent(&s, &t, Some(&cert), &opts).unwrap();
    assert_eq!(v.status("4b"), Some(ConditionStatus::Fail));
    let diag = &v.condition("4b").unwrap().diagnostics;
    assert!(diag.iter().any(|d| d.contains("no m in bound")), "{diag:?}");
    let v = schemes_equivalent(&s, &t, None, &opts).unwrap();
    assert_eq!(v.outcome, Outcome::NotEquivalent);
    assert_eq!(v.status("4b"), Some(ConditionStatus::Fail));
}

fn all_words(max_len: usize) -> Vec<Word> {
    let letters = [(0u32, 1i8), (0, -1), (1, 1), (1, -1)];
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<(u32, i8)>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last().is_some_and(|&(g, e)| g == l.0 && e == -l.1) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(Word::from_letters).collect()
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Mat2 {
    let gens = [
        Mat2::new(1, 1, 0, 1),
        Mat2::new(1, 0, 1, 1),
        Mat2::new(0, 1, 1, 0),
        Mat2::new(1, -1, 0, 1),
        Mat2::new(-1, 0, 0, 1),
    ];
    let mut m = Mat2::IDENTITY;
    for _ in 0..rng.gen_range(1..5) {
        m = m.checked_mul(&gens[rng.gen_range(0..gens.len())]).unwrap();
    }
    m
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| (rng.gen_range(0..2u32), if rng.gen_bool(0.5) { 1i8 } else { -1 })))
}

fn free_group_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let words = all_words(6);
    assert_eq!(words.len(), 1 + 4 + 12 + 36 + 108 + 324 + 972);
    let (mut yes, mut no) = (0, 0);
    for i in 0..50 {
        let (t, _) = nielsen_lift(random_unimodular(&mut rng)).unwrap();
        let t = t.twisted(&random_word(&mut rng, 2));
        let (psi, mut psi_inv) = nielsen_lift(random_unimodular(&mut rng)).unwrap();
        let mut t_prime = psi.compose(&t).unwrap().compose(&psi_inv).unwrap();
        match i % 4 {
            0 => {}
            1 => t_prime = t_prime.twisted(&random_word(&mut rng, 3)),
            2 => {
                let (other, _) = nielsen_lift(random_unimodular(&mut rng)).unwrap();
                psi_inv = psi_inv.compose(&other).unwrap();
            }
            _ => {
                let imgs = t_prime.images().to_vec();
                t_prime = FreeGroupAut::new(vec![imgs[1].clone(), imgs[0].clone()]).unwrap();
            }
        }
        let claimed = verify_conjugacy(&t, &t_prime, &psi, &psi_inv).unwrap();
        let brute = words.iter().all(|w| {
            psi.apply(&t.apply(&psi_inv.apply(w))) == t_prime.apply(w)
                && psi.apply(&psi_inv.apply(w)) == *w
                && psi_inv.apply(&psi.apply(w)) == *w
        });
        assert_eq!(claimed, brute, "pair {i}");
        if brute {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes >= 10 && no >= 10, "unbalanced sample: {yes} conjugate, {no} not");
    within(start, Duration::from_secs(30), "free-group oracle");
}

fn separability_fixtures() {
    let s = separable_torus();
    let r = check_separable(&s.attractors[0], s.facts.as_ref().unwrap());
    assert_eq!(r.status, Status::Pass, "{r:?}");
    let s = non_separable_torus();
    let r = check_separable(&s.attractors[0], s.facts.as_ref().unwrap());
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.failed(), vec![2]);
    for clause in 1..=5 {
        let r = check_finite_moduli_criteria(&criteria_violation(clause));
        assert_eq!(r.failed(), vec![clause], "clause {clause}");
    }
}

fn round_trip() {
    for (name, s) in corpus() {
        let text = serialize_scheme(&s);
        let back: Scheme<f64> = parse_scheme(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(back, s, "{name}");
        assert_eq!(serialize_scheme(&back), text, "{name}: bytes changed");
        assert_eq!(serialize_scheme(&s), text, "{name}: not stable");
        let (_, c1, _, _) = transform_chain(&s);
        let ct = c1.to_text();
        let cb = Certificate::parse(&ct).unwrap();
        assert_eq!(cb, c1, "{name}: certificate");
        assert_eq!(cb.to_text(), ct, "{name}: certificate bytes");
        if let Some(f) = &s.facts {
            assert_eq!(&Facts::parse(&f.to_text()).unwrap(), f, "{name}: facts");
        }
    }
}

fn main() -> std::process::ExitCode {
    let criteria: [(&str, fn()); 8] = [
        ("1 scaling law", scaling_law),
        ("2 finite-difference self-check", finite_difference_self_check),
        ("3 invariance suite", invariance_suite),
        ("4 equivalence axioms on corpus", axioms_on_corpus),
        ("5 classification sensitivity", classification_sensitivity),
        ("6 free-group oracle", free_group_oracle),
        ("7 separability fixtures", separability_fixtures),
        ("8 file-format round trip", round_trip),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        println!(
            "criterion {name}: {} ({:.2?})",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed()
        );
        if !ok {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
