//! Deterministic fixture schemes and the corpus used by the test suites.

mod da;
mod figures;
mod tangency;
mod transform;

use thiserror::Error;

use crate::free_group::Word;
use crate::mat2::Mat2;
use crate::scheme::{AttractorKind, Certificate, Scheme};

pub use da::{build_da_scheme, da_certificate, DaParams};
pub use figures::{criteria_violation, non_separable_torus, separable_torus};
pub use tangency::{build_tangency_fixture, point_label, TangencyParams};
pub use transform::{transform_scheme, Transform};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("matrix with trace {0} is not hyperbolic (|trace| ≤ 2)")]
    NonHyperbolic(i64),
    #[error("determinant {0} not allowed")]
    Determinant(i64),
    #[error("{0}")]
    Parameter(String),
}

/// Two components swapped by the induced map, with a tangency family whose
/// points sit in both.
pub fn swapped_pair() -> Scheme<f64> {
    let mut s = build_tangency_fixture(&TangencyParams {
        windings: vec![0, 1, 2, -1],
        ..TangencyParams::new(4, 2, 0.5, 3.0)
    })
    .expect("valid parameters");
    s.components[0].image = "T1".into();
    s.components[0].action = Mat2::new(0, 1, -1, 0);
    s.components[1].image = "T0".into();
    s.components[1].action = Mat2::new(0, -1, 1, 0);
    s
}

/// Named fixtures covering every section of the format.
pub fn corpus() -> Vec<(&'static str, Scheme<f64>)> {
    let cat = Mat2::new(2, 1, 1, 1);
    let shear = Mat2::new(1, 1, 0, 1);
    let da = |m: Mat2, f: &dyn Fn(&mut DaParams<f64>)| {
        let mut p = DaParams::new(m);
        f(&mut p);
        build_da_scheme(&p).expect("valid parameters")
    };
    let tangency = |p: TangencyParams<f64>| build_tangency_fixture(&p).expect("valid parameters");
    vec![
        ("da_cat", da(cat, &|_| {})),
        (
            "da_cat_conjugated",
            da(shear * cat * shear.inverse().unwrap(), &|p| p.basis = shear),
        ),
        ("da_trace4", da(Mat2::new(3, 1, 2, 1), &|_| {})),
        ("da_negative_trace", da(Mat2::new(-2, -1, -1, -1), &|_| {})),
        (
            "da_with_family",
            da(cat, &|p| {
                p.family = Some((0.5, 2.0));
                p.tau_seed = 1.5;
                p.with_facts = true;
            }),
        ),
        (
            "da_repeller",
            da(Mat2::new(1, 1, 1, 2), &|p| {
                p.kind = AttractorKind::Repeller;
                p.with_facts = true;
            }),
        ),
        (
            "tangency_one_torus",
            tangency(TangencyParams {
                windings: vec![0, 3],
                ..TangencyParams::new(2, 1, 0.5, 2.0)
            }),
        ),
        ("tangency_two_tori", tangency(TangencyParams::new(2, 2, 0.5, 2.0))),
        (
            "tangency_three_families",
            tangency(TangencyParams {
                windings: vec![0, 2, -1, 1],
                families: 3,
                tau_seed: 0.7,
                ..TangencyParams::new(4, 2, 0.25, 3.0)
            }),
        ),
        ("swapped_pair", swapped_pair()),
        ("separable_torus", separable_torus()),
        ("non_separable_torus", non_separable_torus()),
    ]
}

/// A deterministic transform of `s` exercising every certificate part:
/// basis changes, eigenvalue power 2, shifted points and Nielsen
/// automorphisms with a lift twist.
pub fn standard_transform(s: &Scheme<f64>, prefix: &str, variant: i64) -> Transform {
    let basis = s
        .components
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let p = match (j as i64 + variant) % 3 {
                0 => Mat2::new(1, 1, 0, 1),
                1 => Mat2::new(0, -1, 1, 0),
                _ => Mat2::new(2, 1, 1, 1),
            };
            (c.id.clone(), p)
        })
        .collect();
    let shifts = s
        .points()
        .enumerate()
        .map(|(i, (_, p))| (p.id.clone(), (i as i64 * (variant + 1)) % 3 - 1))
        .collect();
    let automorphisms = s
        .attractors
        .iter()
        .filter(|a| a.rank == 2)
        .map(|a| (a.id.clone(), if variant % 2 == 0 { Mat2::new(0, 1, 1, 0) } else { Mat2::new(1, -1, 0, 1) }))
        .collect();
    let twists = s
        .attractors
        .iter()
        .map(|a| (a.id.clone(), Word::power_of(0, variant as i32 + 1)))
        .collect();
    Transform {
        prefix: prefix.to_string(),
        basis,
        eigen_power: 2,
        shifts,
        automorphisms,
        twists,
        reverse: variant % 2 == 0,
    }
}

/// `(scheme, certificate)` pairs for a chain `s → t1 → t2` built with two
/// standard transforms.
pub fn transform_chain(s: &Scheme<f64>) -> (Scheme<f64>, Certificate, Scheme<f64>, Certificate) {
    let (t1, c1) = transform_scheme(s, &standard_transform(s, "x.", 0)).expect("valid transform");
    let (t2, c2) = transform_scheme(&t1, &standard_transform(&t1, "y.", 1)).expect("valid transform");
    (t1, c1, t2, c2)
}
