//! Polynomial transition maps between saddle charts, the modulus `τ` and
//! the contact order of tangencies.

use serde::{Deserialize, Serialize};

use crate::scalar::{Coefficient, Real};
use crate::textnum::lit_pair;

use super::chart::SaddleChart;
use super::poly::{Poly1, Poly2};
use super::ModuliError;

/// `g(x, y) = (ξ(x, y), η(x, y))` from the chart of the saddle whose stable
/// manifold carries the tangency (`source`) to the chart of the saddle whose
/// unstable manifold carries it (`target`). `a_s` is the tangency point in
/// source coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coefficient", deserialize = "C: Coefficient"))]
pub struct TransitionMap<C> {
    pub id: String,
    pub source: String,
    pub target: String,
    pub xi: Poly2<C>,
    pub eta: Poly2<C>,
    #[serde(with = "lit_pair")]
    pub a_s: [C; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOptions<R> {
    /// The initial step is `step * (1 + |a_x|)`.
    pub step: R,
    /// Allowed relative disagreement between the symbolic and the
    /// extrapolated finite-difference derivative.
    pub tol: R,
}

impl<R: Real> Default for FdOptions<R> {
    fn default() -> Self {
        FdOptions {
            step: R::lit(1e-4),
            tol: R::lit(1e-6),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauEstimate<R> {
    pub symbolic: R,
    pub finite_difference: R,
    /// `|symbolic - finite_difference|` over the larger of `|symbolic|`
    /// and the cancellation-free size of `∂η/∂x` at `a^s`.
    pub relative_error: R,
}

/// Contact data of the image of the stable manifold: near `a^u` it is the
/// graph `y = Q (x - a_x^u)^n + ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangencyOrder<C> {
    pub order: u32,
    pub coefficient: C,
}

impl<C> TangencyOrder<C> {
    /// Even contact keeps the curve on one side of the unstable manifold.
    pub fn one_sided(&self) -> bool {
        self.order.is_multiple_of(2)
    }
}

impl<C: Coefficient> TransitionMap<C> {
    /// `∂η/∂x(a^s)`, exactly in the coefficient ring.
    pub fn tau_exact(&self) -> Result<C, ModuliError> {
        let [ax, ay] = &self.a_s;
        let tau = self.eta.d_dx().eval_exact(ax, ay);
        if tau.negligible(&self.eta.scale()) {
            return Err(ModuliError::DegenerateModulus {
                transition: self.id.clone(),
            });
        }
        Ok(tau)
    }

    /// Image `g(a^s)` in target coordinates, evaluated in `R`.
    pub fn image_of_point<R: Real>(&self) -> [R; 2] {
        let ax = self.a_s[0].to_real::<R>();
        let ay = self.a_s[1].to_real::<R>();
        [self.xi.eval(ax, ay), self.eta.eval(ax, ay)]
    }

    /// The same map expressed at the `k`-th iterate of the tangency point:
    /// `F_t^k ∘ g ∘ F_s^{-k}`, where `F` is the linear model of each chart.
    pub fn transported(
        &self,
        source: &SaddleChart<C>,
        target: &SaddleChart<C>,
        k: i32,
    ) -> TransitionMap<C> {
        let inv_mu = powi(&source.mu, -k);
        let inv_lambda = powi(&source.lambda, -k);
        let rescale = |p: &Poly2<C>, outer: C| {
            p.map_terms(|i, j, c| {
                c.clone()
                    * outer.clone()
                    * powi(&inv_mu, i as i32)
                    * powi(&inv_lambda, j as i32)
            })
        };
        TransitionMap {
            id: self.id.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            xi: rescale(&self.xi, powi(&target.mu, k)),
            eta: rescale(&self.eta, powi(&target.lambda, k)),
            a_s: [
                self.a_s[0].clone() * powi(&source.mu, k),
                self.a_s[1].clone() * powi(&source.lambda, k),
            ],
        }
    }
}

fn powi<C: Coefficient>(base: &C, n: i32) -> C {
    let mut acc = C::one();
    for _ in 0..n.unsigned_abs() {
        acc = acc * base.clone();
    }
    if n < 0 {
        C::one() / acc
    } else {
        acc
    }
}

/// Central difference quotient of `f` at `x` with step `h`, refined by two
/// levels of Richardson extrapolation (steps `h`, `h/2`, `h/4`).
pub fn richardson_derivative<R: Real>(f: impl Fn(R) -> R, x: R, h: R) -> R {
    let two = R::lit(2.0);
    let d = |h: R| (f(x + h) - f(x - h)) / (two * h);
    let (d0, d1, d2) = (d(h), d(h / two), d(h / R::lit(4.0)));
    let three = R::lit(3.0);
    let r0 = (R::lit(4.0) * d1 - d0) / three;
    let r1 = (R::lit(4.0) * d2 - d1) / three;
    (R::lit(16.0) * r1 - r0) / R::lit(15.0)
}

/// `τ = ∂η/∂x(a^s)`, with a finite-difference self-check.
///
/// Fails with [`ModuliError::DegenerateModulus`] when `τ = 0` and with
/// [`ModuliError::FiniteDifferenceMismatch`] when the extrapolated
/// difference quotient disagrees beyond `opts.tol`.
pub fn tau_at_tangency<C: Coefficient, R: Real>(
    g: &TransitionMap<C>,
    opts: &FdOptions<R>,
) -> Result<TauEstimate<R>, ModuliError> {
    let symbolic = g.tau_exact()?.to_real::<R>();
    let ax = g.a_s[0].to_real::<R>();
    let ay = g.a_s[1].to_real::<R>();
    let h = opts.step * (R::one() + ax.abs());
    let fd = richardson_derivative(|x| g.eta.eval(x, ay), ax, h);
    let scale = symbolic.abs().max(g.eta.dx_magnitude(ax, ay));
    let relative_error = (symbolic - fd).abs() / scale;
    // also rejects NaN
    if relative_error.is_nan() || relative_error > opts.tol {
        return Err(ModuliError::FiniteDifferenceMismatch {
            transition: g.id.clone(),
            symbolic: symbolic.to_text(),
            numeric: fd.to_text(),
        });
    }
    Ok(TauEstimate {
        symbolic,
        finite_difference: fd,
        relative_error,
    })
}

/// Least `n ≥ 1` with a non-vanishing `n`-th Taylor coefficient of `q` at
/// `x0`, and that coefficient `q^{(n)}(x0)/n!`. The constant term is
/// ignored.
pub fn contact_order<C: Coefficient>(q: &Poly1<C>, x0: &C) -> Result<TangencyOrder<C>, ModuliError> {
    let scale = q.scale();
    q.taylor_at(x0)
        .into_iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| !c.negligible(&scale))
        .map(|(n, c)| TangencyOrder {
            order: n as u32,
            coefficient: c,
        })
        .ok_or(ModuliError::NoFiniteOrder {
            transition: String::new(),
        })
}

/// Contact order of the image of the stable manifold with the unstable
/// axis of the target chart.
///
/// The stable manifold of the source saddle is the vertical line through
/// `a^s`, so its image is parametrized by `t ↦ g(a_x^s, t)`. Writing that
/// curve as a graph over the unstable axis near `a^u = g(a^s)`:
/// `n` is the order of vanishing of `η(a_x^s, t) - η(a^s)` at `t = a_y^s`
/// and `Q = η_t^{(n)} / (n! ξ_t^n)`.
pub fn tangency_order<C: Coefficient>(g: &TransitionMap<C>) -> Result<TangencyOrder<C>, ModuliError> {
    let [ax, ay] = &g.a_s;
    let xi_t = g.xi.restrict_x(ax).derivative().eval_exact(ay);
    if xi_t.negligible(&g.xi.scale()) {
        return Err(ModuliError::DegenerateParametrization {
            transition: g.id.clone(),
        });
    }
    let eta_line = g.eta.restrict_x(ax);
    let found = contact_order(&eta_line, ay).map_err(|_| ModuliError::NoFiniteOrder {
        transition: g.id.clone(),
    })?;
    let mut denom = C::one();
    for _ in 0..found.order {
        denom = denom * xi_t.clone();
    }
    Ok(TangencyOrder {
        order: found.order,
        coefficient: found.coefficient / denom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(s: &str) -> BigRational {
        BigRational::parse_literal(s).unwrap()
    }

    fn poly(rows: &[&[&str]]) -> Poly2<BigRational> {
        Poly2::new(rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect())
    }

    fn map(eta: Poly2<BigRational>, a: [&str; 2]) -> TransitionMap<BigRational> {
        TransitionMap {
            id: "g".into(),
            source: "s".into(),
            target: "u".into(),
            xi: Poly2::coordinate(false),
            eta,
            a_s: [q(a[0]), q(a[1])],
        }
    }

    #[test]
    fn tau_of_cubic() {
        // 3x + y^2 + x^3
        let g = map(poly(&[&["0", "0", "1"], &["3"], &[], &["1"]]), ["0", "0"]);
        let est = tau_at_tangency::<_, f64>(&g, &FdOptions::default()).unwrap();
        assert_eq!(est.symbolic, 3.0);
        assert!(est.relative_error < 1e-9);
    }

    #[test]
    fn tau_vanishes() {
        let g = map(Poly2::coordinate(false), ["0.3", "-2"]);
        assert!(matches!(
            tau_at_tangency::<_, f64>(&g, &FdOptions::default()),
            Err(ModuliError::DegenerateModulus { .. })
        ));
    }

    #[test]
    fn direct_contact_orders() {
        let quad = Poly1::new(vec![q("0"), q("0"), q("5"), q("1")]);
        let r = contact_order(&quad, &q("0")).unwrap();
        assert_eq!((r.order, r.coefficient.clone()), (2, q("5")));
        assert!(r.one_sided());
        let cubic = Poly1::new(vec![q("0"), q("0"), q("0"), q("1")]);
        let r = contact_order(&cubic, &q("0")).unwrap();
        assert_eq!((r.order, r.coefficient.clone()), (3, q("1")));
        assert!(!r.one_sided());
        assert!(contact_order(&Poly1::new(vec![q("2")]), &q("0")).is_err());
    }

    #[test]
    fn order_along_stable_line() {
        // ξ = y, η = x + 5 (y - 1)^2 ; a^s = (0, 1)
        let eta = poly(&[&["5", "-10", "5"], &["1"]]);
        let g = map(eta, ["0", "1"]);
        let r = tangency_order(&g).unwrap();
        assert_eq!(r.order, 2);
        assert_eq!(r.coefficient, q("5"));
    }

    #[test]
    fn order_rescaled_by_parametrization() {
        // ξ = 2y, η = x + y^3 ; a^s = (0, 0): y = (x/2)^3
        let mut g = map(poly(&[&["0", "0", "0", "1"], &["1"]]), ["0", "0"]);
        g.xi = poly(&[&["0", "2"]]);
        let r = tangency_order(&g).unwrap();
        assert_eq!((r.order, r.coefficient), (3, q("1/8")));
    }

    #[test]
    fn order_errors() {
        let mut g = map(poly(&[&[], &["1"]]), ["0", "0"]);
        assert!(matches!(tangency_order(&g), Err(ModuliError::NoFiniteOrder { .. })));
        g.xi = Poly2::coordinate(true);
        assert!(matches!(
            tangency_order(&g),
            Err(ModuliError::DegenerateParametrization { .. })
        ));
    }

    #[test]
    fn transport_scales_tau() {
        let g = map(poly(&[&["0", "1", "1"], &["3", "1"], &["2"]]), ["1/3", "1/2"]);
        let s = SaddleChart { saddle: "s".into(), period: 1, mu: q("3"), lambda: q("1/2") };
        let u = SaddleChart { saddle: "u".into(), period: 1, mu: q("2"), lambda: q("1/4") };
        let tau = g.tau_exact().unwrap();
        for k in -3..=3 {
            let moved = g.transported(&s, &u, k).tau_exact().unwrap();
            // |λ_u / μ_s|^k τ
            assert_eq!(moved, tau.clone() * powi(&(q("1/4") / q("3")), k));
        }
    }
}
