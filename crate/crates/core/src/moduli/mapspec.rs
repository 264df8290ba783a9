//! Numeric description of a diffeomorphism near its saddles: linear charts
//! plus polynomial transition maps between them.

use serde::{Deserialize, Serialize};

use crate::scalar::{Coefficient, Real};
use crate::textnum::{lit, Lit};

use super::chart::{check_eigenvalues, SaddleChart};
use super::invariants::log_ratio;
use super::transition::{tangency_order, tau_at_tangency, FdOptions, TransitionMap};
use super::ModuliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coefficient", deserialize = "C: Coefficient"))]
pub struct ChartSpec<C> {
    pub saddle: String,
    pub period: u32,
    #[serde(with = "lit")]
    pub mu: C,
    #[serde(with = "lit")]
    pub lambda: C,
}

impl<C: Coefficient> ChartSpec<C> {
    pub fn chart(&self) -> SaddleChart<C> {
        SaddleChart {
            saddle: self.saddle.clone(),
            period: self.period,
            mu: self.mu.clone(),
            lambda: self.lambda.clone(),
        }
    }

    pub fn real_chart<R: Real>(&self) -> SaddleChart<R> {
        SaddleChart {
            saddle: self.saddle.clone(),
            period: self.period,
            mu: self.mu.to_real(),
            lambda: self.lambda.to_real(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coefficient", deserialize = "C: Coefficient"))]
pub struct TangencySpec<C> {
    pub transition: String,
    /// Expected location `a^u = g(a^s)` in target coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<[Lit<C>; 2]>,
    pub one_sided: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coefficient", deserialize = "C: Coefficient"))]
pub struct MapSpec<C> {
    pub saddles: Vec<ChartSpec<C>>,
    pub transitions: Vec<TransitionMap<C>>,
    #[serde(default)]
    pub tangency_points: Vec<TangencySpec<C>>,
}

/// Moduli computed for one declared tangency point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangencyReport {
    pub transition: String,
    pub saddle_s: String,
    pub saddle_u: String,
    pub lambda: String,
    pub mu: String,
    pub log_ratio: String,
    pub tau: String,
    pub tau_finite_difference: String,
    pub fd_relative_error: String,
    pub order: u32,
    pub coefficient: String,
    pub one_sided: bool,
    pub one_sided_declared: bool,
}

impl<C: Coefficient> MapSpec<C> {
    pub fn parse(text: &str) -> Result<Self, ModuliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let spec: MapSpec<C> = serde_path_to_error::deserialize(de).map_err(|e| {
            ModuliError::Format {
                message: format!("{}: {}", e.path(), e.inner()),
            }
        })?;
        spec.check()?;
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("map spec serializes")
    }

    pub fn saddle(&self, label: &str) -> Option<&ChartSpec<C>> {
        self.saddles.iter().find(|s| s.saddle == label)
    }

    pub fn transition(&self, id: &str) -> Option<&TransitionMap<C>> {
        self.transitions.iter().find(|t| t.id == id)
    }

    /// Eigenvalue constraints and label resolution.
    pub fn check(&self) -> Result<(), ModuliError> {
        for s in &self.saddles {
            check_eigenvalues::<f64>(s.mu.to_real(), s.lambda.to_real())?;
            if s.period == 0 {
                return Err(ModuliError::Format {
                    message: format!("saddle {}: period must be positive", s.saddle),
                });
            }
        }
        for t in &self.transitions {
            for label in [&t.source, &t.target] {
                if self.saddle(label).is_none() {
                    return Err(ModuliError::UnknownLabel {
                        label: label.clone(),
                    });
                }
            }
        }
        for p in &self.tangency_points {
            if self.transition(&p.transition).is_none() {
                return Err(ModuliError::UnknownLabel {
                    label: p.transition.clone(),
                });
            }
        }
        Ok(())
    }

    /// `τ`, contact order and eigenvalue data for every declared tangency.
    ///
    /// `λ_a` is taken from the target chart (the saddle whose unstable
    /// manifold carries the point) and `μ_a` from the source chart.
    pub fn compute<R: Real>(&self, fd: &FdOptions<R>) -> Result<Vec<TangencyReport>, ModuliError> {
        let mut out = Vec::new();
        for p in &self.tangency_points {
            let g = self
                .transition(&p.transition)
                .ok_or_else(|| ModuliError::UnknownLabel {
                    label: p.transition.clone(),
                })?;
            if let Some([x, y]) = &p.point {
                let img = g.image_of_point::<R>();
                let want = [x.0.to_real::<R>(), y.0.to_real::<R>()];
                let tol = R::lit(1e-9);
                for i in 0..2 {
                    if (img[i] - want[i]).abs() > tol * (R::one() + want[i].abs()) {
                        return Err(ModuliError::PointMismatch {
                            transition: g.id.clone(),
                        });
                    }
                }
            }
            let src = self.saddle(&g.source).expect("checked");
            let dst = self.saddle(&g.target).expect("checked");
            let lambda = dst.lambda.to_real::<R>();
            let mu = src.mu.to_real::<R>();
            let tau = tau_at_tangency(g, fd)?;
            let order = tangency_order(g)?;
            out.push(TangencyReport {
                transition: g.id.clone(),
                saddle_s: src.saddle.clone(),
                saddle_u: dst.saddle.clone(),
                lambda: lambda.to_text(),
                mu: mu.to_text(),
                log_ratio: log_ratio(lambda, mu).to_text(),
                tau: tau.symbolic.to_text(),
                tau_finite_difference: tau.finite_difference.to_text(),
                fd_relative_error: tau.relative_error.to_text(),
                order: order.order,
                coefficient: order.coefficient.to_literal(),
                one_sided: order.one_sided(),
                one_sided_declared: p.one_sided,
            });
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatrixKind {
    Stable,
    Unstable,
}

/// Samples of a separatrix of `saddle`.
///
/// In its own chart the stable separatrix is the axis `x = 0` and the
/// unstable one is `y = 0`. When the saddle is the source of a transition
/// map (the first in label order), the axis is pushed through it and the
/// samples are in the target chart; otherwise the axis itself is returned.
/// Parameters run uniformly over `range` (inclusive).
pub fn emit_separatrix_polyline<C: Coefficient, R: Real>(
    spec: &MapSpec<C>,
    saddle: &str,
    which: SeparatrixKind,
    n_samples: usize,
    range: (R, R),
) -> Result<Vec<[R; 2]>, ModuliError> {
    if spec.saddle(saddle).is_none() {
        return Err(ModuliError::UnknownLabel {
            label: saddle.to_string(),
        });
    }
    let g = spec
        .transitions
        .iter()
        .filter(|t| t.source == saddle)
        .min_by(|a, b| a.id.cmp(&b.id));
    let (lo, hi) = range;
    let step = if n_samples > 1 {
        (hi - lo) / R::lit((n_samples - 1) as f64)
    } else {
        R::zero()
    };
    Ok((0..n_samples)
        .map(|i| {
            let t = lo + step * R::lit(i as f64);
            let p = match which {
                SeparatrixKind::Stable => [R::zero(), t],
                SeparatrixKind::Unstable => [t, R::zero()],
            };
            match g {
                Some(g) => [g.xi.eval(p[0], p[1]), g.eta.eval(p[0], p[1])],
                None => p,
            }
        })
        .collect())
}
