//! Dense univariate and bivariate polynomials over a [`Coefficient`] ring.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{Coefficient, Real};
use crate::textnum::Lit;

/// `Σ c_k x^k`, coefficient `k` at index `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly1<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Poly1<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        Poly1 { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn eval_exact(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval<R: Real>(&self, x: R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x + c.to_real::<R>())
    }

    pub fn derivative(&self) -> Poly1<C> {
        Poly1 {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * C::from_int(k as i64))
                .collect(),
        }
    }

    /// Coefficients of the expansion in powers of `x - x0`: entry `k` is
    /// `p^{(k)}(x0) / k!`.
    pub fn taylor_at(&self, x0: &C) -> Vec<C> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut d = self.clone();
        let mut factorial = C::one();
        for k in 0..self.coeffs.len() {
            if k > 0 {
                factorial = factorial * C::from_int(k as i64);
            }
            out.push(d.eval_exact(x0) / factorial.clone());
            d = d.derivative();
        }
        out
    }

    /// Largest coefficient magnitude, used as the scale of zero tests.
    pub fn scale(&self) -> C {
        magnitude(self.coeffs.iter())
    }
}

/// `Σ c_ij x^i y^j`; row `i` holds the coefficients of `x^i`.
///
/// Rows may have different lengths; absent entries are zero. The layout is
/// kept as given so that files round-trip unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2<C> {
    coeffs: Vec<Vec<C>>,
}

impl<C: Coefficient> Poly2<C> {
    pub fn new(coeffs: Vec<Vec<C>>) -> Self {
        Poly2 { coeffs }
    }

    pub fn zero() -> Self {
        Poly2 { coeffs: Vec::new() }
    }

    /// The polynomial `x` (`first = true`) or `y`.
    pub fn coordinate(first: bool) -> Self {
        if first {
            Poly2::new(vec![vec![C::zero()], vec![C::one()]])
        } else {
            Poly2::new(vec![vec![C::zero(), C::one()]])
        }
    }

    pub fn coeffs(&self) -> &[Vec<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> C {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> usize {
        let mut d = 0;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    d = d.max(i + j);
                }
            }
        }
        d
    }

    pub fn eval<R: Real>(&self, x: R, y: R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, row| {
            let r = row
                .iter()
                .rev()
                .fold(R::zero(), |a, c| a * y + c.to_real::<R>());
            acc * x + r
        })
    }

    pub fn eval_exact(&self, x: &C, y: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, row| {
            let r = row
                .iter()
                .rev()
                .fold(C::zero(), |a, c| a * y.clone() + c.clone());
            acc * x.clone() + r
        })
    }

    pub fn d_dx(&self) -> Poly2<C> {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, row)| {
                    row.iter()
                        .map(|c| c.clone() * C::from_int(i as i64))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn d_dy(&self) -> Poly2<C> {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(j, c)| c.clone() * C::from_int(j as i64))
                        .collect()
                })
                .collect(),
        }
    }

    /// `y ↦ p(x0, y)`.
    pub fn restrict_x(&self, x0: &C) -> Poly1<C> {
        let width = self.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![C::zero(); width];
        let mut xp = C::one();
        for row in &self.coeffs {
            for (j, c) in row.iter().enumerate() {
                out[j] = out[j].clone() + c.clone() * xp.clone();
            }
            xp = xp * x0.clone();
        }
        Poly1::new(out)
    }

    /// `x ↦ p(x, y0)`.
    pub fn restrict_y(&self, y0: &C) -> Poly1<C> {
        Poly1::new(
            self.coeffs
                .iter()
                .map(|row| {
                    row.iter()
                        .rev()
                        .fold(C::zero(), |a, c| a * y0.clone() + c.clone())
                })
                .collect(),
        )
    }

    /// Applies `f(i, j, c)` to every stored coefficient.
    pub fn map_terms(&self, mut f: impl FnMut(usize, usize, &C) -> C) -> Poly2<C> {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, c)| f(i, j, c)).collect())
                .collect(),
        }
    }

    pub fn scale(&self) -> C {
        magnitude(self.coeffs.iter().flatten())
    }

    /// `Σ |c_ij| i |x|^{i-1} |y|^j`: size of `∂p/∂x` at `(x, y)` before any
    /// cancellation between terms.
    pub fn dx_magnitude<R: Real>(&self, x: R, y: R) -> R {
        let mut s = R::zero();
        for (i, row) in self.coeffs.iter().enumerate().skip(1) {
            for (j, c) in row.iter().enumerate() {
                s = s
                    + c.abs_real::<R>()
                        * R::lit(i as f64)
                        * x.abs().powi(i as i32 - 1)
                        * y.abs().powi(j as i32);
            }
        }
        s
    }
}

fn magnitude<'a, C: Coefficient + 'a>(it: impl Iterator<Item = &'a C>) -> C {
    let mut best = C::zero();
    let mut best_abs = 0.0f64;
    for c in it {
        let a = c.abs_real::<f64>();
        if a > best_abs {
            best_abs = a;
            best = c.abs_value();
        }
    }
    best
}

impl<C: Coefficient> Serialize for Poly2<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Lit<C>>> = self
            .coeffs
            .iter()
            .map(|r| r.iter().cloned().map(Lit).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for Poly2<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Lit<C>>>::deserialize(d)?;
        Ok(Poly2::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(|l| l.0).collect())
                .collect(),
        ))
    }
}

impl<C: Coefficient> Serialize for Poly1<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Lit<C>> = self.coeffs.iter().cloned().map(Lit).collect();
        v.serialize(s)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for Poly1<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<Lit<C>>::deserialize(d)?;
        Ok(Poly1::new(v.into_iter().map(|l| l.0).collect()))
    }
}
