//! Serde helpers that write numbers as decimal strings.
//!
//! Reals go through `{:?}` so that `parse(serialize(v)) == v` bit for bit.
//! Readers accept either a string or a bare JSON number.

use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::scalar::{Coefficient, Real};

struct NumText;

impl Visitor<'_> for NumText {
    type Value = String;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number or a decimal string")
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<String, E> {
        Ok(v.to_string())
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<String, E> {
        Ok(v.to_string())
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<String, E> {
        Ok(v.to_string())
    }
    fn visit_f64<E: de::Error>(self, v: f64) -> Result<String, E> {
        Ok(format!("{v:?}"))
    }
}

fn num_text<'de, D: Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    d.deserialize_any(NumText)
}

/// A real scalar in text form.
pub mod real {
    use super::*;

    pub fn serialize<R: Real, S: Serializer>(v: &R, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_text())
    }

    pub fn deserialize<'de, R: Real, D: Deserializer<'de>>(d: D) -> Result<R, D::Error> {
        let t = num_text(d)?;
        t.trim()
            .parse::<R>()
            .map_err(|_| de::Error::custom(format!("invalid real {t:?}")))
    }
}

/// A coefficient (float or exact rational) in text form.
pub mod lit {
    use super::*;

    pub fn serialize<C: Coefficient, S: Serializer>(v: &C, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_literal())
    }

    pub fn deserialize<'de, C: Coefficient, D: Deserializer<'de>>(d: D) -> Result<C, D::Error> {
        let t = num_text(d)?;
        C::parse_literal(&t).map_err(de::Error::custom)
    }
}

/// Wrapper giving any [`Coefficient`] the text representation of [`lit`].
#[derive(Debug, Clone, PartialEq)]
pub struct Lit<C>(pub C);

impl<C: Coefficient> Serialize for Lit<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        lit::serialize(&self.0, s)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for Lit<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        lit::deserialize(d).map(Lit)
    }
}

/// Wrapper giving any [`Real`] the text representation of [`real`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Text<R>(pub R);

impl<R: Real> Serialize for Text<R> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        real::serialize(&self.0, s)
    }
}

impl<'de, R: Real> Deserialize<'de> for Text<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        real::deserialize(d).map(Text)
    }
}

/// A pair of coefficients, `[a, b]`.
pub mod lit_pair {
    use super::*;

    pub fn serialize<C: Coefficient, S: Serializer>(v: &[C; 2], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        for c in v {
            seq.serialize_element(&Lit(c.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, C: Coefficient, D: Deserializer<'de>>(
        d: D,
    ) -> Result<[C; 2], D::Error> {
        struct V<C>(PhantomData<C>);
        impl<'de, C: Coefficient> Visitor<'de> for V<C> {
            type Value = [C; 2];
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a pair of numbers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<[C; 2], A::Error> {
                let a: Lit<C> = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let b: Lit<C> = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok([a.0, b.0])
            }
        }
        d.deserialize_seq(V(PhantomData))
    }
}
