//! Declared combinatorial facts about basic sets and their invariant
//! manifolds. None of these are computed from dynamics; a data file asserts
//! them and the checkers reason over them.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasicKind {
    Sink,
    Saddle,
    Source,
    Attractor,
    Repeller,
}

impl BasicKind {
    /// Periodic orbits (sinks, saddles, sources) are the trivial basic sets.
    pub fn is_trivial(self) -> bool {
        matches!(self, BasicKind::Sink | BasicKind::Saddle | BasicKind::Source)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicSet {
    pub id: String,
    pub kind: BasicKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Manifold {
    #[serde(rename = "s")]
    Stable,
    #[serde(rename = "u")]
    Unstable,
}

/// `(basic set, s|u, optional point or separatrix label)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    pub set: String,
    pub manifold: Manifold,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A finite count or the `"infinite"` marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    pub fn is_finite(self) -> bool {
        matches!(self, Count::Finite(_))
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => s.serialize_u64(*n),
            Count::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Count;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer or \"infinite\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Count, E> {
                Ok(Count::Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Count, E> {
                u64::try_from(v)
                    .map(Count::Finite)
                    .map_err(|_| E::custom("count must be non-negative"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Count, E> {
                if v == "infinite" {
                    Ok(Count::Infinite)
                } else {
                    Err(E::custom(format!("unknown count {v:?}")))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Contact {
    Transverse,
    Tangent,
}

/// One declared intersection `W^u(source) ∩ W^s(target)` (or the reverse
/// roles, as the descriptors say).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Intersection {
    pub source: Descriptor,
    pub target: Descriptor,
    pub contact: Contact,
    /// Contact order of a tangency; `"infinite"` for flat contact.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Count>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Count>,
    /// Whether a transverse arc at the tangency separates stable from
    /// unstable manifolds of saddles (one side each).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side_separated: Option<bool>,
}

impl Intersection {
    pub fn is_tangent(&self) -> bool {
        self.contact == Contact::Tangent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct IntersectionTable {
    /// The table lists every intersection of the declared manifolds.
    /// Without this flag, clauses that rely on the absence of an entry
    /// are reported undetermined.
    #[serde(default)]
    pub complete: bool,
    #[serde(default)]
    pub entries: Vec<Intersection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Landing {
    Source,
    Sink,
    Saddle,
    Nontrivial,
    Unknown,
}

/// Where the free separatrix `ℓ_p` of a boundary point accumulates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparatrixEnd {
    pub attractor: String,
    pub boundary_point: String,
    pub landing: Landing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<String>,
}

/// Declared `cl(W_Λ) \ W_Λ` as a union of invariant manifolds of the
/// listed basic sets; `None` when unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Frontier {
    pub attractor: String,
    pub sets: Option<Vec<String>>,
}

/// Grouping of the boundary points of one attractor by the complementary
/// component their free separatrices lie in; each group is in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pairing {
    pub attractor: String,
    pub groups: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Facts {
    pub roster: Vec<BasicSet>,
    #[serde(default)]
    pub intersections: IntersectionTable,
    #[serde(default)]
    pub ends: Vec<SeparatrixEnd>,
    #[serde(default)]
    pub frontiers: Vec<Frontier>,
    #[serde(default)]
    pub pairing: Vec<Pairing>,
}

impl Facts {
    pub fn basic_set(&self, id: &str) -> Option<&BasicSet> {
        self.roster.iter().find(|b| b.id == id)
    }

    pub fn kind_of(&self, id: &str) -> Option<BasicKind> {
        self.basic_set(id).map(|b| b.kind)
    }

    pub fn parse(text: &str) -> Result<Facts, String> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            format!("{path}: {inner}")
        })
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("facts serialize")
    }

    /// Labels that do not resolve against the roster.
    pub fn dangling(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |id: &str, at: String| {
            if self.basic_set(id).is_none() {
                out.push(format!("{at}: unknown basic set {id}"));
            }
        };
        for (i, e) in self.intersections.entries.iter().enumerate() {
            check(&e.source.set, format!("intersections.entries[{i}].source"));
            check(&e.target.set, format!("intersections.entries[{i}].target"));
        }
        for e in &self.ends {
            check(&e.attractor, format!("ends[{}]", e.boundary_point));
            if let Some(s) = &e.set {
                check(s, format!("ends[{}].set", e.boundary_point));
            }
        }
        for f in &self.frontiers {
            check(&f.attractor, format!("frontiers[{}]", f.attractor));
            for s in f.sets.iter().flatten() {
                check(s, format!("frontiers[{}].sets", f.attractor));
            }
        }
        for p in &self.pairing {
            check(&p.attractor, format!("pairing[{}]", p.attractor));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_parse_both_forms() {
        let c: Count = serde_json::from_str("3").unwrap();
        assert_eq!(c, Count::Finite(3));
        let c: Count = serde_json::from_str("\"infinite\"").unwrap();
        assert_eq!(c, Count::Infinite);
        assert!(serde_json::from_str::<Count>("\"many\"").is_err());
        assert_eq!(serde_json::to_string(&Count::Infinite).unwrap(), "\"infinite\"");
    }

    #[test]
    fn dangling_labels_reported() {
        let f = Facts::parse(
            r#"{"roster": [{"id": "a", "kind": "source", "period": 1}],
                "frontiers": [{"attractor": "L", "sets": ["a", "b"]}]}"#,
        )
        .unwrap();
        let d = f.dangling();
        assert_eq!(d.len(), 2);
        assert!(d.iter().any(|m| m.contains("unknown basic set b")));
    }
}
