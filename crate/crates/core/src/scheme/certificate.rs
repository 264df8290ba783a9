use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::free_group::{FreeGroupAut, Word};
use crate::mat2::Mat2;
use crate::scalar::Real;

use super::types::{Label, Scheme};

/// `m` for the ordered cross-component pair `(from, to)` of the source
/// scheme. The reversed pair carries `-m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MValue {
    pub from: Label,
    pub to: Label,
    pub m: i64,
}

/// Free-group data for one matched pair of attractors.
///
/// `psi ∘ T ∘ psi_inv` must equal `T'` followed by conjugation by `twist`;
/// the twist absorbs the freedom in choosing lifts of the restricted map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttractorMap {
    pub source: Label,
    pub target: Label,
    pub psi: FreeGroupAut,
    pub psi_inv: FreeGroupAut,
    pub boundary_points: BTreeMap<Label, Label>,
    #[serde(default = "Word::identity", skip_serializing_if = "Word::is_identity")]
    pub twist: Word,
}

/// Witness data for an equivalence of two schemes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    #[serde(default)]
    pub component_map: BTreeMap<Label, Label>,
    #[serde(default)]
    pub basis_changes: BTreeMap<Label, Mat2>,
    #[serde(default)]
    pub curve_map: BTreeMap<Label, Label>,
    #[serde(default)]
    pub boundary_curve_map: BTreeMap<Label, Label>,
    #[serde(default)]
    pub tangency_map: BTreeMap<Label, Label>,
    #[serde(default)]
    pub point_map: BTreeMap<Label, Label>,
    #[serde(default)]
    pub m_values: Vec<MValue>,
    #[serde(default)]
    pub attractor_maps: Vec<AttractorMap>,
}

fn ids<'a>(it: impl Iterator<Item = &'a String>) -> BTreeMap<Label, Label> {
    it.map(|id| (id.clone(), id.clone())).collect()
}

impl Certificate {
    /// The certificate of a scheme against itself: every map the identity,
    /// every `m` zero.
    pub fn identity<R: Real>(s: &Scheme<R>) -> Certificate {
        let mut m_values = Vec::new();
        let points: Vec<_> = s.points().map(|(f, p)| (f.id.as_str(), p)).collect();
        for (fa, a) in &points {
            for (fb, b) in &points {
                if fa == fb && a.component != b.component && a.id < b.id {
                    m_values.push(MValue {
                        from: a.id.clone(),
                        to: b.id.clone(),
                        m: 0,
                    });
                }
            }
        }
        Certificate {
            component_map: ids(s.components.iter().map(|c| &c.id)),
            basis_changes: s
                .components
                .iter()
                .map(|c| (c.id.clone(), Mat2::IDENTITY))
                .collect(),
            curve_map: ids(s.curves().map(|c| &c.id)),
            boundary_curve_map: ids(s.boundary_curves().map(|(_, b)| &b.id)),
            tangency_map: ids(s.tangencies.iter().map(|f| &f.id)),
            point_map: ids(s.points().map(|(_, p)| &p.id)),
            m_values,
            attractor_maps: s
                .attractors
                .iter()
                .map(|a| AttractorMap {
                    source: a.id.clone(),
                    target: a.id.clone(),
                    psi: FreeGroupAut::identity(a.rank as usize),
                    psi_inv: FreeGroupAut::identity(a.rank as usize),
                    boundary_points: ids(a.boundary_points.iter().map(|p| &p.id)),
                    twist: Word::identity(),
                })
                .collect(),
        }
    }

    /// Stored `m` for `(a, b)`, reading a reversed entry negated.
    pub fn m_value(&self, a: &str, b: &str) -> Option<i64> {
        self.m_values
            .iter()
            .find(|v| v.from == a && v.to == b)
            .map(|v| v.m)
            .or_else(|| {
                self.m_values
                    .iter()
                    .find(|v| v.from == b && v.to == a)
                    .map(|v| -v.m)
            })
    }

    /// Stores `m` for `(a, b)`, replacing any entry for either order.
    pub fn set_m_value(&mut self, a: &str, b: &str, m: i64) {
        self.m_values
            .retain(|v| !((v.from == a && v.to == b) || (v.from == b && v.to == a)));
        self.m_values.push(MValue {
            from: a.to_string(),
            to: b.to_string(),
            m,
        });
        self.m_values
            .sort_by(|x, y| (&x.from, &x.to).cmp(&(&y.from, &y.to)));
    }

    pub fn attractor_map(&self, source: &str) -> Option<&AttractorMap> {
        self.attractor_maps.iter().find(|m| m.source == source)
    }

    pub fn parse(text: &str) -> Result<Certificate, String> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            format!("{path}: {}", e.into_inner())
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("certificate serializes");
        out.push('\n');
        out
    }
}
