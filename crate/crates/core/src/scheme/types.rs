use serde::{Deserialize, Serialize};

use crate::free_group::FreeGroupAut;
use crate::mat2::Mat2;
use crate::scalar::Real;
use crate::separability::Facts;
use crate::textnum::real;

/// Labels are opaque strings; every cross-reference goes through them.
pub type Label = String;

/// One torus of the orbit space with the homotopy action of the induced
/// map: this torus is sent to `image` with matrix `action` in the fixed
/// homology bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusComponent {
    pub id: Label,
    pub action: Mat2,
    pub image: Label,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Stable,
    Unstable,
}

/// One of the two circles a saddle separatrix projects to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparatrixCurve {
    pub id: Label,
    pub kind: CurveKind,
    pub saddle: Label,
    pub component: Label,
    pub class: [i64; 2],
    pub partner: Label,
}

/// Projection of the free separatrix of a boundary point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryCurve {
    pub id: Label,
    pub attractor: Label,
    pub boundary_point: Label,
    pub component: Label,
    pub class: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(serialize = "R: Real", deserialize = "R: Real"))]
pub struct TangencyPoint<R> {
    pub id: Label,
    pub component: Label,
    pub host_curve: Label,
    #[serde(with = "real")]
    pub tau: R,
    pub order: u32,
}

/// Tangency orbits sharing the same pair of saddles, with their moduli.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(serialize = "R: Real", deserialize = "R: Real"))]
pub struct TangencyFamily<R> {
    pub id: Label,
    pub saddle_s: Label,
    pub saddle_u: Label,
    #[serde(with = "real")]
    pub lambda: R,
    #[serde(with = "real")]
    pub mu: R,
    pub points: Vec<TangencyPoint<R>>,
}

/// Winding number `k` of the canonical path from one tangency point to
/// another in the same torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathWinding {
    pub from: Label,
    pub to: Label,
    pub k: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttractorKind {
    Attractor,
    Repeller,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryPoint {
    pub id: Label,
    /// The boundary curve carrying this point's free separatrix.
    pub curve: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bunch {
    pub id: Label,
    /// Cyclic sequence of `(boundary point, side)`.
    pub members: Vec<(Label, Side)>,
    pub degree: u32,
}

impl Bunch {
    /// Distinct boundary points in order of first appearance.
    pub fn points(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for (p, _) in &self.members {
            if !out.contains(&p.as_str()) {
                out.push(p);
            }
        }
        out
    }
}

/// A non-trivial one-dimensional attractor or repeller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttractorRecord {
    pub id: Label,
    pub kind: AttractorKind,
    pub periodic_components: u32,
    pub rank: u32,
    pub automorphism: FreeGroupAut,
    pub boundary_points: Vec<BoundaryPoint>,
    pub bunches: Vec<Bunch>,
}

/// The complete invariant: orbit-space tori with their induced action,
/// separatrix and boundary curves, moduli and attractor records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(serialize = "R: Real", deserialize = "R: Real"))]
pub struct Scheme<R> {
    pub components: Vec<TorusComponent>,
    pub s_curves: Vec<SeparatrixCurve>,
    pub u_curves: Vec<SeparatrixCurve>,
    pub s_boundary: Vec<BoundaryCurve>,
    pub u_boundary: Vec<BoundaryCurve>,
    pub tangencies: Vec<TangencyFamily<R>>,
    pub windings: Vec<PathWinding>,
    pub attractors: Vec<AttractorRecord>,
    pub k_f: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facts: Option<Facts>,
}

/// Keys every scheme file must carry, possibly with an empty value.
pub const SECTIONS: [&str; 9] = [
    "components",
    "s_curves",
    "u_curves",
    "s_boundary",
    "u_boundary",
    "tangencies",
    "windings",
    "attractors",
    "k_f",
];

impl<R: Real> Scheme<R> {
    pub fn component(&self, id: &str) -> Option<&TorusComponent> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn curves(&self) -> impl Iterator<Item = &SeparatrixCurve> {
        self.s_curves.iter().chain(&self.u_curves)
    }

    pub fn curve(&self, id: &str) -> Option<&SeparatrixCurve> {
        self.curves().find(|c| c.id == id)
    }

    /// Boundary curves tagged with their family (`s_boundary` as stable).
    pub fn boundary_curves(&self) -> impl Iterator<Item = (CurveKind, &BoundaryCurve)> {
        self.s_boundary
            .iter()
            .map(|b| (CurveKind::Stable, b))
            .chain(self.u_boundary.iter().map(|b| (CurveKind::Unstable, b)))
    }

    pub fn boundary_curve(&self, id: &str) -> Option<(CurveKind, &BoundaryCurve)> {
        self.boundary_curves().find(|(_, b)| b.id == id)
    }

    pub fn family(&self, id: &str) -> Option<&TangencyFamily<R>> {
        self.tangencies.iter().find(|f| f.id == id)
    }

    pub fn points(&self) -> impl Iterator<Item = (&TangencyFamily<R>, &TangencyPoint<R>)> {
        self.tangencies
            .iter()
            .flat_map(|f| f.points.iter().map(move |p| (f, p)))
    }

    pub fn point(&self, id: &str) -> Option<(&TangencyFamily<R>, &TangencyPoint<R>)> {
        self.points().find(|(_, p)| p.id == id)
    }

    pub fn attractor(&self, id: &str) -> Option<&AttractorRecord> {
        self.attractors.iter().find(|a| a.id == id)
    }

    /// Stored winding from `a` to `b`; a reversed entry is read negated.
    pub fn winding(&self, a: &str, b: &str) -> Option<i64> {
        if a == b {
            return Some(0);
        }
        self.windings
            .iter()
            .find(|w| w.from == a && w.to == b)
            .map(|w| w.k)
            .or_else(|| {
                self.windings
                    .iter()
                    .find(|w| w.from == b && w.to == a)
                    .map(|w| -w.k)
            })
    }

    /// Winding used by the moduli conditions: unstored pairs count as 0.
    pub fn winding_or_zero(&self, a: &str, b: &str) -> i64 {
        self.winding(a, b).unwrap_or(0)
    }
}
