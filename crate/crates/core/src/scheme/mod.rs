//! The scheme: the combinatorial and numeric invariant of a diffeomorphism,
//! its file format, and certificates pairing two schemes.

mod certificate;
mod text;
mod types;
mod validate;

pub use certificate::{AttractorMap, Certificate, MValue};
pub use text::{duplicate_ids, parse_scheme, serialize_scheme, ParseError};
pub use types::{
    AttractorKind, AttractorRecord, BoundaryCurve, BoundaryPoint, Bunch, CurveKind, Label,
    PathWinding, Scheme, SeparatrixCurve, Side, TangencyFamily, TangencyPoint, TorusComponent,
    SECTIONS,
};
pub use validate::{validate_scheme, ValidationReport, Violation};
