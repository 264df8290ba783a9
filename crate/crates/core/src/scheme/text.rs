//! Scheme files: a JSON object tree with fixed top-level sections.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::scalar::Real;

use super::types::{Scheme, SECTIONS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}{}", missing_note(.missing))]
    Syntax {
        line: usize,
        column: usize,
        message: String,
        /// Required sections whose key never appears in the text, a hint
        /// for truncated files.
        missing: Vec<String>,
    },
    #[error("missing section `{section}`")]
    MissingSection { section: String },
    #[error("at {path} (line {line}, column {column}): {message}")]
    Field {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate id {id:?} in {section}")]
    DuplicateId { section: String, id: String },
}

fn missing_note(missing: &[String]) -> String {
    if missing.is_empty() {
        String::new()
    } else {
        format!(" (missing sections: {})", missing.join(", "))
    }
}

/// Pretty-printed JSON. Field order is fixed and list order is kept, so
/// equal schemes serialize to identical bytes.
pub fn serialize_scheme<R: Real>(s: &Scheme<R>) -> String {
    let mut out = serde_json::to_string_pretty(s).expect("scheme serializes");
    out.push('\n');
    out
}

pub fn parse_scheme<R: Real>(text: &str) -> Result<Scheme<R>, ParseError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
        missing: SECTIONS
            .iter()
            .filter(|k| !text.contains(&format!("\"{k}\"")))
            .map(|k| k.to_string())
            .collect(),
    })?;
    if let Some(obj) = value.as_object() {
        if let Some(k) = SECTIONS.iter().find(|k| !obj.contains_key(**k)) {
            return Err(ParseError::MissingSection {
                section: k.to_string(),
            });
        }
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    let scheme: Scheme<R> = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ParseError::Field {
            path,
            line: inner.line(),
            column: inner.column(),
            message: strip_position(&inner.to_string()),
        }
    })?;
    if let Some((section, id)) = duplicate_ids(&scheme).into_iter().next() {
        return Err(ParseError::DuplicateId { section, id });
    }
    Ok(scheme)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Labels used twice within one namespace. Separatrix curves of both kinds
/// share a namespace, as do the two boundary families; tangency points and
/// boundary points are global.
pub fn duplicate_ids<R: Real>(s: &Scheme<R>) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut scan = |section: &str, ids: Vec<&str>| {
        let mut seen = BTreeSet::new();
        for id in ids {
            if !seen.insert(id) {
                out.push((section.to_string(), id.to_string()));
            }
        }
    };
    scan("components", s.components.iter().map(|c| c.id.as_str()).collect());
    scan("curves", s.curves().map(|c| c.id.as_str()).collect());
    scan(
        "boundary curves",
        s.boundary_curves().map(|(_, b)| b.id.as_str()).collect(),
    );
    scan("tangencies", s.tangencies.iter().map(|f| f.id.as_str()).collect());
    scan("tangency points", s.points().map(|(_, p)| p.id.as_str()).collect());
    scan("attractors", s.attractors.iter().map(|a| a.id.as_str()).collect());
    scan(
        "boundary points",
        s.attractors
            .iter()
            .flat_map(|a| a.boundary_points.iter().map(|p| p.id.as_str()))
            .collect(),
    );
    scan(
        "bunches",
        s.attractors
            .iter()
            .flat_map(|a| a.bunches.iter().map(|b| b.id.as_str()))
            .collect(),
    );
    out
}
