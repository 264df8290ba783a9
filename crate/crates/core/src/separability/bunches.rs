use std::collections::BTreeSet;

use thiserror::Error;

use crate::scheme::{AttractorRecord, Bunch, Side};

use super::facts::Pairing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BunchError {
    #[error("pairing is for {found}, not {expected}")]
    WrongAttractor { expected: String, found: String },
    #[error("boundary point {0} is not grouped")]
    Ungrouped(String),
    #[error("boundary point {0} appears in more than one group")]
    Repeated(String),
    #[error("unknown boundary point {0}")]
    Unknown(String),
    #[error("empty group")]
    EmptyGroup,
}

/// One bunch per group of boundary points whose free separatrices share a
/// complementary component. Each point contributes both sides of its
/// unstable manifold, in group order.
pub fn enumerate_bunches(rec: &AttractorRecord, pairing: &Pairing) -> Result<Vec<Bunch>, BunchError> {
    if pairing.attractor != rec.id {
        return Err(BunchError::WrongAttractor {
            expected: rec.id.clone(),
            found: pairing.attractor.clone(),
        });
    }
    let known: BTreeSet<&str> = rec.boundary_points.iter().map(|p| p.id.as_str()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, group) in pairing.groups.iter().enumerate() {
        if group.is_empty() {
            return Err(BunchError::EmptyGroup);
        }
        let mut members = Vec::with_capacity(2 * group.len());
        for p in group {
            if !known.contains(p.as_str()) {
                return Err(BunchError::Unknown(p.clone()));
            }
            if !seen.insert(p.as_str()) {
                return Err(BunchError::Repeated(p.clone()));
            }
            members.push((p.clone(), Side::Minus));
            members.push((p.clone(), Side::Plus));
        }
        out.push(Bunch {
            id: format!("b{i}"),
            members,
            degree: group.len() as u32,
        });
    }
    if let Some(p) = known.iter().find(|p| !seen.contains(*p)) {
        return Err(BunchError::Ungrouped(p.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::FreeGroupAut;
    use crate::scheme::{AttractorKind, BoundaryPoint};

    fn record(points: &[&str]) -> AttractorRecord {
        AttractorRecord {
            id: "L".into(),
            kind: AttractorKind::Attractor,
            periodic_components: 1,
            rank: 2,
            automorphism: FreeGroupAut::identity(2),
            boundary_points: points
                .iter()
                .map(|p| BoundaryPoint {
                    id: p.to_string(),
                    curve: format!("l{p}"),
                })
                .collect(),
            bunches: vec![],
        }
    }

    fn pairing(groups: &[&[&str]]) -> Pairing {
        Pairing {
            attractor: "L".into(),
            groups: groups
                .iter()
                .map(|g| g.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }

    #[test]
    fn da_pair_is_one_bunch() {
        let b = enumerate_bunches(&record(&["p1", "p2"]), &pairing(&[&["p1", "p2"]])).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].degree, 2);
        assert_eq!(b[0].points(), vec!["p1", "p2"]);
    }

    #[test]
    fn singleton() {
        let b = enumerate_bunches(&record(&["p"]), &pairing(&[&["p"]])).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].degree, 1);
    }

    #[test]
    fn two_groups_partition() {
        let rec = record(&["a", "b", "c", "d"]);
        let b = enumerate_bunches(&rec, &pairing(&[&["a", "c"], &["b", "d"]])).unwrap();
        assert_eq!(b.iter().map(|x| x.degree).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(b.iter().map(|x| x.degree).sum::<u32>(), 4);
    }

    #[test]
    fn non_partitions_rejected() {
        let rec = record(&["a", "b"]);
        assert_eq!(
            enumerate_bunches(&rec, &pairing(&[&["a"]])),
            Err(BunchError::Ungrouped("b".into()))
        );
        assert_eq!(
            enumerate_bunches(&rec, &pairing(&[&["a", "b"], &["b"]])),
            Err(BunchError::Repeated("b".into()))
        );
        assert_eq!(
            enumerate_bunches(&rec, &pairing(&[&["a", "b", "z"]])),
            Err(BunchError::Unknown("z".into()))
        );
    }
}
