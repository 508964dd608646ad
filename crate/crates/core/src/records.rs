//! JSON records for systems, orbit reports and reference fixtures.
//!
//! Every record carries a `derived` block. It is recomputed on load and a
//! mismatch is an error, so a stored file cannot silently disagree with the
//! engine.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classification::{fingerprint, label_for, Fingerprint, OrbitClass};
use crate::pillowcase::{ArcClass, ArcViolation, Puncture};
use crate::system::{ArcSystem, DegreeVector, SystemError};

pub const SCHEMA_VERSION: u32 = 1;
pub const SURFACE: &str = "sphere-4";

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("unexpected surface tag {0:?}")]
    Surface(String),
    #[error("invalid arc: {0}")]
    Arc(#[from] ArcViolation),
    #[error("invalid system: {0}")]
    System(#[from] SystemError),
    #[error("stored derived data does not match the recomputed values")]
    Derived,
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ArcRecord {
    Segment {
        endpoints: [Puncture; 2],
        vector: [i64; 2],
    },
    Loop {
        base: Puncture,
        enclosed: Puncture,
        vector: [i64; 2],
    },
}

impl From<&ArcClass> for ArcRecord {
    fn from(a: &ArcClass) -> Self {
        match *a {
            ArcClass::Segment { ends, vector } => ArcRecord::Segment {
                endpoints: ends,
                vector: [vector.u, vector.v],
            },
            ArcClass::Loop {
                base,
                enclosed,
                vector,
            } => ArcRecord::Loop {
                base,
                enclosed,
                vector: [vector.u, vector.v],
            },
        }
    }
}

impl TryFrom<&ArcRecord> for ArcClass {
    type Error = ArcViolation;

    fn try_from(r: &ArcRecord) -> Result<Self, ArcViolation> {
        let arc = match *r {
            ArcRecord::Segment { endpoints, vector } => ArcClass::Segment {
                ends: endpoints,
                vector: crate::pillowcase::Slope::new(vector[0], vector[1]),
            },
            ArcRecord::Loop {
                base,
                enclosed,
                vector,
            } => ArcClass::Loop {
                base,
                enclosed,
                vector: crate::pillowcase::Slope::new(vector[0], vector[1]),
            },
        };
        arc.validate()?;
        Ok(arc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedBlock {
    pub degree_vector: DegreeVector,
    pub j_size: usize,
    pub fingerprint: Fingerprint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_label: Option<String>,
}

impl DerivedBlock {
    pub fn of(system: &ArcSystem) -> Self {
        let fp = fingerprint(system);
        DerivedBlock {
            degree_vector: fp.system_degrees,
            j_size: fp.j_size,
            fingerprint: fp,
            paper_label: label_for(system),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub schema_version: u32,
    pub surface: String,
    pub k: u8,
    pub arcs: Vec<ArcRecord>,
    pub derived: DerivedBlock,
}

impl SystemRecord {
    pub fn from_system(system: &ArcSystem) -> Self {
        SystemRecord {
            schema_version: SCHEMA_VERSION,
            surface: SURFACE.to_string(),
            k: system.k(),
            arcs: system.arcs().iter().map(ArcRecord::from).collect(),
            derived: DerivedBlock::of(system),
        }
    }

    /// Rebuilds the system, checking every invariant and the derived block.
    pub fn to_system(&self) -> Result<ArcSystem, RecordError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(RecordError::Schema(self.schema_version));
        }
        if self.surface != SURFACE {
            return Err(RecordError::Surface(self.surface.clone()));
        }
        let arcs: Vec<ArcClass> = self.arcs.iter().map(ArcClass::try_from).collect::<Result<_, _>>()?;
        let system = ArcSystem::new(arcs, self.k)?;
        if DerivedBlock::of(&system) != self.derived {
            return Err(RecordError::Derived);
        }
        Ok(system)
    }
}

pub fn systems_to_json(systems: &[ArcSystem]) -> String {
    let recs: Vec<SystemRecord> = systems.iter().map(SystemRecord::from_system).collect();
    let mut s = serde_json::to_string_pretty(&recs).expect("records serialize");
    s.push('\n');
    s
}

pub fn systems_from_json(text: &str) -> Result<Vec<ArcSystem>, RecordError> {
    let recs: Vec<SystemRecord> = serde_json::from_str(text)?;
    recs.iter().map(SystemRecord::to_system).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub label: Option<String>,
    pub members: usize,
    pub fingerprint: Fingerprint,
    pub representative: SystemRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub schema_version: u32,
    pub class_count: usize,
    pub system_count: usize,
    pub classes: Vec<OrbitRecord>,
}

impl OrbitReport {
    pub fn new(classes: &[OrbitClass]) -> Self {
        OrbitReport {
            schema_version: SCHEMA_VERSION,
            class_count: classes.len(),
            system_count: classes.iter().map(|c| c.members).sum(),
            classes: classes
                .iter()
                .map(|c| OrbitRecord {
                    label: c.label.clone(),
                    members: c.members,
                    fingerprint: c.fingerprint,
                    representative: SystemRecord::from_system(&c.representative),
                })
                .collect(),
        }
    }
}

/// One labelled reference system, with how it was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub label: String,
    pub recipe: String,
    pub system: SystemRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceFile {
    pub schema_version: u32,
    pub systems: Vec<ReferenceEntry>,
}

impl ReferenceFile {
    pub fn parse(text: &str) -> Result<Vec<(String, ArcSystem)>, RecordError> {
        let f: ReferenceFile = serde_json::from_str(text)?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(RecordError::Schema(f.schema_version));
        }
        f.systems
            .iter()
            .map(|e| Ok((e.label.clone(), e.system.to_system()?)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pillowcase::Puncture::*;

    fn sample() -> ArcSystem {
        ArcSystem::new(
            [
                ArcClass::segment(A, B, 1, 0).unwrap(),
                ArcClass::loop_around(C, A, 0, 1).unwrap(),
                ArcClass::segment(B, D, 0, 1).unwrap(),
            ],
            1,
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let s = sample();
        let text = systems_to_json(std::slice::from_ref(&s));
        assert_eq!(systems_from_json(&text).unwrap(), vec![s]);
    }

    #[test]
    fn arc_record_shape() {
        let v = serde_json::to_value(ArcRecord::from(&ArcClass::loop_around(C, A, 0, 1).unwrap())).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "loop", "base": "c", "enclosed": "a", "vector": [0, 1]}));
    }

    #[test]
    fn tampered_derived_block_is_rejected() {
        let mut r = SystemRecord::from_system(&sample());
        r.derived.j_size += 1;
        assert!(matches!(r.to_system(), Err(RecordError::Derived)));
    }

    #[test]
    fn invalid_arcs_are_rejected() {
        let mut r = SystemRecord::from_system(&sample());
        r.arcs[0] = ArcRecord::Segment {
            endpoints: [A, B],
            vector: [0, 1],
        };
        assert!(matches!(r.to_system(), Err(RecordError::Arc(_))));
        let mut r = SystemRecord::from_system(&sample());
        r.schema_version = 99;
        assert!(matches!(r.to_system(), Err(RecordError::Schema(99))));
    }

    #[test]
    fn empty_list_round_trips() {
        assert_eq!(systems_to_json(&[]), "[]\n");
        assert!(systems_from_json("[]").unwrap().is_empty());
    }
}
