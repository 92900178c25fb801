//! JSON channel document.
//!
//! ```json
//! {
//!   "name": "multiplicative",
//!   "alphabets": { "x": 2, "y1": 2, "y2": 2, "z": 4, "s1": 2, "s2": 2,
//!                  "shat1": 2, "shat2": 2, "labels": { "z": ["00", "01", "10", "11"] } },
//!   "state_law": [0.4, 0.0, 0.3, 0.3],
//!   "transition": [[[[1.0, 0.0, ...], ...]]],
//!   "distortion": { "receiver1": "hamming", "receiver2": [[0.0, 1.0], [1.0, 0.0]] }
//! }
//! ```
//!
//! `state_law` is row-major over `(s1, s2)`; `transition[s1][s2][x]` is a pmf
//! over `(y1, y2, z)` flattened row-major. `shat1`/`shat2` default to the
//! state alphabet sizes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Alphabets, SdmbcSpec};
use crate::error::{Error, Result};
use crate::estimation::{DistortionMatrix, DistortionMeasure};
use crate::prob::{Kernel, Pmf};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    alphabets: AlphabetsDoc,
    state_law: Vec<f64>,
    transition: Vec<Vec<Vec<Vec<f64>>>>,
    distortion: DistortionDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphabetsDoc {
    x: usize,
    y1: usize,
    y2: usize,
    z: usize,
    s1: usize,
    s2: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shat1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shat2: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistortionDoc {
    receiver1: DistortionEntry,
    receiver2: DistortionEntry,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum DistortionEntry {
    Named(String),
    Matrix(Vec<Vec<f64>>),
}

const LABELED_ALPHABETS: [&str; 8] = ["x", "y1", "y2", "z", "s1", "s2", "shat1", "shat2"];

/// Parses and validates a channel document.
pub fn load_channel(text: &str) -> Result<SdmbcSpec> {
    let doc: ChannelDocument =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let a = &doc.alphabets;
    let alphabets = Alphabets {
        x: a.x,
        y1: a.y1,
        y2: a.y2,
        z: a.z,
        s1: a.s1,
        s2: a.s2,
        shat1: a.shat1.unwrap_or(a.s1),
        shat2: a.shat2.unwrap_or(a.s2),
    };
    let state_law = Pmf::new(doc.state_law)?;

    let width = a.y1 * a.y2 * a.z;
    if doc.transition.len() != a.s1 {
        return Err(Error::Schema(format!(
            "transition has {} entries along s1, expected {}",
            doc.transition.len(),
            a.s1
        )));
    }
    let mut table = Vec::with_capacity(a.s1 * a.s2 * a.x * width);
    for (s1, by_s2) in doc.transition.iter().enumerate() {
        if by_s2.len() != a.s2 {
            return Err(Error::Schema(format!(
                "transition[{s1}] must have {} entries",
                a.s2
            )));
        }
        for (s2, by_x) in by_s2.iter().enumerate() {
            if by_x.len() != a.x {
                return Err(Error::Schema(format!(
                    "transition[{s1}][{s2}] must have {} entries",
                    a.x
                )));
            }
            for (x, row) in by_x.iter().enumerate() {
                if row.len() != width {
                    return Err(Error::Schema(format!(
                        "transition[{s1}][{s2}][{x}] must have |Y1||Y2||Z| = {width} entries"
                    )));
                }
                table.extend_from_slice(row);
            }
        }
    }
    let transition = Kernel::new(vec![a.s1, a.s2, a.x], vec![a.y1, a.y2, a.z], table)?;

    let matrix = |entry: &DistortionEntry, states: usize, recon: usize, k: usize| match entry {
        DistortionEntry::Named(n) if n == "hamming" => Ok(DistortionMatrix::hamming(states, recon)),
        DistortionEntry::Named(n) => Err(Error::Schema(format!(
            "unknown distortion `{n}` for receiver {k}"
        ))),
        DistortionEntry::Matrix(rows) => DistortionMatrix::from_rows(rows),
    };
    let distortion = DistortionMeasure::new(
        matrix(&doc.distortion.receiver1, alphabets.s1, alphabets.shat1, 1)?,
        matrix(&doc.distortion.receiver2, alphabets.s2, alphabets.shat2, 2)?,
    );

    let mut spec = SdmbcSpec::new(alphabets, state_law, transition, distortion)?;
    if let Some(name) = doc.name {
        spec = spec.with_name(name);
    }
    for (alphabet, labels) in doc.alphabets.labels {
        if !LABELED_ALPHABETS.contains(&alphabet.as_str()) {
            return Err(Error::Schema(format!(
                "labels for unknown alphabet `{alphabet}`"
            )));
        }
        spec = spec.with_labels(&alphabet, labels);
    }
    Ok(spec)
}

/// Serializes a channel as a pretty-printed document.
pub fn save_channel(spec: &SdmbcSpec) -> String {
    let a = spec.alphabets();
    let mut transition = Vec::with_capacity(a.s1);
    for s1 in 0..a.s1 {
        let mut by_s2 = Vec::with_capacity(a.s2);
        for s2 in 0..a.s2 {
            by_s2.push(
                (0..a.x)
                    .map(|x| spec.transition_row(s1, s2, x).to_vec())
                    .collect(),
            );
        }
        transition.push(by_s2);
    }
    let entry = |m: &DistortionMatrix| {
        if *m == DistortionMatrix::hamming(m.states(), m.reconstructions()) {
            DistortionEntry::Named("hamming".into())
        } else {
            DistortionEntry::Matrix(m.rows())
        }
    };
    let d = spec.distortion();
    let doc = ChannelDocument {
        name: Some(spec.name().to_string()),
        alphabets: AlphabetsDoc {
            x: a.x,
            y1: a.y1,
            y2: a.y2,
            z: a.z,
            s1: a.s1,
            s2: a.s2,
            shat1: Some(a.shat1),
            shat2: Some(a.shat2),
            labels: spec.labels().clone(),
        },
        state_law: spec.state_law().probs().to_vec(),
        transition,
        distortion: DistortionDoc {
            receiver1: entry(d.matrix(super::Receiver::First)),
            receiver2: entry(d.matrix(super::Receiver::Second)),
        },
    };
    serde_json::to_string_pretty(&doc).expect("channel document serializes")
}
