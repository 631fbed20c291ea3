//! JSON documents describing sampled set-valued functions.

use metric_svf::{CompactSet, Error, Partition, Result, SampledSvf, Tolerance};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    /// Each set is a list of `[lo, hi]` pairs.
    Intervals,
    /// Each set is a list of points of a common dimension.
    Points,
}

/// ```json
/// {"partition": [0, 2, 6], "sets": [[[2, 8]], [[5, 5]], [[5, 5]]]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SvfDocument {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 2]>,
    pub partition: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<SetKind>,
    pub sets: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub metadata: serde_json::Value,
}

impl SvfDocument {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }

    pub fn kind(&self) -> SetKind {
        self.kind.unwrap_or(SetKind::Intervals)
    }

    pub fn to_svf(&self, tol: &Tolerance) -> Result<SampledSvf> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let partition = Partition::new(self.partition.clone())?;
        if let Some([a, b]) = self.domain {
            if a != partition.a() || b != partition.b() {
                return Err(Error::InvalidPartition(format!(
                    "domain [{a}, {b}] does not match the partition ends"
                )));
            }
        }
        if self.sets.len() != self.partition.len() {
            return Err(Error::LengthMismatch {
                expected: self.partition.len(),
                got: self.sets.len(),
            });
        }
        let values = self
            .sets
            .iter()
            .map(|s| match self.kind() {
                SetKind::Intervals => {
                    let pairs = s
                        .iter()
                        .map(|p| match p.as_slice() {
                            [lo, hi] => Ok((*lo, *hi)),
                            _ => Err(Error::InvalidArgument(format!(
                                "interval {p:?} must have two endpoints"
                            ))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    CompactSet::intervals(&pairs)
                }
                SetKind::Points => CompactSet::points(s.clone(), tol),
            })
            .collect::<Result<Vec<_>>>()?;
        SampledSvf::with_tolerance(partition, values, *tol)
    }

    pub fn from_svf(f: &SampledSvf) -> Self {
        let mut kind = None;
        let sets = f
            .values()
            .iter()
            .map(|v| match v {
                CompactSet::Intervals(u) => u.components().iter().map(|c| vec![c.lo(), c.hi()]).collect(),
                CompactSet::Cloud(c) => {
                    kind = Some(SetKind::Points);
                    c.points().to_vec()
                }
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            domain: None,
            partition: f.partition().knots().to_vec(),
            kind,
            sets,
            metadata: serde_json::Value::Null,
        }
    }
}
