use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::homology::HomologySummary;

/// Schema version of serialized reports.
pub const REPORT_VERSION: u32 = 1;

/// Attached to every report built on a manifold model.
pub const ISOTOPY_NOTE: &str = "isotopy equivalence modeled by component bijection of convex balls";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Truncation left too few valid degrees to compare.
    InconclusiveTruncation,
    /// A sufficient certificate was not found; nothing was refuted.
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// One resolution of a stabilization sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub model: String,
    pub left: HomologySummary,
    pub right: HomologySummary,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    pub sweep: Vec<SweepEntry>,
    /// `stable` when every resolution passes with the same homology.
    pub verdict: String,
}

impl Stabilization {
    pub fn from_sweep(sweep: Vec<SweepEntry>) -> Self {
        let stable = sweep.iter().all(|e| e.pass)
            && sweep.windows(2).all(|w| w[0].left.betti == w[1].left.betti && w[0].left.torsion == w[1].left.torsion);
        Self { sweep, verdict: if stable { "stable" } else { "unstable" }.into() }
    }

    pub fn is_stable(&self) -> bool {
        self.verdict == "stable"
    }
}

/// Machine-readable verdict of one check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub v: u32,
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<HomologySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<HomologySummary>,
    /// Degrees `0..=d` in which the comparison was made.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees_valid: Option<usize>,
    /// Categorical evidence: sizes, witnesses, failures.
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilization: Option<Stabilization>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str, verdict: Verdict) -> Self {
        Self {
            v: REPORT_VERSION,
            name: name.to_string(),
            params: BTreeMap::new(),
            verdict,
            left: None,
            right: None,
            degrees_valid: None,
            witness: Value::Null,
            wall_time_ms: None,
            stabilization: None,
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn witness(mut self, w: Value) -> Self {
        self.witness = w;
        self
    }

    pub fn note(mut self, n: &str) -> Self {
        self.notes.push(n.to_string());
        self
    }

    /// Sets both sides and the verdict from a homology comparison through
    /// `through`.
    pub fn compare(mut self, left: HomologySummary, right: HomologySummary, through: usize) -> Self {
        let valid = match (left.valid_through, right.valid_through) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        };
        self.verdict = match valid {
            Some(v) if v >= through => {
                if left.agrees_through(&right, through) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
            _ => Verdict::InconclusiveTruncation,
        };
        self.degrees_valid = valid.map(|v| v.min(through));
        self.left = Some(left);
        self.right = Some(right);
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
