//! Result emission: the plain-text `d`/`c` record format and the versioned
//! JSON report consumed by the bench comparator.

use negsssp_core::driver::{BaseCaseRecord, IterationRecord, PhaseTimings, RunTrace};
use negsssp_core::{Dist, Scalar, SsspOutcome};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct JsonReport {
    pub schema: u32,
    pub mode: String,
    pub algo: String,
    pub source: usize,
    pub seed: u64,
    pub outcome: JsonOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<JsonTrace>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct JsonOutcome {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_weight: Option<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct JsonTrace {
    pub iterations: Vec<IterationRecord>,
    pub base_case: Option<BaseCaseRecord>,
    pub recursion_depth: usize,
    /// Wall-clock numbers are omitted by default so reports with a fixed
    /// seed are byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<PhaseTimings>,
}

fn dist_str<S: Scalar>(d: &Dist<S>) -> String {
    d.to_string()
}

pub fn emit_result_text<S: Scalar>(outcome: &SsspOutcome<S>) -> String {
    let mut out = String::new();
    match outcome {
        SsspOutcome::Distances { dist, .. } => {
            for (v, d) in dist.iter().enumerate() {
                out.push_str(&format!("d {} {}\n", v, dist_str(d)));
            }
        }
        SsspOutcome::NegativeCycle(c) => {
            out.push_str("NEGATIVE CYCLE\n");
            for v in &c.vertices {
                out.push_str(&format!("c {v}\n"));
            }
            out.push_str(&format!("cycle_weight {}\n", c.weight));
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
pub fn build_report<S: Scalar>(
    outcome: &SsspOutcome<S>,
    trace: &RunTrace,
    mode: &str,
    algo: &str,
    source: usize,
    seed: u64,
    include_timings: bool,
) -> JsonReport {
    let outcome = match outcome {
        SsspOutcome::Distances { dist, .. } => JsonOutcome {
            kind: "distances".into(),
            dist: Some(dist.iter().map(dist_str).collect()),
            cycle: None,
            cycle_weight: None,
        },
        SsspOutcome::NegativeCycle(c) => JsonOutcome {
            kind: "negative_cycle".into(),
            dist: None,
            cycle: Some(c.vertices.clone()),
            cycle_weight: Some(c.weight.to_string()),
        },
    };
    JsonReport {
        schema: SCHEMA_VERSION,
        mode: mode.into(),
        algo: algo.into(),
        source,
        seed,
        outcome,
        trace: Some(JsonTrace {
            iterations: trace.iterations.clone(),
            base_case: trace.base_case.clone(),
            recursion_depth: trace.recursion_depth,
            timings: include_timings.then(|| trace.timings.clone()),
        }),
    }
}

pub fn emit_result_json(report: &JsonReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
