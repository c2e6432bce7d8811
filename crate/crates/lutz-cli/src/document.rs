//! The versioned JSON report written by `verify` and `trace`.

use std::io;
use std::path::Path;

use lutz_core::report::{Check, ConstructionReport, Params};
use lutz_core::surgery::Trace;
use serde::Serialize;

/// Bumped on any incompatible change to the layout in `docs/report-schema.json`.
pub const SCHEMA_VERSION: &str = "lutz-report/1";

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool { name: "lutz", version: env!("CARGO_PKG_VERSION") };

#[derive(Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: &'static str,
    pub tool: Tool,
    pub seed: u64,
    pub construction: String,
    pub params: Params,
    pub outcome: Outcome,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn new(seed: u64, rep: ConstructionReport) -> ReportDocument {
        let outcome = if rep.passed() { Outcome::Pass } else { Outcome::Fail };
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool: TOOL,
            seed,
            construction: rep.name,
            params: rep.params,
            outcome,
            checks: rep.checks,
            notes: rep.notes,
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }
}

#[derive(Debug, Serialize)]
pub struct TraceDocument {
    pub schema_version: &'static str,
    pub tool: Tool,
    pub outcome: Outcome,
    pub trace: Trace,
}

impl TraceDocument {
    pub fn new(trace: Trace) -> TraceDocument {
        let outcome = if trace.final_ok && trace.illegal_steps == 0 { Outcome::Pass } else { Outcome::Fail };
        TraceDocument { schema_version: SCHEMA_VERSION, tool: TOOL, outcome, trace }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(doc: &T, path: &Path) -> io::Result<()> {
    std::fs::write(path, to_json(doc))
}
