//! Run reports: a digest-covered body plus timings, and a text renderer.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use vr_lattice::digest::json_digest;
use vr_lattice::Caps;

use crate::suites::{critical_lower_bound, CaseReport, Suite, SuiteParams};
use crate::CliError;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Everything that must be reproducible; timings live outside it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportBody {
    pub schema_version: u32,
    pub tool_version: String,
    pub suite: Suite,
    pub parameters: SuiteParams,
    pub caps: Caps,
    pub cases: Vec<CaseReport>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: u64,
    pub case_ms: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub body: ReportBody,
    /// SHA-256 of the body's compact JSON.
    pub body_digest: String,
    pub timings: Timings,
}

impl RunReport {
    pub fn new(
        suite: Suite,
        parameters: SuiteParams,
        caps: Caps,
        cases: Vec<CaseReport>,
        timings: Timings,
    ) -> Result<Self, CliError> {
        let passed = cases.iter().all(|c| c.passed);
        let body = ReportBody {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            suite,
            parameters,
            caps,
            cases,
            passed,
        };
        let body_digest = json_digest(&body)?;
        Ok(RunReport {
            body,
            body_digest,
            timings,
        })
    }

    /// True iff the stored digest matches the body.
    pub fn integrity_ok(&self) -> bool {
        json_digest(&self.body).is_ok_and(|d| d == self.body_digest)
    }
}

/// Parses a report, rejecting unknown schema versions before anything else.
pub fn load_report(text: &str) -> Result<RunReport, CliError> {
    let raw: Value = serde_json::from_str(text)?;
    let version = raw
        .pointer("/body/schema_version")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Usage("report has no schema version".into()))?;
    if version != REPORT_SCHEMA_VERSION as u64 {
        return Err(CliError::Usage(format!(
            "report schema version {version} is not supported (expected {REPORT_SCHEMA_VERSION})"
        )));
    }
    serde_json::from_value(raw).map_err(|e| CliError::Usage(format!("malformed report: {e}")))
}

fn params_label(c: &CaseReport) -> String {
    match c.m {
        Some(m) => format!("n={} m={} r={}", c.n, m, c.r),
        None => format!("n<={} r<={}", c.n, c.r),
    }
}

/// Human-readable summary. Pure function of the report.
pub fn render(report: &RunReport) -> String {
    let b = &report.body;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "suite {} (vr-lattice {})",
        b.suite.name(),
        b.tool_version
    );
    let p = &b.parameters;
    let _ = write!(out, "parameters n={}", p.n);
    if let Some(m) = p.m {
        let _ = write!(out, " m={m}");
    }
    let _ = write!(out, " r={}", p.r);
    if let Some(a) = p.alpha {
        let _ = write!(out, " alpha={a}");
    }
    out.push('\n');
    if !report.integrity_ok() {
        let _ = writeln!(
            out,
            "WARNING integrity: body digest does not match the report contents"
        );
    }
    if b.cases.is_empty() {
        let _ = writeln!(out, "no cases");
        let _ = writeln!(out, "verdict: PASS (vacuous)");
        return out;
    }
    let labels: Vec<String> = b.cases.iter().map(params_label).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(0);
    for (i, (c, label)) in b.cases.iter().zip(&labels).enumerate() {
        let ms = report.timings.case_ms.get(i).copied().unwrap_or(0);
        let _ = writeln!(
            out,
            "{:<width$}  {}  {:>7} ms  {}",
            label,
            if c.passed { "PASS" } else { "FAIL" },
            ms,
            c.summary
        );
        if b.suite == Suite::Morse {
            render_census(&mut out, c);
        }
    }
    let failed = b.cases.iter().filter(|c| !c.passed).count();
    let _ = writeln!(
        out,
        "verdict: {} ({} of {} cases passed, {} ms total)",
        if b.passed { "PASS" } else { "FAIL" },
        b.cases.len() - failed,
        b.cases.len(),
        report.timings.total_ms
    );
    out
}

fn render_census(out: &mut String, c: &CaseReport) {
    let counts: Vec<u64> = c
        .detail
        .get("counts")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default();
    let bound = c.m.and_then(|m| critical_lower_bound(c.n, m, c.r));
    for (d, &k) in counts.iter().enumerate().filter(|(_, &k)| k > 0) {
        match bound.filter(|_| d == 3) {
            Some(b) => {
                let _ = writeln!(out, "    dim {d}: {k} (>={b})");
            }
            None => {
                let _ = writeln!(out, "    dim {d}: {k}");
            }
        }
    }
}
