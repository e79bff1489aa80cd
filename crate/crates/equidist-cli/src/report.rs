//! Run reports: one JSON document per invocation.

use std::time::{Instant, SystemTime, UNIX_EPOCH};

use equidist::verify::{CheckRecord, SuiteReport};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Serialize)]
pub struct Meta {
    pub wall_clock_s: f64,
    pub started_unix: u64,
    pub threads: usize,
}

#[derive(Serialize)]
pub struct Section {
    pub suite: String,
    pub anchor: String,
    pub records: Vec<CheckRecord>,
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub suites: Vec<Section>,
    /// Tabulated output (Whittaker table, cusp rows, ...), when any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    pub summary: Summary,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

pub struct Builder {
    command: String,
    seed: Option<u64>,
    suites: Vec<Section>,
    data: Option<Value>,
    start: Instant,
    started_unix: u64,
}

impl Builder {
    pub fn new(command: impl Into<String>, seed: Option<u64>) -> Self {
        Builder {
            command: command.into(),
            seed,
            suites: Vec::new(),
            data: None,
            start: Instant::now(),
            started_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn suite(&mut self, r: SuiteReport) -> &mut Self {
        self.suites.push(Section {
            suite: r.suite,
            anchor: r.anchor.to_string(),
            records: r.checks,
        });
        self
    }

    pub fn section(&mut self, suite: &str, anchor: &str, records: Vec<CheckRecord>) -> &mut Self {
        self.suites.push(Section {
            suite: suite.into(),
            anchor: anchor.into(),
            records,
        });
        self
    }

    pub fn data(&mut self, v: Value) -> &mut Self {
        self.data = Some(v);
        self
    }

    pub fn finish(self, with_meta: bool) -> RunReport {
        let all: Vec<&CheckRecord> = self.suites.iter().flat_map(|s| s.records.iter()).collect();
        let failed = all.iter().filter(|r| !r.pass).count();
        let skipped = all.iter().filter(|r| r.skipped).count();
        let summary = Summary {
            total: all.len(),
            passed: all.len() - failed - skipped,
            failed,
            skipped,
        };
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            version: env!("CARGO_PKG_VERSION"),
            seed: self.seed,
            suites: self.suites,
            data: self.data,
            pass: failed == 0,
            summary,
            meta: with_meta.then(|| Meta {
                wall_clock_s: self.start.elapsed().as_secs_f64(),
                started_unix: self.started_unix,
                threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            }),
        }
    }
}

impl RunReport {
    /// Only skipped records: every requested point failed a hypothesis.
    pub fn all_skipped(&self) -> bool {
        self.summary.total > 0 && self.summary.skipped == self.summary.total
    }

    pub fn human(&self, verbose: bool) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let fails = s.records.iter().filter(|r| !r.pass).count();
            let skips = s.records.iter().filter(|r| r.skipped).count();
            out.push_str(&format!(
                "{} [{}]: {} records, {} failed, {} skipped\n",
                s.suite,
                s.anchor,
                s.records.len(),
                fails,
                skips
            ));
            for r in &s.records {
                if verbose || !r.pass {
                    let tag = if r.skipped {
                        "SKIP"
                    } else if r.pass {
                        "ok"
                    } else {
                        "FAIL"
                    };
                    out.push_str(&format!("  {:4} {}: {}\n", tag, r.case, r.detail));
                }
            }
        }
        out.push_str(&format!(
            "{}: {} ({} passed, {} failed, {} skipped)\n",
            self.command,
            if self.pass { "PASS" } else { "FAIL" },
            self.summary.passed,
            self.summary.failed,
            self.summary.skipped
        ));
        out
    }
}
