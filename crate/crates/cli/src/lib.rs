//! Batch verification harness: runs named suites in parallel, assembles
//! versioned reports and serializes them as JSON, text or CSV.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use paramodular::verify::{CaseOutcome, Mode, Suite, VerifyConfig, Witness};

/// Bumped whenever the report layout changes.
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "PARAMODULAR_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] paramodular::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::Usage(format!("unknown format `{s}`"))),
        }
    }
}

/// Suite names accepted on the command line, including short aliases.
pub fn parse_suite(s: &str) -> Result<Suite> {
    match s {
        "oldforms" => Ok(Suite::OldformBases),
        "raising" => Ok(Suite::Gsp4Raising),
        other => other.parse().map_err(|_| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Usage(format!(
                "unknown suite `{other}`; expected one of {}",
                names.join(", ")
            ))
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    #[serde(flatten)]
    pub outcome: CaseOutcome,
    /// Wall time in milliseconds; excluded from the determinism contract.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub conditional: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub toolkit_version: String,
    pub suite: Suite,
    pub config: VerifyConfig,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(config: VerifyConfig, mut records: Vec<Record>) -> Self {
        records.sort_by_key(|r| r.outcome.index);
        let summary = Summary {
            cases: records.len(),
            passed: records.iter().filter(|r| r.outcome.passed).count(),
            failed: records.iter().filter(|r| !r.outcome.passed).count(),
            conditional: records.iter().filter(|r| r.outcome.conditional).count(),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            toolkit_version: TOOLKIT_VERSION.to_string(),
            suite: config.suite,
            config,
            summary,
            records,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Drops the timing fields, leaving only deterministic content.
    pub fn without_timing(mut self) -> Self {
        for r in &mut self.records {
            r.elapsed_ms = None;
        }
        self
    }
}

/// Plans the suite and runs its cases on the current rayon pool.
pub fn run_suite(config: &VerifyConfig) -> Result<Report> {
    let cases = paramodular::verify::plan(config)?;
    let records: Vec<Record> = cases
        .par_iter()
        .map(|case| {
            let start = Instant::now();
            let outcome = paramodular::verify::run_case(config, case);
            Record {
                outcome,
                elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
            }
        })
        .collect();
    Ok(Report::new(config.clone(), records))
}

/// Builds a thread pool honoring an explicit cap, falling back to rayon's default.
pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Usage(format!("{THREADS_ENV} must be positive")));
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Usage(e.to_string()))
}

pub fn emit(report: &Report, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Text => emit_text(report, out)?,
        Format::Csv => emit_csv(report, out)?,
    }
    Ok(())
}

fn emit_text(report: &Report, out: &mut dyn Write) -> Result<()> {
    for r in &report.records {
        let o = &r.outcome;
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        let flag = if o.conditional { " [conditional]" } else { "" };
        writeln!(out, "{verdict} {}{flag}", o.label)?;
        if let Some(d) = &o.detail {
            writeln!(out, "    {d}")?;
        }
        if let Some(w) = &o.witness {
            writeln!(
                out,
                "    at {}: expected {}, got {}",
                w.location, w.expected, w.actual
            )?;
        }
    }
    let s = &report.summary;
    writeln!(
        out,
        "{}: {} cases, {} passed, {} failed, {} conditional",
        report.suite, s.cases, s.passed, s.failed, s.conditional
    )?;
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_csv(report: &Report, out: &mut dyn Write) -> Result<()> {
    let keys: BTreeSet<&str> = report
        .records
        .iter()
        .flat_map(|r| r.outcome.params.keys().map(String::as_str))
        .collect();
    let mut header: Vec<&str> = vec!["index", "label"];
    header.extend(keys.iter().copied());
    header.extend(["passed", "conditional", "location", "expected", "actual"]);
    writeln!(out, "{}", header.join(","))?;
    for r in &report.records {
        let o = &r.outcome;
        let mut row = vec![o.index.to_string(), o.label.clone()];
        row.extend(
            keys.iter()
                .map(|k| o.params.get(*k).cloned().unwrap_or_default()),
        );
        row.push(o.passed.to_string());
        row.push(o.conditional.to_string());
        let w = o.witness.as_ref();
        row.push(w.map(|w| w.location.clone()).unwrap_or_default());
        row.push(w.map(|w| w.expected.clone()).unwrap_or_default());
        row.push(w.map(|w| w.actual.clone()).unwrap_or_default());
        let row: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failing_record() -> Record {
        Record {
            outcome: CaseOutcome {
                index: 0,
                label: "demo".into(),
                params: [("n".to_string(), "2".to_string())].into(),
                passed: false,
                conditional: false,
                witness: Some(Witness {
                    location: "coefficient of Y^3".into(),
                    expected: "0".into(),
                    actual: "1".into(),
                }),
                detail: None,
            },
            elapsed_ms: None,
        }
    }

    #[test]
    fn empty_report_is_valid_json() {
        let report = Report::new(VerifyConfig::for_suite(Suite::Dims), vec![]);
        let mut buf = Vec::new();
        emit(&report, Format::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["records"].as_array().unwrap().len(), 0);
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        let mut csv = Vec::new();
        emit(&report, Format::Csv, &mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 1);
    }

    #[test]
    fn failing_case_carries_witness() {
        let report = Report::new(VerifyConfig::for_suite(Suite::Dims), vec![failing_record()]);
        assert!(!report.all_passed());
        let mut buf = Vec::new();
        emit(&report, Format::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["records"][0]["witness"]["actual"], "1");
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(csv_field("(1,0)"), "\"(1,0)\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn suite_aliases() {
        assert_eq!(parse_suite("oldforms").unwrap(), Suite::OldformBases);
        assert_eq!(parse_suite("fe").unwrap(), Suite::Fe);
        assert!(parse_suite("bogus").is_err());
    }
}
