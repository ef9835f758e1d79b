//! Batch corpus runner.
//!
//! A corpus is a CSV with columns `id,kind,payload,known_volume,source`.
//! `kind` is `pd` or `plat`; a plat payload is the plat text with `;` in
//! place of newlines. Known volumes are ingested, never computed, and each
//! one must carry a source citation.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CorpusError;
use crate::plat::PlatSpec;
use crate::report::{analyze, round_sig, AnalysisInput, AnalysisOptions, AnalysisReport};

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CorpusRecord {
    pub id: String,
    pub kind: String,
    pub payload: String,
    #[serde(default, deserialize_with = "csv::invalid_option")]
    pub known_volume: Option<f64>,
    #[serde(default)]
    pub source: String,
}

impl CorpusRecord {
    pub fn input(&self) -> Result<AnalysisInput, CorpusError> {
        match self.kind.as_str() {
            "pd" => Ok(AnalysisInput::Pd(self.payload.clone())),
            "plat" => {
                let spec = PlatSpec::parse(&self.payload).map_err(|e| CorpusError::BadRecord {
                    id: self.id.clone(),
                    msg: e.to_string(),
                })?;
                Ok(AnalysisInput::Plat(spec))
            }
            other => Err(CorpusError::BadKind {
                id: self.id.clone(),
                kind: other.to_string(),
            }),
        }
    }
}

pub fn read_corpus(path: &Path) -> Result<Vec<CorpusRecord>, CorpusError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let mut records = Vec::new();
    for row in reader.deserialize() {
        records.push(row?);
    }
    Ok(records)
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordOutcome {
    pub id: String,
    pub ok: bool,
    pub error: Option<String>,
    pub falsified: bool,
    pub identity_failures: usize,
    pub oracle_match: Option<bool>,
    pub sandwich_pass: Option<bool>,
}

/// Aggregate results over a corpus run.
#[derive(Clone, Debug, Serialize)]
pub struct BatchSummary {
    pub records: usize,
    pub errors: usize,
    pub identities_checked: usize,
    pub identities_failed: usize,
    pub identity_pass_rate: f64,
    pub oracle_checked: usize,
    pub oracle_matched: usize,
    pub oracle_match_rate: f64,
    pub sandwich_checked: usize,
    pub sandwich_passed: usize,
    pub sandwich_pass_rate: f64,
    pub outcomes: Vec<RecordOutcome>,
}

impl BatchSummary {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.error.is_some() || !o.falsified)
            && self.identities_failed == 0
            && self.oracle_checked == self.oracle_matched
            && self.sandwich_checked == self.sandwich_passed
    }
}

fn rate(pass: usize, total: usize) -> f64 {
    if total == 0 {
        1.0
    } else {
        round_sig(pass as f64 / total as f64)
    }
}

/// Analyze every record; per-record errors are collected, not fatal.
/// When `out_dir` is given, each record's report lands in `<id>.json`.
pub fn batch(
    records: &[CorpusRecord],
    oracle_limit: usize,
    out_dir: Option<&Path>,
) -> Result<BatchSummary, CorpusError> {
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
    }
    let mut outcomes = Vec::new();
    let mut errors = 0;
    let mut identities_checked = 0;
    let mut identities_failed = 0;
    let mut oracle_checked = 0;
    let mut oracle_matched = 0;
    let mut sandwich_checked = 0;
    let mut sandwich_passed = 0;

    for record in records {
        let run = record.input().and_then(|input| {
            let options = AnalysisOptions {
                oracle: record_oracle_eligible(record, oracle_limit),
                oracle_limit,
                known_volume: record
                    .known_volume
                    .map(|v| (v, record.source.clone())),
                name: Some(record.id.clone()),
                ..Default::default()
            };
            analyze(&input, &options).map_err(|e| CorpusError::BadRecord {
                id: record.id.clone(),
                msg: e.to_string(),
            })
        });

        match run {
            Ok(report) => {
                let id_failures = report
                    .identities
                    .iter()
                    .filter(|i| i.holds == Some(false))
                    .count();
                identities_checked += report
                    .identities
                    .iter()
                    .filter(|i| i.applicable)
                    .count();
                identities_failed += id_failures;
                if let Some(m) = report.beta_prime.matches {
                    oracle_checked += 1;
                    if m {
                        oracle_matched += 1;
                    }
                }
                let sandwich_pass = report
                    .sandwich
                    .as_ref()
                    .map(|s| s.iter().all(|v| v.satisfied));
                if let Some(pass) = sandwich_pass {
                    sandwich_checked += 1;
                    if pass {
                        sandwich_passed += 1;
                    }
                }
                if let Some(dir) = out_dir {
                    let path = dir.join(format!("{}.json", sanitize(&record.id)));
                    fs::write(path, render_report(&report))?;
                }
                outcomes.push(RecordOutcome {
                    id: record.id.clone(),
                    ok: true,
                    error: None,
                    falsified: report.falsified,
                    identity_failures: id_failures,
                    oracle_match: report.beta_prime.matches,
                    sandwich_pass,
                });
            }
            Err(e) => {
                errors += 1;
                outcomes.push(RecordOutcome {
                    id: record.id.clone(),
                    ok: false,
                    error: Some(e.to_string()),
                    falsified: false,
                    identity_failures: 0,
                    oracle_match: None,
                    sandwich_pass: None,
                });
            }
        }
    }

    Ok(BatchSummary {
        records: records.len(),
        errors,
        identities_checked,
        identities_failed,
        identity_pass_rate: rate(identities_checked - identities_failed, identities_checked),
        oracle_checked,
        oracle_matched,
        oracle_match_rate: rate(oracle_matched, oracle_checked),
        sandwich_checked,
        sandwich_passed,
        sandwich_pass_rate: rate(sandwich_passed, sandwich_checked),
        outcomes,
    })
}

fn record_oracle_eligible(record: &CorpusRecord, limit: usize) -> bool {
    // Cheap pre-filter: count X( terms / plat crossings before analyzing.
    match record.kind.as_str() {
        "pd" => record.payload.matches("X(").count() <= limit,
        "plat" => PlatSpec::parse(&record.payload)
            .map(|s| s.crossing_total() <= limit)
            .unwrap_or(false),
        _ => false,
    }
}

fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

pub fn render_report(report: &AnalysisReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}
