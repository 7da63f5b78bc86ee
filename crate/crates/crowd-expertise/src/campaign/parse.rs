//! CSV ingestion for golden references and campaign responses.
//!
//! Structural problems — unreadable files, missing columns, bad scores,
//! duplicate rows — are hard errors carrying the offending line number.
//! Coverage problems are soft: a HIT missing a reference is dropped, and a
//! worker left without complete HITs (or with more than four) is excluded;
//! both emit warnings instead of failing the whole file.

use super::{CampaignError, GoldenReference, WorkerRecord, MAX_HITS_PER_WORKER};
use crate::ranking::{ReferenceId, ScoreVector, SCORE_MAX, SCORE_MIN};
use std::collections::BTreeMap;
use std::path::Path;

/// Validated worker records plus the warnings produced while ingesting.
#[derive(Debug, Clone)]
pub struct ParsedResponses {
    /// Workers in ascending `worker_id` order.
    pub workers: Vec<WorkerRecord>,
    pub warnings: Vec<String>,
}

const GOLDEN_COLUMNS: [&str; 2] = ["sequence_id", "score"];
const RESPONSE_COLUMNS: [&str; 5] = ["worker_id", "panel", "hit_id", "sequence_id", "score"];

fn io_error(path: &Path, source: std::io::Error) -> CampaignError {
    CampaignError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn file_error(path: &Path, message: impl Into<String>) -> CampaignError {
    CampaignError::InvalidFile {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn row_error(path: &Path, line: u64, message: impl Into<String>) -> CampaignError {
    CampaignError::InvalidRow {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn csv_error(path: &Path, err: csv::Error) -> CampaignError {
    if err.is_io_error() {
        match err.into_kind() {
            csv::ErrorKind::Io(source) => io_error(path, source),
            _ => unreachable!("is_io_error guarantees an Io kind"),
        }
    } else {
        let line = err.position().map(|p| p.line());
        match line {
            Some(line) => row_error(path, line, err.to_string()),
            None => file_error(path, err.to_string()),
        }
    }
}

/// Finds the index of every required column; rejects missing or unexpected
/// headers.
fn column_indices(
    path: &Path,
    headers: &csv::StringRecord,
    required: &[&str],
) -> Result<Vec<usize>, CampaignError> {
    for header in headers.iter() {
        if !required.contains(&header) {
            return Err(file_error(path, format!("unexpected column `{header}`")));
        }
    }
    required
        .iter()
        .map(|name| {
            headers
                .iter()
                .position(|h| h == *name)
                .ok_or_else(|| file_error(path, format!("missing column `{name}`")))
        })
        .collect()
}

fn parse_score(path: &Path, line: u64, raw: &str) -> Result<u8, CampaignError> {
    let score: u8 = raw
        .trim()
        .parse()
        .map_err(|_| row_error(path, line, format!("invalid score `{raw}`")))?;
    if !(SCORE_MIN..=SCORE_MAX).contains(&score) {
        return Err(row_error(
            path,
            line,
            format!("score {score} out of range {SCORE_MIN}..={SCORE_MAX}"),
        ));
    }
    Ok(score)
}

/// Reads a golden reference file with header `sequence_id,score` and exactly
/// one row per reference.
pub fn parse_golden(path: impl AsRef<Path>) -> Result<GoldenReference, CampaignError> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let idx = column_indices(path, &headers, &GOLDEN_COLUMNS)?;

    let mut pairs: Vec<(ReferenceId, u8)> = Vec::new();
    let mut seen_lines: BTreeMap<ReferenceId, u64> = BTreeMap::new();
    let mut score_lines: BTreeMap<u8, u64> = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let raw_id = record.get(idx[0]).unwrap_or("").trim();
        let id: ReferenceId = raw_id
            .parse()
            .map_err(|_| row_error(path, line, format!("unknown sequence id `{raw_id}`")))?;
        if seen_lines.insert(id, line).is_some() {
            return Err(row_error(path, line, format!("duplicate id {id}")));
        }
        let score = parse_score(path, line, record.get(idx[1]).unwrap_or(""))?;
        if let Some(&previous) = score_lines.get(&score) {
            return Err(row_error(
                path,
                line,
                format!(
                    "score {score} already used on line {previous}; golden scores must be distinct"
                ),
            ));
        }
        score_lines.insert(score, line);
        pairs.push((id, score));
    }

    let scores = ScoreVector::from_pairs(&pairs).map_err(|e| file_error(path, e.to_string()))?;
    GoldenReference::new(scores).map_err(|e| file_error(path, e.to_string()))
}

/// Reads a responses file with header
/// `worker_id,panel,hit_id,sequence_id,score`.
///
/// Rows for non-reference sequences are kept on the record for mean-score
/// reporting. Returns workers sorted by id together with exclusion warnings.
pub fn parse_responses(path: impl AsRef<Path>) -> Result<ParsedResponses, CampaignError> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let idx = column_indices(path, &headers, &RESPONSE_COLUMNS)?;

    struct Draft {
        panel: String,
        panel_line: u64,
        hits: BTreeMap<String, BTreeMap<String, u8>>,
    }
    let mut drafts: BTreeMap<String, Draft> = BTreeMap::new();

    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(idx[i]).unwrap_or("").trim().to_string();
        let (worker_id, panel, hit_id, sequence_id) = (field(0), field(1), field(2), field(3));
        for (value, name) in [
            (&worker_id, "worker_id"),
            (&panel, "panel"),
            (&hit_id, "hit_id"),
            (&sequence_id, "sequence_id"),
        ] {
            if value.is_empty() {
                return Err(row_error(path, line, format!("empty {name}")));
            }
        }
        let score = parse_score(path, line, record.get(idx[4]).unwrap_or(""))?;

        let draft = drafts.entry(worker_id.clone()).or_insert_with(|| Draft {
            panel: panel.clone(),
            panel_line: line,
            hits: BTreeMap::new(),
        });
        if draft.panel != panel {
            return Err(row_error(
                path,
                line,
                format!(
                    "worker {worker_id} is in panel `{}` (line {}) but this row says `{panel}`",
                    draft.panel, draft.panel_line
                ),
            ));
        }
        if draft
            .hits
            .entry(hit_id.clone())
            .or_default()
            .insert(sequence_id.clone(), score)
            .is_some()
        {
            return Err(row_error(
                path,
                line,
                format!(
                    "duplicate row for worker {worker_id}, HIT {hit_id}, sequence {sequence_id}"
                ),
            ));
        }
    }

    let mut workers = Vec::with_capacity(drafts.len());
    let mut warnings = Vec::new();
    for (worker_id, draft) in drafts {
        let mut hits = BTreeMap::new();
        for (hit_id, sequences) in draft.hits {
            let missing: Vec<&str> = ReferenceId::ALL
                .iter()
                .map(|id| id.as_str())
                .filter(|id| !sequences.contains_key(*id))
                .collect();
            if missing.is_empty() {
                hits.insert(hit_id, sequences);
            } else {
                warnings.push(format!(
                    "worker {worker_id}: HIT {hit_id} dropped, missing {}",
                    missing.join(", ")
                ));
            }
        }
        if hits.is_empty() {
            warnings.push(format!("worker {worker_id} excluded: no complete HITs"));
            continue;
        }
        if hits.len() > MAX_HITS_PER_WORKER {
            warnings.push(format!(
                "worker {worker_id} excluded: {} HITs exceeds the maximum of {MAX_HITS_PER_WORKER}",
                hits.len()
            ));
            continue;
        }
        workers.push(WorkerRecord {
            worker_id,
            panel: draft.panel,
            hits,
        });
    }
    Ok(ParsedResponses { workers, warnings })
}

/// Renders worker records back into the responses CSV format, preserving the
/// given worker order (hits and sequences are emitted in key order).
pub fn responses_to_csv(workers: &[WorkerRecord]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(RESPONSE_COLUMNS)
        .expect("writing to memory cannot fail");
    for worker in workers {
        for (hit_id, sequences) in &worker.hits {
            for (sequence_id, score) in sequences {
                writer
                    .write_record([
                        worker.worker_id.as_str(),
                        worker.panel.as_str(),
                        hit_id.as_str(),
                        sequence_id.as_str(),
                        &score.to_string(),
                    ])
                    .expect("writing to memory cannot fail");
            }
        }
    }
    String::from_utf8(writer.into_inner().expect("writing to memory cannot fail"))
        .expect("csv output is UTF-8")
}
