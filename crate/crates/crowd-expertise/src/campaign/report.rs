//! Campaign report assembly and deterministic serialization.

use super::{CampaignError, ExpertiseScores, WorkerRecord};
use crate::fagin::DEFAULT_TIE_PENALTY;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// Scoring parameters echoed into every output for reproducibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub penalty: f64,
    pub belief_threshold: f64,
    pub fagin_threshold: f64,
    pub bin_width: f64,
    pub seed: Option<u64>,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            penalty: DEFAULT_TIE_PENALTY,
            belief_threshold: super::DEFAULT_BELIEF_THRESHOLD,
            fagin_threshold: super::DEFAULT_FAGIN_THRESHOLD,
            bin_width: 0.1,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpertCounts {
    pub belief: usize,
    pub fagin: usize,
    pub fused: usize,
}

/// Degree histograms per measure; bin counts always sum to the worker count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histograms {
    pub belief: Vec<u32>,
    pub fagin: Vec<u32>,
}

/// Full campaign report. Workers are sorted by id and all maps are ordered,
/// so rebuilding from the same inputs is byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: ReportConfig,
    pub workers: Vec<ExpertiseScores>,
    pub expert_counts: ExpertCounts,
    pub histograms: Histograms,
    /// Mean score per sequence over the fused experts only.
    pub sequence_means: BTreeMap<String, f64>,
}

/// Lighter output of the `score` command: the per-worker degrees only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreDocument {
    pub config: ReportConfig,
    pub workers: Vec<ExpertiseScores>,
}

impl ScoreDocument {
    pub fn new(mut scores: Vec<ExpertiseScores>, config: ReportConfig) -> Self {
        scores.sort_by(|a, b| a.worker_id.cmp(&b.worker_id));
        Self {
            config,
            workers: scores,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        to_pretty_json(self)
    }
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut json = serde_json::to_string_pretty(value).expect("report types serialize");
    json.push('\n');
    json
}

fn bin_count(bin_width: f64) -> Result<usize, CampaignError> {
    if !(bin_width > 0.0 && bin_width <= 1.0) {
        return Err(CampaignError::InvalidBinWidth(bin_width));
    }
    let bins = (1.0 / bin_width).round();
    if ((1.0 / bin_width) - bins).abs() > 1e-9 {
        return Err(CampaignError::InvalidBinWidth(bin_width));
    }
    Ok(bins as usize)
}

/// Bins degrees into left-closed intervals of `bin_width`; the last bin also
/// includes 1.0.
pub fn histogram(
    degrees: impl IntoIterator<Item = f64>,
    bin_width: f64,
) -> Result<Vec<u32>, CampaignError> {
    let bins = bin_count(bin_width)?;
    let mut counts = vec![0u32; bins];
    for degree in degrees {
        let bin = ((degree / bin_width).floor() as usize).min(bins - 1);
        counts[bin] += 1;
    }
    Ok(counts)
}

/// Assembles the campaign report from the scored degrees and the raw
/// records. Sequence means run over every sequence the fused experts rated,
/// test conditions included.
pub fn build_report(
    scores: &[ExpertiseScores],
    workers: &[WorkerRecord],
    config: ReportConfig,
) -> Result<CampaignReport, CampaignError> {
    let mut sorted: Vec<ExpertiseScores> = scores.to_vec();
    sorted.sort_by(|a, b| a.worker_id.cmp(&b.worker_id));

    let histograms = Histograms {
        belief: histogram(sorted.iter().map(|s| s.belief_degree), config.bin_width)?,
        fagin: histogram(sorted.iter().map(|s| s.fagin_degree), config.bin_width)?,
    };
    let expert_counts = ExpertCounts {
        belief: sorted.iter().filter(|s| s.is_expert_belief).count(),
        fagin: sorted.iter().filter(|s| s.is_expert_fagin).count(),
        fused: sorted.iter().filter(|s| s.is_expert_fused).count(),
    };

    let experts: BTreeSet<&str> = sorted
        .iter()
        .filter(|s| s.is_expert_fused)
        .map(|s| s.worker_id.as_str())
        .collect();
    let mut sums: BTreeMap<String, (f64, u32)> = BTreeMap::new();
    for worker in workers {
        if !experts.contains(worker.worker_id.as_str()) {
            continue;
        }
        for sequences in worker.hits.values() {
            for (sequence_id, &score) in sequences {
                let entry = sums.entry(sequence_id.clone()).or_insert((0.0, 0));
                entry.0 += f64::from(score);
                entry.1 += 1;
            }
        }
    }
    let sequence_means = sums
        .into_iter()
        .map(|(id, (sum, n))| (id, sum / f64::from(n)))
        .collect();

    Ok(CampaignReport {
        config,
        workers: sorted,
        expert_counts,
        histograms,
        sequence_means,
    })
}

impl CampaignReport {
    pub fn to_json_pretty(&self) -> String {
        to_pretty_json(self)
    }

    /// Histogram CSV with one row per measure and bin:
    /// `measure,bin_start,bin_end,count`.
    pub fn histograms_csv(&self) -> String {
        let mut out = String::from("measure,bin_start,bin_end,count\n");
        for (measure, counts) in [
            ("belief", &self.histograms.belief),
            ("fagin", &self.histograms.fagin),
        ] {
            let bins = counts.len();
            for (i, count) in counts.iter().enumerate() {
                let start = i as f64 / bins as f64;
                let end = (i + 1) as f64 / bins as f64;
                writeln!(out, "{measure},{start},{end},{count}").expect("writing to string");
            }
        }
        out
    }

    /// Sequence means CSV: `sequence_id,mean_score`.
    pub fn sequence_means_csv(&self) -> String {
        let mut out = String::from("sequence_id,mean_score\n");
        for (id, mean) in &self.sequence_means {
            writeln!(out, "{id},{mean:.6}").expect("writing to string");
        }
        out
    }
}
