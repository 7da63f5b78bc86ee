//! Campaign orchestration: response ingestion, dual-measure scoring,
//! threshold fusion, reporting and synthetic campaign generation.
//!
//! Expertise is computed from the five reference sequences only. Scores on
//! other sequences ride along in [`WorkerRecord`] so the report can average
//! them over the selected experts.

mod parse;
mod report;
mod synth;

pub use parse::{parse_golden, parse_responses, responses_to_csv, ParsedResponses};
pub use report::{
    build_report, histogram, CampaignReport, ExpertCounts, Histograms, ReportConfig, ScoreDocument,
};
pub use synth::{synthesize_campaign, NoiseModel};

use crate::belief::{belief_expertise_worker, BeliefError};
use crate::fagin::{fagin_expertise, RankError};
use crate::ranking::{ReferenceId, ScoreError, ScoreVector};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;
use thiserror::Error;

/// Default threshold on the belief degree for expert selection.
pub const DEFAULT_BELIEF_THRESHOLD: f64 = 0.4;
/// Default threshold on the rank-based degree for expert selection.
pub const DEFAULT_FAGIN_THRESHOLD: f64 = 0.6;
/// Most HITs a worker may submit.
pub const MAX_HITS_PER_WORKER: usize = 4;

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    InvalidRow {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error("{path}: {message}")]
    InvalidFile { path: PathBuf, message: String },
    #[error("{name} threshold {value} must lie in [0, 1]")]
    InvalidThreshold { name: &'static str, value: f64 },
    #[error("invalid noise model `{0}` (expected perfect, gaussian:<sigma>, uniform-random, all-ties or adversarial-reversal)")]
    InvalidNoiseModel(String),
    #[error("bin width {0} must divide [0, 1] into a whole number of bins")]
    InvalidBinWidth(f64),
    #[error("worker {worker} HIT {hit}: {source}")]
    IncompleteHit {
        worker: String,
        hit: String,
        #[source]
        source: ScoreError,
    },
    #[error("worker {0} has no HITs")]
    NoHits(String),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error(transparent)]
    Belief(#[from] BeliefError),
}

/// The known scores of the five reference sequences; must be tie-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenReference {
    scores: ScoreVector,
}

impl GoldenReference {
    pub fn new(scores: ScoreVector) -> Result<Self, RankError> {
        if !scores.has_distinct_scores() {
            return Err(RankError::TiedGolden);
        }
        Ok(Self { scores })
    }

    /// The canonical golden assignment `R1 → 1, …, R5 → 5`.
    pub fn canonical() -> Self {
        Self {
            scores: ScoreVector::golden(),
        }
    }

    pub fn scores(&self) -> &ScoreVector {
        &self.scores
    }
}

/// One worker's campaign contribution: per-HIT scores for every sequence
/// they rated, references and test conditions alike.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkerRecord {
    pub worker_id: String,
    pub panel: String,
    /// hit id → (sequence id → score).
    pub hits: BTreeMap<String, BTreeMap<String, u8>>,
}

impl WorkerRecord {
    /// Extracts the reference score vector of every HIT, in hit-id order.
    /// Each HIT must contain all five references; ingestion and synthesis
    /// guarantee that.
    pub fn reference_hits(&self) -> Result<Vec<ScoreVector>, CampaignError> {
        if self.hits.is_empty() {
            return Err(CampaignError::NoHits(self.worker_id.clone()));
        }
        let mut out = Vec::with_capacity(self.hits.len());
        for (hit_id, sequences) in &self.hits {
            let mut pairs = Vec::with_capacity(ReferenceId::COUNT);
            for id in ReferenceId::ALL {
                if let Some(&score) = sequences.get(id.as_str()) {
                    pairs.push((id, score));
                }
            }
            let vector =
                ScoreVector::from_pairs(&pairs).map_err(|source| CampaignError::IncompleteHit {
                    worker: self.worker_id.clone(),
                    hit: hit_id.clone(),
                    source,
                })?;
            out.push(vector);
        }
        Ok(out)
    }
}

/// Selection thresholds for the two measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub belief: f64,
    pub fagin: f64,
}

impl Thresholds {
    pub fn new(belief: f64, fagin: f64) -> Result<Self, CampaignError> {
        if !(0.0..=1.0).contains(&belief) {
            return Err(CampaignError::InvalidThreshold {
                name: "belief",
                value: belief,
            });
        }
        if !(0.0..=1.0).contains(&fagin) {
            return Err(CampaignError::InvalidThreshold {
                name: "fagin",
                value: fagin,
            });
        }
        Ok(Self { belief, fagin })
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            belief: DEFAULT_BELIEF_THRESHOLD,
            fagin: DEFAULT_FAGIN_THRESHOLD,
        }
    }
}

/// Both expertise degrees and the selection flags for one worker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpertiseScores {
    pub worker_id: String,
    pub belief_degree: f64,
    pub fagin_degree: f64,
    pub is_expert_belief: bool,
    pub is_expert_fagin: bool,
    pub is_expert_fused: bool,
}

/// Scores every worker with both measures and applies the thresholds.
/// A worker is an expert for a measure when the degree strictly exceeds its
/// threshold; the fused flag is the conjunction of both. Output order
/// follows input order.
pub fn score_campaign(
    golden: &GoldenReference,
    workers: &[WorkerRecord],
    penalty: f64,
    thresholds: Thresholds,
) -> Result<Vec<ExpertiseScores>, CampaignError> {
    let mut out = Vec::with_capacity(workers.len());
    for worker in workers {
        let hits = worker.reference_hits()?;
        let belief_degree = belief_expertise_worker(golden.scores(), &hits)?;
        let fagin_degree = fagin_expertise(golden.scores(), &hits, penalty)?;
        let is_expert_belief = belief_degree > thresholds.belief;
        let is_expert_fagin = fagin_degree > thresholds.fagin;
        out.push(ExpertiseScores {
            worker_id: worker.worker_id.clone(),
            belief_degree,
            fagin_degree,
            is_expert_belief,
            is_expert_fagin,
            is_expert_fused: is_expert_belief && is_expert_fagin,
        });
    }
    Ok(out)
}
