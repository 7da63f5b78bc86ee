//! Seeded synthetic campaigns for desk-scale experiments.
//!
//! Every synthetic worker submits four HITs of twelve sequences: the five
//! references plus seven test conditions `T1..T7` whose underlying quality
//! cycles through 1..=5. The noise model perturbs the underlying score of
//! each sequence independently; generation is fully determined by the seed.

use super::{CampaignError, WorkerRecord, MAX_HITS_PER_WORKER};
use crate::ranking::{ReferenceId, ScoreVector, SCORE_MAX, SCORE_MIN};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Number of non-reference test conditions per HIT.
pub const TEST_CONDITIONS: usize = 7;

/// How a synthetic worker distorts the underlying scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    /// Reproduces the underlying scores exactly.
    Perfect,
    /// Adds centered Gaussian noise, rounds, and clamps into 1..=5.
    Gaussian { sigma: f64 },
    /// Ignores the sequence entirely: uniform scores in 1..=5.
    UniformRandom,
    /// Rates everything 5 — the refuse-to-rank answer.
    AllTies,
    /// Inverts the scale: score 6 − underlying.
    AdversarialReversal,
}

impl NoiseModel {
    fn validate(self) -> Result<Self, CampaignError> {
        if let NoiseModel::Gaussian { sigma } = self {
            if !(sigma.is_finite() && sigma > 0.0) {
                return Err(CampaignError::InvalidNoiseModel(format!(
                    "gaussian:{sigma}"
                )));
            }
        }
        Ok(self)
    }

    /// Stable worker-id prefix.
    fn slug(self) -> &'static str {
        match self {
            NoiseModel::Perfect => "perfect",
            NoiseModel::Gaussian { .. } => "gaussian",
            NoiseModel::UniformRandom => "uniform-random",
            NoiseModel::AllTies => "all-ties",
            NoiseModel::AdversarialReversal => "adversarial-reversal",
        }
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseModel::Gaussian { sigma } => write!(f, "gaussian:{sigma}"),
            other => f.write_str(other.slug()),
        }
    }
}

impl FromStr for NoiseModel {
    type Err = CampaignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let model = match s {
            "perfect" => NoiseModel::Perfect,
            "uniform-random" => NoiseModel::UniformRandom,
            "all-ties" => NoiseModel::AllTies,
            "adversarial-reversal" => NoiseModel::AdversarialReversal,
            other => {
                let sigma = other
                    .strip_prefix("gaussian:")
                    .and_then(|raw| raw.parse::<f64>().ok())
                    .ok_or_else(|| CampaignError::InvalidNoiseModel(other.to_string()))?;
                NoiseModel::Gaussian { sigma }
            }
        };
        model.validate()
    }
}

/// The sequences of one HIT with their underlying scores: the references at
/// their golden values, then `T1..T7` cycling 1..=5.
fn underlying_sequence_scores() -> Vec<(String, u8)> {
    let golden = ScoreVector::golden();
    let mut out: Vec<(String, u8)> = ReferenceId::ALL
        .iter()
        .map(|&id| (id.as_str().to_string(), golden.score(id)))
        .collect();
    for t in 1..=TEST_CONDITIONS {
        let score = ((t - 1) % 5) as u8 + 1;
        out.push((format!("T{t}"), score));
    }
    out
}

/// Generates `n_workers` synthetic workers under one noise model.
/// Deterministic for a fixed seed: same inputs, same records.
pub fn synthesize_campaign(
    n_workers: usize,
    model: NoiseModel,
    seed: u64,
) -> Result<Vec<WorkerRecord>, CampaignError> {
    let model = model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gaussian = match model {
        NoiseModel::Gaussian { sigma } => {
            Some(Normal::new(0.0, sigma).expect("sigma validated above"))
        }
        _ => None,
    };
    let sequences = underlying_sequence_scores();

    let mut workers = Vec::with_capacity(n_workers);
    for index in 0..n_workers {
        let mut hits = BTreeMap::new();
        for hit in 1..=MAX_HITS_PER_WORKER {
            let mut scored = BTreeMap::new();
            for (sequence_id, underlying) in &sequences {
                let score = match model {
                    NoiseModel::Perfect => *underlying,
                    NoiseModel::AllTies => SCORE_MAX,
                    NoiseModel::AdversarialReversal => SCORE_MAX + SCORE_MIN - underlying,
                    NoiseModel::UniformRandom => rng.gen_range(SCORE_MIN..=SCORE_MAX),
                    NoiseModel::Gaussian { .. } => {
                        let noise = gaussian.expect("distribution built above").sample(&mut rng);
                        (f64::from(*underlying) + noise)
                            .round()
                            .clamp(f64::from(SCORE_MIN), f64::from(SCORE_MAX))
                            as u8
                    }
                };
                scored.insert(sequence_id.clone(), score);
            }
            hits.insert(format!("hit{hit}"), scored);
        }
        workers.push(WorkerRecord {
            worker_id: format!("{}-{:05}", model.slug(), index + 1),
            panel: format!("panel{}", index % 4 + 1),
            hits,
        });
    }
    Ok(workers)
}
