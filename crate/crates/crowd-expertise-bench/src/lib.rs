//! Shared fixtures for the expertise benchmarks.

use crowd_expertise::campaign::{synthesize_campaign, NoiseModel, WorkerRecord};
use crowd_expertise::ScoreVector;

/// The running tied-worker example: scores (2, 1, 2, 4, 5).
pub fn tied_worker() -> ScoreVector {
    ScoreVector::new([2, 1, 2, 4, 5]).expect("valid scores")
}

/// A seed-fixed mixed population for campaign-level benchmarks.
pub fn mixed_population(per_group: usize) -> Vec<WorkerRecord> {
    let mut workers = synthesize_campaign(per_group, NoiseModel::Perfect, 21).expect("valid model");
    workers.extend(
        synthesize_campaign(per_group, NoiseModel::Gaussian { sigma: 1.0 }, 22)
            .expect("valid model"),
    );
    workers.extend(
        synthesize_campaign(per_group, NoiseModel::UniformRandom, 23).expect("valid model"),
    );
    workers
}
