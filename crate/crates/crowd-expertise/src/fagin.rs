//! Rank-distance expertise measure: Kendall distance with a tie penalty,
//! aggregated over HITs with the Hausdorff rule.
//!
//! Each of the ten unordered reference pairs is charged 0 when the worker
//! orders it like the golden list, 1 when the worker reverses it, and the
//! penalty `p ∈ [0.5, 1]` when the worker ties it (puts both references in
//! the same bucket). The golden list never contains ties, so the both-sides
//! tied case cannot arise; a tied golden input is rejected outright.
//! Dividing by the ten pairs normalizes the distance into `[0, 1]`.
//!
//! With this construction an all-ties response costs exactly `10·p`, i.e. a
//! normalized distance of 0.5 at the default penalty — the measure is far
//! more forgiving to refuse-to-rank answers than the belief measure is.

use crate::ranking::{ReferenceId, ScoreVector};
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

/// Default tie penalty.
pub const DEFAULT_TIE_PENALTY: f64 = 0.5;

/// Number of unordered pairs among the five references.
pub const UNORDERED_PAIRS: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RankError {
    #[error("tie penalty {0} must lie in [0.5, 1]")]
    InvalidPenalty(f64),
    #[error("golden scores must be pairwise distinct")]
    TiedGolden,
    #[error("HIT list set must hold 1 to 4 score vectors, got {0}")]
    InvalidHitCount(usize),
}

/// Penalty charged to one unordered reference pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairPenalty {
    /// The pair, ordered by reference id.
    pub pair: (ReferenceId, ReferenceId),
    /// 0 (concordant), 1 (reversed) or the tie penalty.
    pub penalty: f64,
}

fn validate_penalty(penalty: f64) -> Result<(), RankError> {
    if !(0.5..=1.0).contains(&penalty) {
        return Err(RankError::InvalidPenalty(penalty));
    }
    Ok(())
}

fn validate_golden(golden: &ScoreVector) -> Result<(), RankError> {
    if !golden.has_distinct_scores() {
        return Err(RankError::TiedGolden);
    }
    Ok(())
}

fn penalty_for(
    golden: &ScoreVector,
    worker: &ScoreVector,
    a: ReferenceId,
    b: ReferenceId,
    penalty: f64,
) -> f64 {
    // Orient the pair by the golden order: `low` is ranked worse there.
    let (low, high) = if golden.score(a) < golden.score(b) {
        (a, b)
    } else {
        (b, a)
    };
    match worker.score(low).cmp(&worker.score(high)) {
        Ordering::Less => 0.0,
        Ordering::Equal => penalty,
        Ordering::Greater => 1.0,
    }
}

/// Per-pair penalties for all ten unordered pairs, in id order.
pub fn pair_penalties(
    golden: &ScoreVector,
    worker: &ScoreVector,
    penalty: f64,
) -> Result<Vec<PairPenalty>, RankError> {
    validate_penalty(penalty)?;
    validate_golden(golden)?;
    let mut out = Vec::with_capacity(UNORDERED_PAIRS);
    for (i, &a) in ReferenceId::ALL.iter().enumerate() {
        for &b in &ReferenceId::ALL[i + 1..] {
            out.push(PairPenalty {
                pair: (a, b),
                penalty: penalty_for(golden, worker, a, b, penalty),
            });
        }
    }
    Ok(out)
}

/// Kendall distance with tie penalty: the summed pair penalties.
pub fn kendall_distance(
    golden: &ScoreVector,
    worker: &ScoreVector,
    penalty: f64,
) -> Result<f64, RankError> {
    validate_penalty(penalty)?;
    validate_golden(golden)?;
    let mut total = 0.0;
    for (i, &a) in ReferenceId::ALL.iter().enumerate() {
        for &b in &ReferenceId::ALL[i + 1..] {
            total += penalty_for(golden, worker, a, b, penalty);
        }
    }
    Ok(total)
}

/// Kendall distance divided by the pair count, landing in `[0, 1]`.
pub fn normalized_kendall(
    golden: &ScoreVector,
    worker: &ScoreVector,
    penalty: f64,
) -> Result<f64, RankError> {
    Ok(kendall_distance(golden, worker, penalty)? / UNORDERED_PAIRS as f64)
}

/// The per-HIT score lists of one side of a Hausdorff comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct HitListSet {
    lists: Vec<ScoreVector>,
}

impl HitListSet {
    /// Requires 1 to 4 lists, matching the HIT count a worker may submit.
    pub fn new(lists: Vec<ScoreVector>) -> Result<Self, RankError> {
        if lists.is_empty() || lists.len() > 4 {
            return Err(RankError::InvalidHitCount(lists.len()));
        }
        Ok(Self { lists })
    }

    pub fn lists(&self) -> &[ScoreVector] {
        &self.lists
    }
}

/// Hausdorff distance between two HIT list sets under the normalized Kendall
/// distance: `max( max_w min_r d(w, r), max_r min_w d(w, r) )`, where `r`
/// ranges over the reference side (whose lists must be tie-free).
pub fn hausdorff_distance(
    worker_hits: &HitListSet,
    reference_hits: &HitListSet,
    penalty: f64,
) -> Result<f64, RankError> {
    validate_penalty(penalty)?;
    for reference in reference_hits.lists() {
        validate_golden(reference)?;
    }
    let distance = |worker: &ScoreVector, reference: &ScoreVector| {
        let mut total = 0.0;
        for (i, &a) in ReferenceId::ALL.iter().enumerate() {
            for &b in &ReferenceId::ALL[i + 1..] {
                total += penalty_for(reference, worker, a, b, penalty);
            }
        }
        total / UNORDERED_PAIRS as f64
    };
    let directed = |from: &HitListSet, to: &HitListSet, flip: bool| {
        from.lists()
            .iter()
            .map(|x| {
                to.lists()
                    .iter()
                    .map(|y| if flip { distance(y, x) } else { distance(x, y) })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    let forward = directed(worker_hits, reference_hits, false);
    let backward = directed(reference_hits, worker_hits, true);
    Ok(forward.max(backward))
}

/// Rank-based expertise degree: one minus the Hausdorff distance between the
/// worker's HIT lists and the golden list. Because the golden side is a
/// single repeated list, this reduces to one minus the worst per-HIT
/// normalized distance.
pub fn fagin_expertise(
    golden: &ScoreVector,
    hits: &[ScoreVector],
    penalty: f64,
) -> Result<f64, RankError> {
    let worker_hits = HitListSet::new(hits.to_vec())?;
    let reference_hits = HitListSet::new(vec![*golden])?;
    Ok(1.0 - hausdorff_distance(&worker_hits, &reference_hits, penalty)?)
}
