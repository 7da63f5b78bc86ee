//! Layered ranking graphs built from scores on the five reference sequences.
//!
//! A score vector assigns each reference sequence an integer score in 1..=5.
//! Ranking it produces an oriented, layered graph: a virtual start node at
//! depth 0 (with score 5), then one bucket per distinct score in decreasing
//! order. All sequences sharing a score sit in the same bucket, so ties show
//! up as wide layers. Arcs run between consecutive layers and carry the score
//! difference as weight; the weights are stored for completeness but nothing
//! downstream consumes them.

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Lowest admissible score.
pub const SCORE_MIN: u8 = 1;
/// Highest admissible score; also the score of the virtual start node.
pub const SCORE_MAX: u8 = 5;

/// One of the five reference sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReferenceId {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl ReferenceId {
    /// All reference ids in ascending order.
    pub const ALL: [ReferenceId; 5] = [
        ReferenceId::R1,
        ReferenceId::R2,
        ReferenceId::R3,
        ReferenceId::R4,
        ReferenceId::R5,
    ];

    /// Number of reference sequences.
    pub const COUNT: usize = 5;

    /// Zero-based position (`R1` → 0, …, `R5` → 4).
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            ReferenceId::R1 => "R1",
            ReferenceId::R2 => "R2",
            ReferenceId::R3 => "R3",
            ReferenceId::R4 => "R4",
            ReferenceId::R5 => "R5",
        }
    }
}

impl fmt::Display for ReferenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReferenceId {
    type Err = ScoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R1" => Ok(ReferenceId::R1),
            "R2" => Ok(ReferenceId::R2),
            "R3" => Ok(ReferenceId::R3),
            "R4" => Ok(ReferenceId::R4),
            "R5" => Ok(ReferenceId::R5),
            other => Err(ScoreError::UnknownReference(other.to_string())),
        }
    }
}

impl Serialize for ReferenceId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ReferenceId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Errors raised while assembling a score vector.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("score {score} for {id} is outside {SCORE_MIN}..={SCORE_MAX}")]
    ScoreOutOfRange { id: ReferenceId, score: u8 },
    #[error("unknown reference id `{0}`")]
    UnknownReference(String),
    #[error("duplicate entry for {0}")]
    DuplicateReference(ReferenceId),
    #[error("missing entry for {0}")]
    MissingReference(ReferenceId),
}

/// Scores for all five reference sequences, indexed by [`ReferenceId`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScoreVector {
    scores: [u8; 5],
}

impl ScoreVector {
    /// Validates that every score lies in 1..=5. `scores[i]` belongs to the
    /// reference with index `i`.
    pub fn new(scores: [u8; 5]) -> Result<Self, ScoreError> {
        for (id, &score) in ReferenceId::ALL.iter().zip(scores.iter()) {
            if !(SCORE_MIN..=SCORE_MAX).contains(&score) {
                return Err(ScoreError::ScoreOutOfRange { id: *id, score });
            }
        }
        Ok(Self { scores })
    }

    /// Builds from `(id, score)` pairs in any order; every reference must
    /// appear exactly once.
    pub fn from_pairs(pairs: &[(ReferenceId, u8)]) -> Result<Self, ScoreError> {
        let mut scores = [0u8; 5];
        let mut seen = [false; 5];
        for &(id, score) in pairs {
            if seen[id.index()] {
                return Err(ScoreError::DuplicateReference(id));
            }
            seen[id.index()] = true;
            scores[id.index()] = score;
        }
        for (id, &present) in ReferenceId::ALL.iter().zip(seen.iter()) {
            if !present {
                return Err(ScoreError::MissingReference(*id));
            }
        }
        Self::new(scores)
    }

    /// The golden-data assignment: `R1 → 1, …, R5 → 5`.
    pub fn golden() -> Self {
        Self {
            scores: [1, 2, 3, 4, 5],
        }
    }

    pub fn score(&self, id: ReferenceId) -> u8 {
        self.scores[id.index()]
    }

    pub fn scores(&self) -> [u8; 5] {
        self.scores
    }

    /// True when no two references share a score.
    pub fn has_distinct_scores(&self) -> bool {
        let mut seen = [false; (SCORE_MAX as usize) + 1];
        for &s in &self.scores {
            if seen[s as usize] {
                return false;
            }
            seen[s as usize] = true;
        }
        true
    }
}

const NO_NEIGHBOURS: &[ReferenceId] = &[];

/// The layered graph of a score vector.
///
/// Bucket `k` (zero-based) holds the references with the `(k+1)`-th highest
/// distinct score; a node's depth is its one-based bucket index, with the
/// virtual start node at depth 0. Predecessors and successors are the
/// immediately adjacent layers only, and never include the start node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredRanking {
    buckets: Vec<Vec<ReferenceId>>,
    bucket_scores: Vec<u8>,
    arc_weights: Vec<u8>,
    depths: [usize; 5],
}

impl LayeredRanking {
    pub fn from_scores(sv: &ScoreVector) -> Self {
        let mut distinct: Vec<u8> = sv.scores().to_vec();
        distinct.sort_unstable_by(|a, b| b.cmp(a));
        distinct.dedup();

        let mut buckets = Vec::with_capacity(distinct.len());
        let mut arc_weights = Vec::with_capacity(distinct.len());
        let mut depths = [0usize; 5];
        let mut previous_score = SCORE_MAX;
        for (layer, &score) in distinct.iter().enumerate() {
            let bucket: Vec<ReferenceId> = ReferenceId::ALL
                .iter()
                .copied()
                .filter(|id| sv.score(*id) == score)
                .collect();
            for id in &bucket {
                depths[id.index()] = layer + 1;
            }
            arc_weights.push(previous_score - score);
            previous_score = score;
            buckets.push(bucket);
        }
        Self {
            buckets,
            bucket_scores: distinct,
            arc_weights,
            depths,
        }
    }

    /// One-based depth of a reference node (the start node sits at depth 0).
    pub fn depth(&self, id: ReferenceId) -> usize {
        self.depths[id.index()]
    }

    /// Number of layers, i.e. distinct scores.
    pub fn num_layers(&self) -> usize {
        self.buckets.len()
    }

    /// Buckets in depth order; ids inside a bucket are in ascending order.
    pub fn buckets(&self) -> &[Vec<ReferenceId>] {
        &self.buckets
    }

    /// Score shared by each bucket, strictly decreasing.
    pub fn bucket_scores(&self) -> &[u8] {
        &self.bucket_scores
    }

    /// Weight of the arcs entering each bucket: the score drop from the
    /// previous layer (the start node counts as score 5). Stored but unused
    /// by the expertise factors.
    pub fn arc_weights(&self) -> &[u8] {
        &self.arc_weights
    }

    /// Every reference at the same depth as `id`, including `id` itself.
    pub fn same_depth_set(&self, id: ReferenceId) -> &[ReferenceId] {
        &self.buckets[self.depth(id) - 1]
    }

    /// References exactly one layer above `id`; empty for the top bucket.
    pub fn predecessors(&self, id: ReferenceId) -> &[ReferenceId] {
        match self.depth(id) {
            1 => NO_NEIGHBOURS,
            d => &self.buckets[d - 2],
        }
    }

    /// References exactly one layer below `id`; empty for the bottom bucket.
    pub fn successors(&self, id: ReferenceId) -> &[ReferenceId] {
        let d = self.depth(id);
        if d == self.buckets.len() {
            NO_NEIGHBOURS
        } else {
            &self.buckets[d]
        }
    }
}

impl Serialize for LayeredRanking {
    /// Serializes as the ordered list of bucket arrays,
    /// e.g. `[["R5"],["R4"],["R1","R3"],["R2"]]`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.buckets.len()))?;
        for bucket in &self.buckets {
            seq.serialize_element(bucket)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use ReferenceId::*;

    fn ranking(scores: [u8; 5]) -> LayeredRanking {
        LayeredRanking::from_scores(&ScoreVector::new(scores).unwrap())
    }

    /// Worker scores (2, 1, 2, 4, 5) — the running tied example.
    fn tied_worker() -> LayeredRanking {
        ranking([2, 1, 2, 4, 5])
    }

    #[test]
    fn golden_layout() {
        let g = LayeredRanking::from_scores(&ScoreVector::golden());
        assert_eq!(
            g.buckets(),
            &[vec![R5], vec![R4], vec![R3], vec![R2], vec![R1]]
        );
        assert_eq!(g.depth(R1), 5);
        assert_eq!(g.depth(R5), 1);
        assert_eq!(g.bucket_scores(), &[5, 4, 3, 2, 1]);
    }

    #[test]
    fn tied_worker_layout() {
        let g = tied_worker();
        assert_eq!(g.buckets(), &[vec![R5], vec![R4], vec![R1, R3], vec![R2]]);
        assert_eq!(g.depth(R1), 3);
        assert_eq!(g.depth(R2), 4);
        assert_eq!(g.depth(R5), 1);
    }

    #[test]
    fn all_ties_collapse_to_one_bucket() {
        let g = ranking([5, 5, 5, 5, 5]);
        assert_eq!(g.num_layers(), 1);
        for id in ReferenceId::ALL {
            assert_eq!(g.depth(id), 1);
            assert_eq!(g.same_depth_set(id), &ReferenceId::ALL);
        }
    }

    #[test]
    fn same_depth_sets() {
        let golden = LayeredRanking::from_scores(&ScoreVector::golden());
        assert_eq!(golden.same_depth_set(R1), &[R1]);
        assert_eq!(tied_worker().same_depth_set(R1), &[R1, R3]);
    }

    #[test]
    fn adjacent_layer_neighbours() {
        let w = tied_worker();
        assert_eq!(w.successors(R4), &[R1, R3]);
        assert_eq!(w.predecessors(R4), &[R5]);
        assert_eq!(w.predecessors(R2), &[R1, R3]);
        assert_eq!(w.successors(R2), NO_NEIGHBOURS);

        let golden = LayeredRanking::from_scores(&ScoreVector::golden());
        assert_eq!(golden.predecessors(R5), NO_NEIGHBOURS);
        assert_eq!(golden.successors(R1), NO_NEIGHBOURS);
    }

    #[test]
    fn arc_weights_record_score_drops() {
        let golden = LayeredRanking::from_scores(&ScoreVector::golden());
        assert_eq!(golden.arc_weights(), &[0, 1, 1, 1, 1]);
        assert_eq!(tied_worker().arc_weights(), &[0, 1, 2, 1]);
        // Worst-case first drop: top score of 1 is four below the start node.
        assert_eq!(ranking([1, 1, 1, 1, 1]).arc_weights(), &[4]);
    }

    #[test]
    fn serializes_as_bucket_arrays() {
        let json = serde_json::to_string(&tied_worker()).unwrap();
        assert_eq!(json, r#"[["R5"],["R4"],["R1","R3"],["R2"]]"#);
    }

    #[test]
    fn score_vector_rejects_out_of_range() {
        assert!(matches!(
            ScoreVector::new([0, 2, 3, 4, 5]),
            Err(ScoreError::ScoreOutOfRange { id: R1, score: 0 })
        ));
        assert!(ScoreVector::new([1, 2, 3, 4, 6]).is_err());
    }

    #[test]
    fn from_pairs_checks_coverage() {
        assert!(matches!(
            ScoreVector::from_pairs(&[(R1, 1), (R1, 2), (R2, 3), (R3, 4), (R4, 5)]),
            Err(ScoreError::DuplicateReference(R1))
        ));
        assert!(matches!(
            ScoreVector::from_pairs(&[(R1, 1), (R2, 2), (R3, 3), (R4, 4)]),
            Err(ScoreError::MissingReference(R5))
        ));
    }

    #[test]
    fn reference_id_round_trips_strings() {
        for id in ReferenceId::ALL {
            assert_eq!(id.as_str().parse::<ReferenceId>().unwrap(), id);
        }
        assert!("R6".parse::<ReferenceId>().is_err());
    }

    fn arb_scores() -> impl Strategy<Value = [u8; 5]> {
        proptest::array::uniform5(SCORE_MIN..=SCORE_MAX)
    }

    proptest! {
        #[test]
        fn buckets_partition_the_references(scores in arb_scores()) {
            let g = ranking(scores);
            let mut seen = [false; 5];
            for bucket in g.buckets() {
                prop_assert!(!bucket.is_empty());
                for id in bucket {
                    prop_assert!(!seen[id.index()]);
                    seen[id.index()] = true;
                }
            }
            prop_assert!(seen.iter().all(|&s| s));
        }

        #[test]
        fn depths_are_contiguous_from_one(scores in arb_scores()) {
            let g = ranking(scores);
            let mut depths: Vec<usize> =
                ReferenceId::ALL.iter().map(|&id| g.depth(id)).collect();
            depths.sort_unstable();
            depths.dedup();
            let expected: Vec<usize> = (1..=g.num_layers()).collect();
            prop_assert_eq!(depths, expected);
        }

        #[test]
        fn successor_predecessor_duality(scores in arb_scores()) {
            let g = ranking(scores);
            for a in ReferenceId::ALL {
                for b in ReferenceId::ALL {
                    let forward = g.successors(a).contains(&b);
                    let backward = g.predecessors(b).contains(&a);
                    prop_assert_eq!(forward, backward);
                }
            }
        }

        #[test]
        fn adjacent_scores_are_successors(scores in arb_scores()) {
            let sv = ScoreVector::new(scores).unwrap();
            let g = LayeredRanking::from_scores(&sv);
            for a in ReferenceId::ALL {
                for b in ReferenceId::ALL {
                    let sa = sv.score(a);
                    let sb = sv.score(b);
                    let gap_is_minimal = sa > sb
                        && !scores.iter().any(|&s| s > sb && s < sa);
                    if gap_is_minimal {
                        prop_assert!(g.successors(a).contains(&b));
                    }
                }
            }
        }

        #[test]
        fn construction_ignores_pair_order(scores in arb_scores(), seed in 0usize..120) {
            let mut pairs: Vec<(ReferenceId, u8)> = ReferenceId::ALL
                .iter()
                .copied()
                .zip(scores.iter().copied())
                .collect();
            // Derive one of the 5! orders from the seed.
            let mut order = seed;
            for i in (1..pairs.len()).rev() {
                pairs.swap(i, order % (i + 1));
                order /= i + 1;
            }
            let shuffled = ScoreVector::from_pairs(&pairs).unwrap();
            prop_assert_eq!(
                LayeredRanking::from_scores(&shuffled),
                ranking(scores)
            );
        }
    }
}
