//! Belief-function expertise measure from ranking-graph comparison.
//!
//! The worker's layered graph is compared node by node against the golden
//! graph through four factors, each rendered as a mass function on the
//! Expert / Non-Expert frame:
//!
//! 1. **accuracy** — depth gap of the node between the two graphs, scaled by
//!    the maximum possible gap of 4;
//! 2. **confusion** — Jaccard overlap of the same-depth sets, i.e. how many
//!    sequences the worker lumped together with this one;
//! 3. **predecessor order** — how much of the layer above the node is
//!    correct (found above it in the golden graph too) versus inverted
//!    (actually belongs below it);
//! 4. **successor order** — the mirror check on the layer below.
//!
//! For the order factors any `0/0` ratio counts as 0, so a node with no
//! neighbours on either side yields pure ignorance. Per-node masses are
//! averaged into graph-level masses over the graph order (six vertices,
//! counting the virtual start node); the slack left by averaging five node
//! masses over six vertices lands on `Ω`, keeping each result a valid mass
//! function. The four graph masses are then combined conjunctively and the
//! expertise degree is one minus the Jousselme distance to the categorical
//! expert mass.

use crate::evidence::{MassFunction, Subset};
use crate::ranking::{LayeredRanking, ReferenceId, ScoreVector};
use serde::Serialize;
use thiserror::Error;

/// Largest possible depth gap between two nodes (five scores, so depths
/// range over 1..=5).
pub const MAX_DEPTH_GAP: u8 = 4;

/// Number of vertices of a ranking graph, including the virtual start node.
pub const GRAPH_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeliefError {
    #[error("expected one mass per reference node ({expected}), got {got}")]
    NodeCountMismatch { expected: usize, got: usize },
    #[error("worker has no HIT score vectors")]
    EmptyHits,
}

/// Raw factor values for one node pair, before conversion to masses.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NodeFactors {
    /// Depth gap between the golden and worker nodes (0..=4).
    pub depth_gap: u8,
    /// Jaccard overlap of the same-depth sets.
    pub bucket_overlap: f64,
    /// Share of the worker's predecessors confirmed by the golden graph.
    pub pred_correct: f64,
    /// Share of the worker's predecessors that the golden graph puts below.
    pub pred_inverted: f64,
    /// Share of the worker's successors confirmed by the golden graph.
    pub succ_correct: f64,
    /// Share of the worker's successors that the golden graph puts above.
    pub succ_inverted: f64,
}

/// Graph-level mass functions, one per factor.
#[derive(Debug, Clone, Serialize)]
pub struct FactorMasses {
    pub accuracy: MassFunction,
    pub confusion: MassFunction,
    pub pred_order: MassFunction,
    pub succ_order: MassFunction,
}

/// Per-worker-response debug dump: everything between the score vectors and
/// the final degree.
#[derive(Debug, Clone, Serialize)]
pub struct BeliefBreakdown {
    pub node_factors: Vec<NodeBreakdown>,
    pub graph_masses: FactorMasses,
    pub combined: MassFunction,
    pub degree: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeBreakdown {
    pub id: ReferenceId,
    pub factors: NodeFactors,
}

fn ratio(numerator: usize, denominator: usize) -> f64 {
    // 0/0 counts as 0 by convention.
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}

fn intersection_count(a: &[ReferenceId], b: &[ReferenceId]) -> usize {
    a.iter().filter(|id| b.contains(id)).count()
}

fn union_count(a: &[ReferenceId], b: &[ReferenceId]) -> usize {
    a.len() + b.len() - intersection_count(a, b)
}

/// Depth-gap factor: `gap = |depth_golden − depth_worker|`, with
/// `m(E) = 1 − gap/4` and `m(NE) = gap/4`. Carries no ignorance.
pub fn factor_accuracy(
    golden: &LayeredRanking,
    worker: &LayeredRanking,
    id: ReferenceId,
) -> (u8, MassFunction) {
    let gap = golden.depth(id).abs_diff(worker.depth(id)) as u8;
    let non_expert = f64::from(gap) / f64::from(MAX_DEPTH_GAP);
    (gap, MassFunction::from_split(1.0 - non_expert, non_expert))
}

/// Confusion factor: Jaccard overlap `o` of the same-depth sets, with
/// `m(E) = o` and `m(NE) = 1 − o`. Both sets contain the node itself, so the
/// overlap is at least 1/5.
pub fn factor_confusion(
    golden: &LayeredRanking,
    worker: &LayeredRanking,
    id: ReferenceId,
) -> (f64, MassFunction) {
    let golden_set = golden.same_depth_set(id);
    let worker_set = worker.same_depth_set(id);
    let overlap = ratio(
        intersection_count(golden_set, worker_set),
        union_count(golden_set, worker_set),
    );
    (overlap, MassFunction::from_split(overlap, 1.0 - overlap))
}

/// Predecessor-order factor. Among the worker's immediate predecessors,
/// those also preceding the node in the golden graph support `E`
/// (normalized by the union of both predecessor sets); those that the golden
/// graph ranks *below* the node support `NE` (normalized by the worker's
/// predecessor count). The remainder is ignorance.
pub fn factor_pred_order(
    golden: &LayeredRanking,
    worker: &LayeredRanking,
    id: ReferenceId,
) -> MassFunction {
    let worker_pred = worker.predecessors(id);
    let golden_pred = golden.predecessors(id);
    let golden_succ = golden.successors(id);
    let correct = intersection_count(worker_pred, golden_pred);
    let inverted = intersection_count(worker_pred, golden_succ);
    MassFunction::from_split(
        ratio(correct, union_count(golden_pred, worker_pred)),
        ratio(inverted, worker_pred.len()),
    )
}

/// Successor-order factor, symmetric to [`factor_pred_order`] on the layer
/// below the node.
pub fn factor_succ_order(
    golden: &LayeredRanking,
    worker: &LayeredRanking,
    id: ReferenceId,
) -> MassFunction {
    let worker_succ = worker.successors(id);
    let golden_succ = golden.successors(id);
    let golden_pred = golden.predecessors(id);
    let correct = intersection_count(worker_succ, golden_succ);
    let inverted = intersection_count(worker_succ, golden_pred);
    MassFunction::from_split(
        ratio(correct, union_count(golden_succ, worker_succ)),
        ratio(inverted, worker_succ.len()),
    )
}

/// All four raw factor values for one node pair.
pub fn node_factors(
    golden: &LayeredRanking,
    worker: &LayeredRanking,
    id: ReferenceId,
) -> NodeFactors {
    let (depth_gap, _) = factor_accuracy(golden, worker, id);
    let (bucket_overlap, _) = factor_confusion(golden, worker, id);
    let pred = factor_pred_order(golden, worker, id);
    let succ = factor_succ_order(golden, worker, id);
    NodeFactors {
        depth_gap,
        bucket_overlap,
        pred_correct: pred.value(Subset::Expert),
        pred_inverted: pred.value(Subset::NonExpert),
        succ_correct: succ.value(Subset::Expert),
        succ_inverted: succ.value(Subset::NonExpert),
    }
}

/// Averages per-node masses into one graph-level mass: the `E` and `NE`
/// components are summed and divided by the graph order (6), and whatever
/// the average leaves unassigned goes to `Ω`. With five node masses this
/// leaves at least 1/6 of ignorance.
pub fn aggregate_graph_mass(node_masses: &[MassFunction]) -> Result<MassFunction, BeliefError> {
    if node_masses.len() != ReferenceId::COUNT {
        return Err(BeliefError::NodeCountMismatch {
            expected: ReferenceId::COUNT,
            got: node_masses.len(),
        });
    }
    let order = GRAPH_ORDER as f64;
    let expert: f64 = node_masses.iter().map(|m| m.value(Subset::Expert)).sum();
    let non_expert: f64 = node_masses.iter().map(|m| m.value(Subset::NonExpert)).sum();
    Ok(MassFunction::from_split(expert / order, non_expert / order))
}

/// Graph-level masses for all four factors.
pub fn graph_factor_masses(golden: &LayeredRanking, worker: &LayeredRanking) -> FactorMasses {
    let mut accuracy = Vec::with_capacity(ReferenceId::COUNT);
    let mut confusion = Vec::with_capacity(ReferenceId::COUNT);
    let mut pred_order = Vec::with_capacity(ReferenceId::COUNT);
    let mut succ_order = Vec::with_capacity(ReferenceId::COUNT);
    for id in ReferenceId::ALL {
        accuracy.push(factor_accuracy(golden, worker, id).1);
        confusion.push(factor_confusion(golden, worker, id).1);
        pred_order.push(factor_pred_order(golden, worker, id));
        succ_order.push(factor_succ_order(golden, worker, id));
    }
    let aggregate = |masses: &[MassFunction]| {
        aggregate_graph_mass(masses).expect("one mass per reference node")
    };
    FactorMasses {
        accuracy: aggregate(&accuracy),
        confusion: aggregate(&confusion),
        pred_order: aggregate(&pred_order),
        succ_order: aggregate(&succ_order),
    }
}

/// Conjunctive combination of the four graph masses. The fold order is
/// immaterial up to floating-point noise because combination is associative
/// and commutative.
pub fn combine_factors(masses: &FactorMasses) -> MassFunction {
    masses
        .accuracy
        .combine(&masses.confusion)
        .combine(&masses.pred_order)
        .combine(&masses.succ_order)
}

/// Belief expertise degree for a single response: one minus the Jousselme
/// distance between the combined factor mass and the categorical expert
/// mass, so higher means more expert.
pub fn belief_expertise_single(golden: &ScoreVector, worker: &ScoreVector) -> f64 {
    let golden_graph = LayeredRanking::from_scores(golden);
    let worker_graph = LayeredRanking::from_scores(worker);
    let combined = combine_factors(&graph_factor_masses(&golden_graph, &worker_graph));
    let expert = MassFunction::from_split(1.0, 0.0);
    1.0 - combined.jousselme_distance(&expert)
}

/// Belief expertise degree for a worker: arithmetic mean of the per-HIT
/// degrees.
pub fn belief_expertise_worker(
    golden: &ScoreVector,
    hits: &[ScoreVector],
) -> Result<f64, BeliefError> {
    if hits.is_empty() {
        return Err(BeliefError::EmptyHits);
    }
    let sum: f64 = hits
        .iter()
        .map(|hit| belief_expertise_single(golden, hit))
        .sum();
    Ok(sum / hits.len() as f64)
}

/// Full intermediate trace for one response, serializable for debugging.
pub fn belief_breakdown(golden: &ScoreVector, worker: &ScoreVector) -> BeliefBreakdown {
    let golden_graph = LayeredRanking::from_scores(golden);
    let worker_graph = LayeredRanking::from_scores(worker);
    let node_factors = ReferenceId::ALL
        .iter()
        .map(|&id| NodeBreakdown {
            id,
            factors: node_factors(&golden_graph, &worker_graph, id),
        })
        .collect();
    let graph_masses = graph_factor_masses(&golden_graph, &worker_graph);
    let combined = combine_factors(&graph_masses);
    let degree = 1.0 - combined.jousselme_distance(&MassFunction::from_split(1.0, 0.0));
    BeliefBreakdown {
        node_factors,
        graph_masses,
        combined,
        degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::MASS_TOLERANCE;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use ReferenceId::*;

    fn graphs(worker_scores: [u8; 5]) -> (LayeredRanking, LayeredRanking) {
        let golden = LayeredRanking::from_scores(&ScoreVector::golden());
        let worker = LayeredRanking::from_scores(&ScoreVector::new(worker_scores).unwrap());
        (golden, worker)
    }

    const TIED_WORKER: [u8; 5] = [2, 1, 2, 4, 5];

    #[test]
    fn accuracy_factor_on_tied_worker() {
        let (g, w) = graphs(TIED_WORKER);
        let (gap, m) = factor_accuracy(&g, &w, R1);
        assert_eq!(gap, 2);
        assert_eq!(m.value(Subset::Expert), 0.5);
        assert_eq!(m.value(Subset::NonExpert), 0.5);
    }

    #[test]
    fn accuracy_factor_identity() {
        let g = LayeredRanking::from_scores(&ScoreVector::golden());
        for id in ReferenceId::ALL {
            let (gap, m) = factor_accuracy(&g, &g, id);
            assert_eq!(gap, 0);
            assert_eq!(m.value(Subset::Expert), 1.0);
        }
    }

    #[test]
    fn accuracy_factor_all_ties_worst_case() {
        let (g, w) = graphs([5, 5, 5, 5, 5]);
        let (gap, m) = factor_accuracy(&g, &w, R1);
        assert_eq!(gap, 4);
        assert_eq!(m.value(Subset::Expert), 0.0);
    }

    #[test]
    fn confusion_factor_values() {
        let (g, w) = graphs(TIED_WORKER);
        let (overlap, m) = factor_confusion(&g, &w, R1);
        assert_eq!(overlap, 0.5);
        assert_eq!(m.value(Subset::Expert), 0.5);

        let (identity_overlap, _) = factor_confusion(&g, &g, R3);
        assert_eq!(identity_overlap, 1.0);

        let (_, all_ties) = graphs([5, 5, 5, 5, 5]);
        for id in ReferenceId::ALL {
            let (o, _) = factor_confusion(&g, &all_ties, id);
            assert_eq!(o, 0.2);
        }
    }

    #[test]
    fn pred_order_factor_on_tied_worker() {
        let (g, w) = graphs(TIED_WORKER);
        let m2 = factor_pred_order(&g, &w, R2);
        assert_eq!(m2.value(Subset::Expert), 0.5);
        assert_eq!(m2.value(Subset::NonExpert), 0.5);

        let m4 = factor_pred_order(&g, &w, R4);
        assert_eq!(m4.value(Subset::Expert), 1.0);
        assert_eq!(m4.value(Subset::NonExpert), 0.0);

        // Top bucket on both sides: no predecessors anywhere, pure ignorance.
        let m5 = factor_pred_order(&g, &w, R5);
        assert_eq!(m5.value(Subset::Omega), 1.0);
    }

    #[test]
    fn succ_order_factor_on_tied_worker() {
        let (g, w) = graphs(TIED_WORKER);
        let m4 = factor_succ_order(&g, &w, R4);
        assert_eq!(m4.value(Subset::Expert), 0.5);
        assert_eq!(m4.value(Subset::NonExpert), 0.0);
        assert_eq!(m4.value(Subset::Omega), 0.5);

        let m2 = factor_succ_order(&g, &w, R2);
        assert_eq!(m2.value(Subset::Omega), 1.0);
    }

    #[test]
    fn order_factors_vacuous_for_all_ties() {
        // A single-bucket worker graph has no predecessors or successors
        // anywhere, so no golden successor can show up among predecessors:
        // both order factors collapse to pure ignorance.
        let (g, w) = graphs([5, 5, 5, 5, 5]);
        for id in ReferenceId::ALL {
            let pred = factor_pred_order(&g, &w, id);
            assert_eq!(pred.value(Subset::NonExpert), 0.0);
            assert_eq!(pred, MassFunction::vacuous());
            assert_eq!(factor_succ_order(&g, &w, id), MassFunction::vacuous());
        }
    }

    #[test]
    fn succ_order_factor_identity() {
        let g = LayeredRanking::from_scores(&ScoreVector::golden());
        let m = factor_succ_order(&g, &g, R3);
        assert_eq!(m.value(Subset::Expert), 1.0);
    }

    #[test]
    fn aggregate_spreads_over_graph_order() {
        let certain = MassFunction::from_split(1.0, 0.0);
        let masses = [certain; 5];
        let g = aggregate_graph_mass(&masses).unwrap();
        assert_relative_eq!(g.value(Subset::Expert), 5.0 / 6.0, epsilon = 1e-15);
        assert_relative_eq!(g.value(Subset::Omega), 1.0 / 6.0, epsilon = 1e-15);

        let vacuous = [MassFunction::vacuous(); 5];
        assert_eq!(
            aggregate_graph_mass(&vacuous).unwrap(),
            MassFunction::vacuous()
        );

        let split = [MassFunction::from_split(0.5, 0.5); 5];
        let g = aggregate_graph_mass(&split).unwrap();
        assert_relative_eq!(g.value(Subset::Expert), 5.0 / 12.0, epsilon = 1e-15);
        assert_relative_eq!(g.value(Subset::NonExpert), 5.0 / 12.0, epsilon = 1e-15);
        assert_relative_eq!(g.value(Subset::Omega), 1.0 / 6.0, epsilon = 1e-15);
    }

    #[test]
    fn aggregate_rejects_wrong_count() {
        let masses = vec![MassFunction::vacuous(); 4];
        assert_eq!(
            aggregate_graph_mass(&masses),
            Err(BeliefError::NodeCountMismatch {
                expected: 5,
                got: 4
            })
        );
    }

    #[test]
    fn golden_response_is_nearly_certain() {
        let degree = belief_expertise_single(&ScoreVector::golden(), &ScoreVector::golden());
        assert!(degree > 0.99, "got {degree}");
    }

    #[test]
    fn all_ties_degree_matches_hand_derivation() {
        // Hand-derived: the all-ties response yields graph masses
        // (E 5/12, NE 5/12, Ω 1/6), (E 1/6, NE 4/6, Ω 1/6) and two vacuous
        // masses; combining and measuring against the categorical expert
        // mass gives distance sqrt(2632/5184).
        let worker = ScoreVector::new([5, 5, 5, 5, 5]).unwrap();
        let degree = belief_expertise_single(&ScoreVector::golden(), &worker);
        assert_relative_eq!(degree, 1.0 - (2632.0f64 / 5184.0).sqrt(), epsilon = 1e-12);
        assert!(degree < 0.4);
    }

    #[test]
    fn reversal_scores_below_all_ties() {
        let golden = ScoreVector::golden();
        let reversed = ScoreVector::new([5, 4, 3, 2, 1]).unwrap();
        let all_ties = ScoreVector::new([5, 5, 5, 5, 5]).unwrap();
        assert!(
            belief_expertise_single(&golden, &reversed)
                < belief_expertise_single(&golden, &all_ties)
        );
    }

    #[test]
    fn worker_degree_is_mean_of_hits() {
        let golden = ScoreVector::golden();
        let a = ScoreVector::new(TIED_WORKER).unwrap();
        let b = ScoreVector::new([5, 5, 5, 5, 5]).unwrap();

        assert!(belief_expertise_worker(&golden, &[]).is_err());

        let single = belief_expertise_worker(&golden, &[a]).unwrap();
        assert_eq!(single, belief_expertise_single(&golden, &a));

        let four = belief_expertise_worker(&golden, &[a, a, a, a]).unwrap();
        assert_relative_eq!(four, single, epsilon = 1e-14);

        let mixed = belief_expertise_worker(&golden, &[a, b]).unwrap();
        let expected =
            (belief_expertise_single(&golden, &a) + belief_expertise_single(&golden, &b)) / 2.0;
        assert_relative_eq!(mixed, expected, epsilon = 1e-15);
    }

    #[test]
    fn breakdown_serializes_every_stage() {
        let golden = ScoreVector::golden();
        let worker = ScoreVector::new(TIED_WORKER).unwrap();
        let dump = belief_breakdown(&golden, &worker);
        assert_relative_eq!(
            dump.degree,
            belief_expertise_single(&golden, &worker),
            epsilon = 1e-15
        );
        let json = serde_json::to_string(&dump).unwrap();
        for key in ["node_factors", "graph_masses", "combined", "degree"] {
            assert!(json.contains(key), "missing {key}");
        }
    }

    fn assert_valid_node_mass(m: &MassFunction) {
        let values = m.values();
        assert!(
            values.iter().all(|&v| (0.0..=1.0).contains(&v)),
            "{values:?}"
        );
        assert!((values.iter().sum::<f64>() - 1.0).abs() <= MASS_TOLERANCE);
        assert_eq!(m.conflict(), 0.0);
    }

    fn arb_scores() -> impl Strategy<Value = [u8; 5]> {
        proptest::array::uniform5(1u8..=5)
    }

    proptest! {
        #[test]
        fn factor_masses_stay_valid(scores in arb_scores()) {
            let (g, w) = graphs(scores);
            for id in ReferenceId::ALL {
                let (_, m1) = factor_accuracy(&g, &w, id);
                assert_valid_node_mass(&m1);
                // The accuracy factor splits exactly between E and NE.
                prop_assert_eq!(
                    m1.value(Subset::Expert) + m1.value(Subset::NonExpert),
                    1.0
                );
                prop_assert_eq!(m1.value(Subset::Omega), 0.0);

                let (_, m2) = factor_confusion(&g, &w, id);
                assert_valid_node_mass(&m2);
                assert_valid_node_mass(&factor_pred_order(&g, &w, id));
                assert_valid_node_mass(&factor_succ_order(&g, &w, id));
            }
        }

        #[test]
        fn factor_combination_order_is_immaterial(scores in arb_scores()) {
            let (g, w) = graphs(scores);
            let masses = graph_factor_masses(&g, &w);
            let forward = combine_factors(&masses).values();
            let backward = masses
                .succ_order
                .combine(&masses.pred_order)
                .combine(&masses.confusion)
                .combine(&masses.accuracy)
                .values();
            for i in 0..4 {
                prop_assert!((forward[i] - backward[i]).abs() <= MASS_TOLERANCE);
            }
        }

        #[test]
        fn degree_is_invariant_under_relabeling(
            golden_scores in arb_scores(),
            worker_scores in arb_scores(),
            seed in 0usize..120,
        ) {
            let permute = |scores: [u8; 5]| {
                let mut out = scores;
                let mut order = seed;
                for i in (1..out.len()).rev() {
                    out.swap(i, order % (i + 1));
                    order /= i + 1;
                }
                ScoreVector::new(out).unwrap()
            };
            let golden = ScoreVector::new(golden_scores).unwrap();
            let worker = ScoreVector::new(worker_scores).unwrap();
            let base = belief_expertise_single(&golden, &worker);
            let relabeled =
                belief_expertise_single(&permute(golden_scores), &permute(worker_scores));
            prop_assert!((base - relabeled).abs() <= 1e-12);
        }
    }
}
