//! Expertise scoring for crowdsourcing campaigns with golden reference data.
//!
//! Workers rate five reference sequences whose true quality order is known.
//! Two measures grade each worker against that golden ranking:
//!
//! * a belief-function measure that compares layered ranking graphs through
//!   four per-node factors ([`belief`]), and
//! * a tie-penalized Kendall distance aggregated over HITs with the
//!   Hausdorff rule ([`fagin`]).
//!
//! [`campaign`] ties both together: it ingests response files, scores every
//! worker, applies the dual-threshold fusion (belief > 0.4 and rank > 0.6 by
//! default) and emits deterministic reports.
//!
//! ```
//! use crowd_expertise::{belief, fagin, ScoreVector};
//!
//! let golden = ScoreVector::golden();
//! let worker = ScoreVector::new([2, 1, 2, 4, 5])?;
//!
//! let belief_degree = belief::belief_expertise_single(&golden, &worker);
//! let rank_degree = fagin::fagin_expertise(&golden, &[worker], 0.5)?;
//! assert!(belief_degree > 0.4 && rank_degree > 0.6);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod belief;
pub mod campaign;
pub mod evidence;
pub mod fagin;
pub mod ranking;

pub use belief::{BeliefBreakdown, BeliefError, FactorMasses, NodeFactors};
pub use campaign::{
    CampaignError, CampaignReport, ExpertiseScores, GoldenReference, NoiseModel, ReportConfig,
    ScoreDocument, Thresholds, WorkerRecord,
};
pub use evidence::{MassError, MassFunction, Subset};
pub use fagin::{HitListSet, PairPenalty, RankError, DEFAULT_TIE_PENALTY};
pub use ranking::{LayeredRanking, ReferenceId, ScoreError, ScoreVector};
