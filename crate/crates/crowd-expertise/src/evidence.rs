//! Belief-function algebra on the two-hypothesis frame `{E, NE}`.
//!
//! The frame holds the Expert / Non-Expert assertion about a worker, so a
//! mass function assigns belief to the four subsets `∅`, `{E}`, `{NE}` and
//! `Ω = {E, NE}`, always in that order. Fusion uses the unnormalized
//! conjunctive rule: the mass landing on `∅` is kept as-is because it
//! measures the conflict between the combined sources. Deviation from a
//! target mass is measured with the Jousselme distance, whose Jaccard
//! weighting discounts differences between overlapping focal elements.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Tolerance used when checking that masses total one.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A subset of the frame `Ω = {E, NE}`.
///
/// The discriminant doubles as a bitmask (`E` = bit 0, `NE` = bit 1), so the
/// canonical vector order `∅, {E}, {NE}, Ω` is also the numeric order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Subset {
    Empty = 0b00,
    Expert = 0b01,
    NonExpert = 0b10,
    Omega = 0b11,
}

impl Subset {
    /// All subsets in canonical order. Mass vectors are indexed this way,
    /// which keeps serialized masses comparable bit-for-bit.
    pub const ALL: [Subset; 4] = [
        Subset::Empty,
        Subset::Expert,
        Subset::NonExpert,
        Subset::Omega,
    ];

    /// Position in the canonical order.
    pub const fn index(self) -> usize {
        self as usize
    }

    /// Number of elements in the subset.
    pub const fn cardinality(self) -> u32 {
        (self as u8).count_ones()
    }

    /// Set intersection.
    pub fn intersect(self, other: Subset) -> Subset {
        Self::from_bits(self as u8 & other as u8)
    }

    fn from_bits(bits: u8) -> Subset {
        match bits {
            0b00 => Subset::Empty,
            0b01 => Subset::Expert,
            0b10 => Subset::NonExpert,
            _ => Subset::Omega,
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subset::Empty => "∅",
            Subset::Expert => "{E}",
            Subset::NonExpert => "{NE}",
            Subset::Omega => "Ω",
        };
        f.write_str(s)
    }
}

/// Jaccard similarity matrix `D(X, Y) = |X ∩ Y| / |X ∪ Y|` over the canonical
/// subset order, with `D(∅, ∅) = 1` and `D(∅, X) = 0` for `X ≠ ∅`.
///
/// The matrix is symmetric, has a unit diagonal and is positive definite,
/// which is what makes the Jousselme distance a metric.
pub const JACCARD: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.5],
    [0.0, 0.0, 1.0, 0.5],
    [0.0, 0.5, 0.5, 1.0],
];

/// Errors raised while validating a mass assignment.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MassError {
    #[error("mass {value} on {subset} is outside [0, 1]")]
    ValueOutOfRange { subset: Subset, value: f64 },
    #[error("total mass {total} does not sum to 1")]
    TotalNotOne { total: f64 },
    #[error("the empty set cannot carry positive mass")]
    MassOnEmpty,
}

/// A mass function over the frame, stored as one value per canonical subset.
///
/// Freshly constructed masses satisfy `m(∅) = 0`; masses produced by
/// [`MassFunction::combine`] may carry positive conflict on `∅`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassFunction {
    mass: [f64; 4],
}

impl MassFunction {
    /// Builds a validated mass function from subset assignments. Unlisted
    /// subsets default to zero; repeated subsets accumulate.
    pub fn new(assignments: &[(Subset, f64)]) -> Result<Self, MassError> {
        let mut mass = [0.0; 4];
        for &(subset, value) in assignments {
            if !(0.0..=1.0).contains(&value) {
                return Err(MassError::ValueOutOfRange { subset, value });
            }
            if subset == Subset::Empty && value > 0.0 {
                return Err(MassError::MassOnEmpty);
            }
            mass[subset.index()] += value;
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(MassError::TotalNotOne { total });
        }
        Ok(Self { mass })
    }

    /// Builds a mass function from a raw canonical vector. Unlike
    /// [`MassFunction::new`] this accepts conflict on `∅`, so it can restore
    /// combined masses (deserialization uses it).
    pub fn from_values(mass: [f64; 4]) -> Result<Self, MassError> {
        for (subset, &value) in Subset::ALL.iter().zip(mass.iter()) {
            if !(0.0..=1.0).contains(&value) {
                return Err(MassError::ValueOutOfRange {
                    subset: *subset,
                    value,
                });
            }
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(MassError::TotalNotOne { total });
        }
        Ok(Self { mass })
    }

    /// The vacuous mass function `m(Ω) = 1`, neutral for combination.
    pub fn vacuous() -> Self {
        Self {
            mass: [0.0, 0.0, 0.0, 1.0],
        }
    }

    /// Mass with `m({E}) = expert`, `m({NE}) = non_expert` and the remainder
    /// on `Ω`. Callers guarantee both values are ratios with sum at most one.
    pub(crate) fn from_split(expert: f64, non_expert: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&expert));
        debug_assert!((0.0..=1.0).contains(&non_expert));
        debug_assert!(expert + non_expert <= 1.0 + MASS_TOLERANCE);
        Self {
            mass: [
                0.0,
                expert,
                non_expert,
                (1.0 - expert - non_expert).max(0.0),
            ],
        }
    }

    /// Mass assigned to one subset.
    pub fn value(&self, subset: Subset) -> f64 {
        self.mass[subset.index()]
    }

    /// The mass vector in canonical order `∅, {E}, {NE}, Ω`.
    pub fn values(&self) -> [f64; 4] {
        self.mass
    }

    /// Mass on `∅`; non-zero only after combining conflicting sources.
    pub fn conflict(&self) -> f64 {
        self.mass[Subset::Empty.index()]
    }

    /// Unnormalized conjunctive combination:
    /// `(m1 ⊕ m2)(A) = Σ_{B1 ∩ B2 = A} m1(B1) · m2(B2)`.
    ///
    /// Conflict stays on `∅` — it is informative, not an error — and the
    /// result still totals one.
    pub fn combine(&self, other: &MassFunction) -> MassFunction {
        let mut mass = [0.0; 4];
        for a in Subset::ALL {
            for b in Subset::ALL {
                mass[a.intersect(b).index()] += self.value(a) * other.value(b);
            }
        }
        MassFunction { mass }
    }

    /// Jousselme distance `sqrt( 1/2 · (m1 − m2)ᵀ D (m1 − m2) )` with `D`
    /// the [`JACCARD`] matrix. Ranges over `[0, 1]` and satisfies the metric
    /// axioms because `D` is positive definite.
    pub fn jousselme_distance(&self, other: &MassFunction) -> f64 {
        let mut diff = [0.0; 4];
        for (i, slot) in diff.iter_mut().enumerate() {
            *slot = self.mass[i] - other.mass[i];
        }
        let mut quad = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                quad += diff[i] * JACCARD[i][j] * diff[j];
            }
        }
        (0.5 * quad).max(0.0).sqrt()
    }
}

#[derive(Serialize, Deserialize)]
struct MassFields {
    empty: f64,
    #[serde(rename = "E")]
    expert: f64,
    #[serde(rename = "NE")]
    non_expert: f64,
    omega: f64,
}

impl Serialize for MassFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MassFields {
            empty: self.mass[0],
            expert: self.mass[1],
            non_expert: self.mass[2],
            omega: self.mass[3],
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MassFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let fields = MassFields::deserialize(deserializer)?;
        MassFunction::from_values([fields.empty, fields.expert, fields.non_expert, fields.omega])
            .map_err(serde::de::Error::custom)
    }
}
