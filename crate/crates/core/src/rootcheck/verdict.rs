use serde::{Deserialize, Serialize};

use crate::exactmath::rational::{serde_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    AllCoeffsPositive,
    HurwitzStable,
    RealRootedNegative,
    NonnegativeOnSamples,
    WeightedSumNonnegative,
    EspRatioOrdered,
    Vanishes,
}

/// Why a predicate failed; serialized with a `type` tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    ZeroPolynomial,
    CoefficientNotPositive {
        index: usize,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    DegreeMismatch {
        expected: usize,
        observed: Option<usize>,
    },
    /// `index` is 1-based: the failing leading principal minor `Δ_index`.
    HurwitzMinor {
        index: usize,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    RealRootShortfall {
        distinct_real: usize,
        distinct_total: usize,
    },
    NonnegativeRoot {
        count: usize,
    },
    NegativeSample {
        #[serde(with = "serde_rational")]
        x: Rational,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    NegativeWeightedSum {
        #[serde(with = "serde_rational")]
        sum: Rational,
    },
    NotVanishing {
        degree: usize,
    },
    RatioOrderViolated {
        k: usize,
        #[serde(with = "serde_rational")]
        lhs: Rational,
        #[serde(with = "serde_rational")]
        rhs: Rational,
    },
}

impl Witness {
    /// The serialized `type` tag.
    pub fn tag(&self) -> &'static str {
        match self {
            Witness::ZeroPolynomial => "zero_polynomial",
            Witness::CoefficientNotPositive { .. } => "coefficient_not_positive",
            Witness::DegreeMismatch { .. } => "degree_mismatch",
            Witness::HurwitzMinor { .. } => "hurwitz_minor",
            Witness::RealRootShortfall { .. } => "real_root_shortfall",
            Witness::NonnegativeRoot { .. } => "nonnegative_root",
            Witness::NegativeSample { .. } => "negative_sample",
            Witness::NegativeWeightedSum { .. } => "negative_weighted_sum",
            Witness::NotVanishing { .. } => "not_vanishing",
            Witness::RatioOrderViolated { .. } => "ratio_order_violated",
        }
    }
}

/// Outcome of one predicate; `witness` is present exactly when `holds` is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub kind: VerdictKind,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl StabilityVerdict {
    pub fn pass(kind: VerdictKind) -> Self {
        Self {
            kind,
            holds: true,
            witness: None,
        }
    }

    pub fn fail(kind: VerdictKind, witness: Witness) -> Self {
        Self {
            kind,
            holds: false,
            witness: Some(witness),
        }
    }
}
