//! Exact predicates on polynomials: positive coefficients, Hurwitz stability,
//! real negative roots; plus sign-change counting and the majorization checks.

mod analyzers;
mod lemmas;
mod sturm;
mod verdict;

pub use analyzers::{
    coeffs_positive, hurwitz_matrix, hurwitz_stable, leading_minors_until_nonpositive,
    normalize_leading_positive, real_rooted_negative,
};
pub use lemmas::{
    esp_ratio_decreases, esp_ratios, lemma1_sum, weak_supermajorized, WeightedSum,
    WeightedSumHypotheses,
};
pub use sturm::{sign_changes, sturm_chain, sturm_count, Bound};
pub use verdict::{StabilityVerdict, VerdictKind, Witness};
