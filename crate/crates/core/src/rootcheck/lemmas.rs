//! Checkers for the weighted-sum inequality over log-concave weights and the
//! elementary-symmetric ratio ordering under weak supermajorization.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::sturm::sign_changes;
use crate::detpoly::Sequence;
use crate::error::{invalid, Result};
use crate::exactmath::rational::serde_rational;
use crate::exactmath::{elementary_symmetric_all, Multiset, Rational};
use crate::pfgen::check_log_concave;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSumHypotheses {
    pub last_positive: bool,
    pub total_nonnegative: bool,
    pub one_sign_change: bool,
    pub log_concave: bool,
}

impl WeightedSumHypotheses {
    pub fn all(&self) -> bool {
        self.last_positive && self.total_nonnegative && self.one_sign_change && self.log_concave
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSum {
    #[serde(with = "serde_rational")]
    pub sum: Rational,
    pub hypotheses: WeightedSumHypotheses,
}

/// `Σ_{0≤k≤n/2} f_k f_{n-k} M_k` with the hypotheses it is guaranteed nonnegative under.
/// `M` must have exactly `⌊n/2⌋ + 1` entries.
pub fn lemma1_sum(f: &Sequence, m: &[Rational]) -> Result<WeightedSum> {
    let n = f.last_index();
    if m.len() != n / 2 + 1 {
        return invalid(format!("M has {} entries, need {}", m.len(), n / 2 + 1));
    }
    let sum = m.iter().enumerate().fold(Rational::zero(), |acc, (k, mk)| {
        acc + f.get(k as i64) * f.get((n - k) as i64) * mk
    });
    let total: Rational = m.iter().sum();
    let hypotheses = WeightedSumHypotheses {
        last_positive: m.last().is_some_and(|v| v.is_positive()),
        total_nonnegative: !total.is_negative(),
        one_sign_change: sign_changes(m) == 1,
        log_concave: check_log_concave(f.values(), false),
    };
    Ok(WeightedSum { sum, hypotheses })
}

fn check_pair(b: &Multiset, a: &Multiset) -> Result<()> {
    if a.len() != b.len() {
        return invalid(format!("size mismatch: |B| = {}, |A| = {}", b.len(), a.len()));
    }
    if !a.all_positive() || !b.all_positive() {
        return invalid("majorization needs positive elements");
    }
    Ok(())
}

/// `B ≺^W A`: every ascending partial sum of `A` is at most that of `B`.
pub fn weak_supermajorized(b: &Multiset, a: &Multiset) -> Result<bool> {
    check_pair(b, a)?;
    let mut sa = Rational::zero();
    let mut sb = Rational::zero();
    for (x, y) in a.elements().iter().zip(b.elements()) {
        sa += x;
        sb += y;
        if sa > sb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `e_k(A)/e_{k-1}(A)` and `e_k(B)/e_{k-1}(B)`.
pub fn esp_ratios(b: &Multiset, a: &Multiset, k: usize) -> (Rational, Rational) {
    let ea = elementary_symmetric_all(a);
    let eb = elementary_symmetric_all(b);
    (&ea[k] / &ea[k - 1], &eb[k] / &eb[k - 1])
}

/// Checks `e_k(A)/e_{k-1}(A) <= e_k(B)/e_{k-1}(B)` given `B ≺^W A`.
pub fn esp_ratio_decreases(b: &Multiset, a: &Multiset, k: usize) -> Result<bool> {
    if !weak_supermajorized(b, a)? {
        return invalid("B is not weakly supermajorized by A");
    }
    if k == 0 || k > a.len() {
        return invalid(format!("k = {k} outside [1, {}]", a.len()));
    }
    let (lhs, rhs) = esp_ratios(b, a, k);
    Ok(lhs <= rhs)
}
