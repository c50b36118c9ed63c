//! One randomized trial: draw inputs, build the polynomial, apply the analyzer.

use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::config::CampaignConfig;
use super::conjecture::Conjecture;
use crate::detpoly::{build_p, build_p_r, build_q, Sequence};
use crate::error::{Error, Result};
use crate::exactmath::rational::{serde_rational_opt, serde_rational_vec};
use crate::exactmath::{int, rat, Multiset, Polynomial, Rational};
use crate::pfgen::{
    check_log_concave, check_pf_inf, check_pf_r, log_uniform_rational, uniform_rational, GeneratorClass,
    GeneratorParams,
};
use crate::rootcheck::{
    coeffs_positive, esp_ratios, hurwitz_stable, lemma1_sum, normalize_leading_positive, real_rooted_negative,
    weak_supermajorized, StabilityVerdict, VerdictKind, Witness,
};

/// Extra inputs for the two lemma checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LemmaInput {
    Weights {
        #[serde(with = "serde_rational_vec")]
        weights: Vec<Rational>,
    },
    Majorization {
        smaller: Multiset,
        larger: Multiset,
    },
}

/// Everything a verdict depends on; re-evaluating a case is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialCase {
    pub conjecture: Conjecture,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    #[serde(default, with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub beta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<GeneratorParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<LemmaInput>,
    #[serde(default)]
    pub search: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_id: u64,
    pub seed: u64,
    pub case: TrialCase,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Sequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Polynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<StabilityVerdict>,
    pub outcome: Outcome,
    pub hypotheses_hold: bool,
    pub rejections: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed, a pure function of the master seed, the conjecture and the trial id.
pub fn trial_seed(master: u64, conjecture: Conjecture, trial_id: u64) -> u64 {
    splitmix64(splitmix64(master ^ conjecture.code().wrapping_mul(0xA24B_AED4_963E_E407)) ^ trial_id)
}

/// Smallest `n` for which the claim is stated.
pub(crate) fn min_n(conjecture: Conjecture, r: usize) -> usize {
    match conjecture {
        Conjecture::C1 | Conjecture::C2 | Conjecture::C3 | Conjecture::T1 => 3,
        Conjecture::C4 | Conjecture::C5 | Conjecture::C6 => (r * (r - 1)).max(2),
        Conjecture::TA | Conjecture::L1 => 2,
        Conjecture::L2 => 1,
    }
}

/// Orders `r` in the configured range for which some `n <= n_max` gives a
/// polynomial of nonnegative degree `n - r(r-1)`.
pub fn admissible_orders(config: &CampaignConfig) -> Vec<usize> {
    (config.r..=config.r_max).filter(|r| r * (r - 1) <= config.n_max).collect()
}

fn default_class(config: &CampaignConfig, conjecture: Conjecture, trial_id: u64) -> (GeneratorClass, bool) {
    let chosen = |fallback: GeneratorClass| config.generator.unwrap_or(fallback);
    match conjecture {
        Conjecture::C1 | Conjecture::C2 => (chosen(GeneratorClass::Pf2), true),
        Conjecture::T1 => (GeneratorClass::Pf2, true),
        Conjecture::C3 if config.search => (chosen(GeneratorClass::Pf2), true),
        Conjecture::C3 | Conjecture::C6 => (chosen(GeneratorClass::PfInfRoots), false),
        Conjecture::C4 | Conjecture::C5 => {
            let alternate = if trial_id.is_multiple_of(2) {
                GeneratorClass::PfRCosbound
            } else {
                GeneratorClass::PfRSector
            };
            (chosen(alternate), false)
        }
        Conjecture::TA if trial_id.is_multiple_of(2) => (GeneratorClass::Geometric, false),
        Conjecture::TA => (GeneratorClass::Ones, false),
        Conjecture::L1 if trial_id.is_multiple_of(4) => (GeneratorClass::Geometric, false),
        Conjecture::L1 => (GeneratorClass::Pf2, false),
        Conjecture::L2 => (GeneratorClass::Ones, false),
    }
}

fn uses_alpha_beta(case_conjecture: Conjecture, search: bool) -> bool {
    matches!(case_conjecture, Conjecture::C1 | Conjecture::C2 | Conjecture::TA)
        || (case_conjecture == Conjecture::C3 && search)
}

fn draw_alpha(config: &CampaignConfig, fixed: &Option<Rational>, rng: &mut ChaCha8Rng) -> Rational {
    fixed.clone().unwrap_or_else(|| {
        uniform_rational(rng, &config.alpha_min(), &config.alpha_max, config.alpha_denominator, false)
    })
}

/// `M_0..M_m` with one sign change, last entry positive and nonnegative total;
/// with `balanced` the total is exactly zero.
fn draw_weights(rng: &mut ChaCha8Rng, len: usize, den: u64, balanced: bool) -> Vec<Rational> {
    let change = rng.gen_range(1..len);
    let mut weights: Vec<Rational> = (0..len)
        .map(|k| {
            let v = uniform_rational(rng, &rat(1, den as i64), &int(4), den, false);
            if k < change {
                -v
            } else {
                v
            }
        })
        .collect();
    let positive: Rational = weights.iter().filter(|w| w.is_positive()).sum();
    let negative: Rational = -weights.iter().filter(|w| w.is_negative()).sum::<Rational>();
    let scale = if balanced {
        Some(&positive / &negative)
    } else if negative > positive {
        Some(&positive / &negative * uniform_rational(rng, &rat(1, den as i64), &int(1), den, false))
    } else {
        None
    };
    if let Some(s) = scale {
        for w in weights.iter_mut().take(change) {
            *w = &*w * &s;
        }
    }
    weights
}

fn draw_majorization(rng: &mut ChaCha8Rng, den: u64) -> (Multiset, Multiset) {
    let size = rng.gen_range(1..=8);
    let larger: Vec<Rational> = (0..size).map(|_| log_uniform_rational(rng, den)).collect();
    let mean = larger.iter().sum::<Rational>() / int(size as i64);
    let t = uniform_rational(rng, &int(0), &int(1), 16, false);
    let smaller = larger
        .iter()
        .map(|a| {
            let lift = if rng.gen_bool(0.5) {
                uniform_rational(rng, &int(0), &int(2), den, false)
            } else {
                Rational::zero()
            };
            (int(1) - &t) * a + &t * &mean + lift
        })
        .collect();
    (Multiset::new(smaller), Multiset::new(larger))
}

enum Draw {
    Case(TrialCase, u32),
    Skip { n: usize, r: Option<usize>, note: String, rejections: u32 },
}

fn draw(config: &CampaignConfig, conjecture: Conjecture, trial_id: u64, rng: &mut ChaCha8Rng) -> Result<Draw> {
    let r = if conjecture.uses_order() {
        let orders = admissible_orders(config);
        if orders.is_empty() {
            return Ok(Draw::Skip {
                n: config.n_max,
                r: None,
                note: format!("no order r in [{}, {}] has r(r-1) <= n_max", config.r, config.r_max),
                rejections: 0,
            });
        }
        Some(orders[rng.gen_range(0..orders.len())])
    } else {
        None
    };
    let lo = config.n.max(min_n(conjecture, r.unwrap_or(2)));
    let hi = config.n_max;
    if lo > hi {
        return Ok(Draw::Skip {
            n: hi,
            r,
            note: format!("{conjecture} needs n >= {lo}, above n_max = {hi}"),
            rejections: 0,
        });
    }
    let n = rng.gen_range(lo..=hi);
    let search = config.search && conjecture == Conjecture::C3;
    let (alpha, beta) = if uses_alpha_beta(conjecture, search) {
        (Some(draw_alpha(config, &config.alpha, rng)), Some(draw_alpha(config, &config.beta, rng)))
    } else {
        (None, None)
    };
    let (class, strict) = default_class(config, conjecture, trial_id);
    let mut case = TrialCase {
        conjecture,
        n,
        r,
        alpha,
        beta,
        params: None,
        lemma: None,
        search,
    };
    if conjecture == Conjecture::L2 {
        let (smaller, larger) = draw_majorization(rng, config.denominator_bound);
        case.n = larger.len();
        case.lemma = Some(LemmaInput::Majorization { smaller, larger });
        return Ok(Draw::Case(case, 0));
    }
    let spec = config.generator_spec(class, n, r.unwrap_or(config.r), strict);
    let sample = match spec.sample(rng, config.max_rejections) {
        Ok(s) => s,
        Err(Error::GeneratorExhausted(k)) => {
            return Ok(Draw::Skip {
                n,
                r,
                note: format!("generator {class:?} exhausted after {k} rejections"),
                rejections: k,
            })
        }
        Err(e) => return Err(e),
    };
    if conjecture == Conjecture::L1 {
        let balanced = trial_id.is_multiple_of(4);
        case.lemma = Some(LemmaInput::Weights {
            weights: draw_weights(rng, n / 2 + 1, config.denominator_bound, balanced),
        });
    }
    case.params = Some(sample.params);
    Ok(Draw::Case(case, sample.rejections))
}

/// Result of evaluating a [`TrialCase`].
pub struct Evaluation {
    pub sequence: Option<Sequence>,
    pub polynomial: Option<Polynomial>,
    pub verdict: Option<StabilityVerdict>,
    pub hypotheses_hold: bool,
    pub outcome: Outcome,
}

fn verdict_kind(conjecture: Conjecture) -> VerdictKind {
    match conjecture {
        Conjecture::C1 | Conjecture::C4 | Conjecture::T1 => VerdictKind::AllCoeffsPositive,
        Conjecture::C2 | Conjecture::C5 => VerdictKind::HurwitzStable,
        Conjecture::C3 | Conjecture::C6 => VerdictKind::RealRootedNegative,
        Conjecture::TA => VerdictKind::Vanishes,
        Conjecture::L1 => VerdictKind::WeightedSumNonnegative,
        Conjecture::L2 => VerdictKind::EspRatioOrdered,
    }
}

fn expect_param<'a>(v: &'a Option<Rational>, name: &str) -> Result<&'a Rational> {
    v.as_ref().ok_or_else(|| Error::Internal(format!("case is missing {name}")))
}

fn target_polynomial(case: &TrialCase, f: &Sequence) -> Result<Polynomial> {
    let n = case.n;
    match case.conjecture {
        Conjecture::C1 | Conjecture::C2 | Conjecture::TA => {
            build_q(n, expect_param(&case.alpha, "alpha")?, expect_param(&case.beta, "beta")?, f)
        }
        Conjecture::C3 if case.search => {
            build_q(n, expect_param(&case.alpha, "alpha")?, expect_param(&case.beta, "beta")?, f)
        }
        Conjecture::C3 | Conjecture::T1 => build_p(n, f),
        Conjecture::C4 | Conjecture::C5 | Conjecture::C6 => {
            let r = case.r.ok_or_else(|| Error::Internal("case is missing r".into()))?;
            build_p_r(n, r, f)
        }
        Conjecture::L1 | Conjecture::L2 => Err(Error::Internal("lemma cases have no polynomial".into())),
    }
}

fn hypotheses(case: &TrialCase, f: &Sequence) -> bool {
    let values = f.values();
    match case.conjecture {
        Conjecture::C1 | Conjecture::C2 | Conjecture::T1 => {
            values.iter().all(|v| v.is_positive()) && check_log_concave(values, true)
        }
        Conjecture::C3 | Conjecture::C6 => check_pf_inf(values),
        Conjecture::C4 | Conjecture::C5 => case.r.is_some_and(|r| check_pf_r(values, r).ok),
        Conjecture::TA => matches!(
            case.params,
            Some(GeneratorParams::Geometric { .. } | GeneratorParams::Ones { .. })
        ),
        Conjecture::L1 | Conjecture::L2 => true,
    }
}

/// Stability implies positive coefficients; real negative roots imply stability.
/// A violation means an analyzer is wrong.
fn cross_check(p: &Polynomial) -> Result<()> {
    if p.is_zero() {
        return Ok(());
    }
    let real = real_rooted_negative(p)?.holds;
    let stable = hurwitz_stable(p)?.holds;
    let positive = coeffs_positive(&normalize_leading_positive(p), None).holds;
    if (real && !stable) || (stable && !positive) {
        return Err(Error::Internal(format!(
            "analyzer disagreement on {p}: real_rooted_negative={real}, hurwitz_stable={stable}, coeffs_positive={positive}"
        )));
    }
    Ok(())
}

fn polynomial_verdict(case: &TrialCase, p: &Polynomial) -> Result<StabilityVerdict> {
    let kind = verdict_kind(case.conjecture);
    if case.conjecture == Conjecture::TA {
        return Ok(match p.degree() {
            None => StabilityVerdict::pass(kind),
            Some(degree) => StabilityVerdict::fail(kind, Witness::NotVanishing { degree }),
        });
    }
    if p.is_zero() {
        return Ok(StabilityVerdict::fail(kind, Witness::ZeroPolynomial));
    }
    let n = case.n;
    match case.conjecture {
        Conjecture::C1 | Conjecture::T1 => Ok(coeffs_positive(p, Some(n - 2))),
        Conjecture::C4 => {
            let r = case.r.unwrap_or(2);
            Ok(coeffs_positive(p, Some(n - r * (r - 1))))
        }
        Conjecture::C2 | Conjecture::C5 => hurwitz_stable(p),
        _ => real_rooted_negative(p),
    }
}

fn lemma_verdict(case: &TrialCase, f: Option<&Sequence>) -> Result<(StabilityVerdict, bool)> {
    let kind = verdict_kind(case.conjecture);
    match (&case.lemma, f) {
        (Some(LemmaInput::Weights { weights }), Some(f)) => {
            let w = lemma1_sum(f, weights)?;
            let verdict = if w.sum.is_negative() {
                StabilityVerdict::fail(kind, Witness::NegativeWeightedSum { sum: w.sum })
            } else {
                StabilityVerdict::pass(kind)
            };
            Ok((verdict, w.hypotheses.all()))
        }
        (Some(LemmaInput::Majorization { smaller, larger }), _) => {
            let ok = weak_supermajorized(smaller, larger)?;
            for k in 1..=larger.len() {
                let (lhs, rhs) = esp_ratios(smaller, larger, k);
                if lhs > rhs {
                    return Ok((StabilityVerdict::fail(kind, Witness::RatioOrderViolated { k, lhs, rhs }), ok));
                }
            }
            Ok((StabilityVerdict::pass(kind), ok))
        }
        _ => Err(Error::Internal(format!("{} case is missing its inputs", case.conjecture))),
    }
}

/// Recomputes the verdict of a case from its stored parameters. Outside search
/// mode a case whose sequence misses the hypotheses is not applicable.
pub fn evaluate(case: &TrialCase) -> Result<Evaluation> {
    evaluate_with(case, !case.search)
}

/// Like [`evaluate`]; with `require_hypotheses = false` the verdict is computed
/// even when the hypotheses fail (`hypotheses_hold` still reports them).
pub fn evaluate_with(case: &TrialCase, require_hypotheses: bool) -> Result<Evaluation> {
    let sequence = case.params.as_ref().map(GeneratorParams::build).transpose()?;
    if let Some(f) = &sequence {
        if f.last_index() != case.n {
            return Err(Error::Internal(format!(
                "sequence has last index {}, case says n = {}",
                f.last_index(),
                case.n
            )));
        }
    }
    if matches!(case.conjecture, Conjecture::L1 | Conjecture::L2) {
        let (verdict, hypotheses_hold) = lemma_verdict(case, sequence.as_ref())?;
        let outcome = match (hypotheses_hold || !require_hypotheses, verdict.holds) {
            (false, _) => Outcome::NotApplicable,
            (true, true) => Outcome::Holds,
            (true, false) => Outcome::Fails,
        };
        return Ok(Evaluation {
            sequence,
            polynomial: None,
            verdict: Some(verdict),
            hypotheses_hold,
            outcome,
        });
    }
    let f = sequence
        .as_ref()
        .ok_or_else(|| Error::Internal(format!("{} case has no sequence", case.conjecture)))?;
    let hypotheses_hold = hypotheses(case, f);
    if !hypotheses_hold && require_hypotheses {
        return Ok(Evaluation {
            sequence,
            polynomial: None,
            verdict: None,
            hypotheses_hold,
            outcome: Outcome::NotApplicable,
        });
    }
    let p = target_polynomial(case, f)?;
    if case.conjecture != Conjecture::TA {
        cross_check(&p)?;
    }
    let verdict = polynomial_verdict(case, &p)?;
    let outcome = if verdict.holds { Outcome::Holds } else { Outcome::Fails };
    Ok(Evaluation {
        sequence,
        polynomial: Some(p),
        verdict: Some(verdict),
        hypotheses_hold,
        outcome,
    })
}

fn record_from(trial_id: u64, seed: u64, case: TrialCase, eval: Evaluation, rejections: u32) -> TrialRecord {
    TrialRecord {
        trial_id,
        seed,
        case,
        sequence: eval.sequence,
        polynomial: eval.polynomial,
        verdict: eval.verdict,
        outcome: eval.outcome,
        hypotheses_hold: eval.hypotheses_hold,
        rejections,
        note: None,
        elapsed_ms: 0,
    }
}

/// Runs trial `trial_id` of `conjecture`; the same arguments always give the same
/// record apart from `elapsed_ms`.
pub fn run_trial(config: &CampaignConfig, conjecture: Conjecture, trial_id: u64) -> Result<TrialRecord> {
    let start = Instant::now();
    let seed = trial_seed(config.seed, conjecture, trial_id);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut record = match draw(config, conjecture, trial_id, &mut rng)? {
        Draw::Case(case, rejections) => {
            let eval = evaluate(&case)?;
            record_from(trial_id, seed, case, eval, rejections)
        }
        Draw::Skip { n, r, note, rejections } => TrialRecord {
            trial_id,
            seed,
            case: TrialCase {
                conjecture,
                n,
                r,
                alpha: None,
                beta: None,
                params: None,
                lemma: None,
                search: false,
            },
            sequence: None,
            polynomial: None,
            verdict: None,
            outcome: Outcome::NotApplicable,
            hypotheses_hold: false,
            rejections,
            note: Some(note),
            elapsed_ms: 0,
        },
    };
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(record)
}

/// Re-derives a record from its stored case; used to confirm persisted and shrunk
/// counterexamples.
pub fn reevaluate(record: &TrialRecord) -> Result<TrialRecord> {
    let eval = evaluate(&record.case)?;
    let mut fresh = record_from(record.trial_id, record.seed, record.case.clone(), eval, record.rejections);
    fresh.note = record.note.clone();
    fresh.elapsed_ms = record.elapsed_ms;
    Ok(fresh)
}
