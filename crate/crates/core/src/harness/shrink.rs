//! Greedy reduction of failing trials to smaller failing trials.

use num_traits::Zero;

use super::trial::{evaluate, min_n, Outcome, TrialCase, TrialRecord};
use crate::error::{invalid, Result};
use crate::exactmath::rational::{bit_size, limit_denominator};
use crate::exactmath::Rational;
use crate::pfgen::GeneratorParams;

const MAX_STEPS: usize = 500;

fn rationals_mut(params: &mut GeneratorParams) -> Vec<&mut Rational> {
    match params {
        GeneratorParams::Pf2 { f0, deltas } | GeneratorParams::PfRCosbound { f0, deltas, .. } => {
            std::iter::once(f0).chain(deltas.iter_mut()).collect()
        }
        GeneratorParams::PfRSector { real_roots, pairs, .. } => real_roots
            .iter_mut()
            .chain(pairs.iter_mut().flat_map(|p| [&mut p.modulus, &mut p.angle]))
            .collect(),
        GeneratorParams::PfInfRoots { roots } => roots.iter_mut().collect(),
        GeneratorParams::Q3 { f0, beta, deltas } => [f0, beta].into_iter().chain(deltas.iter_mut()).collect(),
        GeneratorParams::Geometric { f0, ratio, .. } => vec![f0, ratio],
        GeneratorParams::Ones { .. } => Vec::new(),
        GeneratorParams::Raw { values } => values.iter_mut().collect(),
    }
}

fn size(case: &TrialCase) -> (usize, u64) {
    let mut params = case.params.clone();
    let params_bits: u64 = params.as_mut().map_or(0, |p| rationals_mut(p).iter().map(|x| bit_size(x)).sum());
    let ab_bits: u64 = [&case.alpha, &case.beta].iter().filter_map(|v| v.as_ref()).map(bit_size).sum();
    (case.n, params_bits + ab_bits)
}

/// Nearby values with fewer bits: best approximations with small denominators.
fn simpler(x: &Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    let mut den = 1u64;
    while den <= 1 << 20 && x.denom() > &den.into() {
        let y = limit_denominator(x, den);
        if !y.is_zero() && bit_size(&y) < bit_size(x) && !out.contains(&y) {
            out.push(y);
        }
        den *= 2;
    }
    out
}

/// Same parameters with the last index reduced by one or two.
fn smaller_n(case: &TrialCase) -> Vec<TrialCase> {
    let Some(params) = &case.params else { return Vec::new() };
    let with = |p: GeneratorParams| {
        let n = p.last_index();
        TrialCase {
            n,
            params: Some(p),
            ..case.clone()
        }
    };
    let mut out = Vec::new();
    match params {
        GeneratorParams::Pf2 { f0, deltas } if !deltas.is_empty() => out.push(with(GeneratorParams::Pf2 {
            f0: f0.clone(),
            deltas: deltas[..deltas.len() - 1].to_vec(),
        })),
        GeneratorParams::PfRCosbound { r, f0, deltas } if !deltas.is_empty() => {
            out.push(with(GeneratorParams::PfRCosbound {
                r: *r,
                f0: f0.clone(),
                deltas: deltas[..deltas.len() - 1].to_vec(),
            }))
        }
        GeneratorParams::PfRSector {
            r,
            real_roots,
            pairs,
            denominator_bound,
        } => {
            for i in 0..real_roots.len() {
                let mut roots = real_roots.clone();
                roots.remove(i);
                out.push(with(GeneratorParams::PfRSector {
                    r: *r,
                    real_roots: roots,
                    pairs: pairs.clone(),
                    denominator_bound: *denominator_bound,
                }));
            }
            for i in 0..pairs.len() {
                let mut fewer = pairs.clone();
                fewer.remove(i);
                out.push(with(GeneratorParams::PfRSector {
                    r: *r,
                    real_roots: real_roots.clone(),
                    pairs: fewer,
                    denominator_bound: *denominator_bound,
                }));
            }
        }
        GeneratorParams::PfInfRoots { roots } => {
            for i in 0..roots.len() {
                let mut fewer = roots.clone();
                fewer.remove(i);
                out.push(with(GeneratorParams::PfInfRoots { roots: fewer }));
            }
        }
        GeneratorParams::Q3 { f0, beta, deltas } if !deltas.is_empty() => out.push(with(GeneratorParams::Q3 {
            f0: f0.clone(),
            beta: beta.clone(),
            deltas: deltas[..deltas.len() - 1].to_vec(),
        })),
        GeneratorParams::Geometric { n, f0, ratio } if *n > 0 => out.push(with(GeneratorParams::Geometric {
            n: n - 1,
            f0: f0.clone(),
            ratio: ratio.clone(),
        })),
        GeneratorParams::Ones { n } if *n > 0 => out.push(with(GeneratorParams::Ones { n: n - 1 })),
        GeneratorParams::Raw { values } if values.len() > 1 => out.push(with(GeneratorParams::Raw {
            values: values[..values.len() - 1].to_vec(),
        })),
        _ => {}
    }
    let floor = min_n(case.conjecture, case.r.unwrap_or(2));
    out.retain(|c| c.n >= floor && c.lemma.is_none());
    out
}

fn simplified(case: &TrialCase) -> Vec<TrialCase> {
    let mut out = Vec::new();
    if let Some(params) = &case.params {
        let mut probe = params.clone();
        let slots = rationals_mut(&mut probe).len();
        for i in 0..slots {
            let current = rationals_mut(&mut probe)[i].clone();
            for v in simpler(&current) {
                let mut p = params.clone();
                *rationals_mut(&mut p)[i] = v;
                out.push(TrialCase {
                    params: Some(p),
                    ..case.clone()
                });
            }
        }
    }
    for which in [0, 1] {
        let slot = if which == 0 { &case.alpha } else { &case.beta };
        if let Some(x) = slot {
            for v in simpler(x) {
                let mut c = case.clone();
                if which == 0 {
                    c.alpha = Some(v);
                } else {
                    c.beta = Some(v);
                }
                out.push(c);
            }
        }
    }
    out
}

fn still_fails(case: &TrialCase) -> bool {
    evaluate(case).is_ok_and(|e| e.outcome == Outcome::Fails && (e.hypotheses_hold || case.search))
}

/// Greedily tries (a) a smaller `n`, then (b) simpler rationals, keeping the
/// failure and the hypotheses. Returns the input unchanged when nothing smaller fails.
pub fn shrink(record: &TrialRecord) -> Result<TrialRecord> {
    if record.outcome != Outcome::Fails {
        return invalid("only failing records can be shrunk");
    }
    let mut best = record.case.clone();
    let mut steps = 0;
    'outer: while steps < MAX_STEPS {
        let current = size(&best);
        for candidate in smaller_n(&best).into_iter().chain(simplified(&best)) {
            steps += 1;
            if size(&candidate) < current && still_fails(&candidate) {
                best = candidate;
                continue 'outer;
            }
            if steps >= MAX_STEPS {
                break 'outer;
            }
        }
        break;
    }
    let eval = evaluate(&best)?;
    Ok(TrialRecord {
        trial_id: record.trial_id,
        seed: record.seed,
        case: best,
        sequence: eval.sequence,
        polynomial: eval.polynomial,
        verdict: eval.verdict,
        outcome: eval.outcome,
        hypotheses_hold: eval.hypotheses_hold,
        rejections: record.rejections,
        note: Some(format!("shrunk from n = {}", record.case.n)),
        elapsed_ms: 0,
    })
}
