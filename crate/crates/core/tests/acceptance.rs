//! Acceptance criteria 1-9. Each criterion prints one `PASS`/`FAIL` line with its
//! wall time against the budget. Criteria run one at a time so the budgets are
//! not distorted by sibling tests sharing the machine.

use std::io::Write;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rfdet::detpoly::{build_p, build_p_r, build_p_via_phi, build_q, coeff_p, phi, series_oracle, Sequence};
use rfdet::exactmath::{factorial, int, rat, Multiset, Polynomial, Rational};
use rfdet::harness::{
    reevaluate, run_campaign, run_trial, CampaignConfig, CampaignReport, Conjecture, Outcome, TrialSummary,
};
use rfdet::pfgen::{check_pf_inf, check_pf_r, gen_pf2, gen_pf_inf, grabarek_transform, uniform_rational};
use rfdet::rootcheck::{
    coeffs_positive, esp_ratio_decreases, hurwitz_stable, lemma1_sum, real_rooted_negative, weak_supermajorized,
};

static ONE_AT_A_TIME: Mutex<()> = Mutex::new(());

type CriterionResult = Result<String, String>;

/// Runs `body` under the budget and prints the criterion line. Output goes straight
/// to the process stdout so it shows up without `--nocapture`.
fn criterion(id: &str, title: &str, budget: Duration, body: impl FnOnce() -> CriterionResult) {
    let _guard = ONE_AT_A_TIME.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget;
    let (passed, detail) = match &result {
        Ok(d) => (in_budget, d.clone()),
        Err(e) => (false, e.clone()),
    };
    let line = format!(
        "criterion {id} [{}] {title}: {detail} ({:.2}s, budget {}s{})\n",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_budget { "" } else { ", over budget" }
    );
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(passed, "{}", line.trim_end());
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Err(msg())
    } else {
        Ok(())
    }
}

fn random_sequence(rng: &mut ChaCha8Rng, n: usize) -> Sequence {
    let values = (0..=n).map(|_| uniform_rational(rng, &rat(1, 16), &int(8), 16, false)).collect();
    Sequence::raw(values).unwrap()
}

fn random_positive(rng: &mut ChaCha8Rng, max: i64, den: u64) -> Rational {
    uniform_rational(rng, &rat(1, den as i64), &int(max), den, false)
}

fn err(e: rfdet::Error) -> String {
    e.to_string()
}

#[test]
fn criterion_1_identity_suite() {
    criterion("1", "vanishing identities", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut checked = 0;
        for _ in 0..20 {
            let (a, b) = (random_positive(&mut rng, 5, 64), random_positive(&mut rng, 5, 64));
            for n in 2..=12 {
                let q = build_q(n, &a, &b, &Sequence::ones(n)).map_err(err)?;
                fail_if(!q.is_zero(), || format!("Q_{n}^({a},{b})(ones) = {q}"))?;
                checked += 1;
            }
        }
        for _ in 0..50 {
            let ratio = random_positive(&mut rng, 8, 32);
            let f0 = random_positive(&mut rng, 4, 8);
            let n = rng.gen_range(2..=12);
            let (a, b) = (random_positive(&mut rng, 5, 64), random_positive(&mut rng, 5, 64));
            let f = Sequence::geometric(n, &f0, &ratio).map_err(err)?;
            let q = build_q(n, &a, &b, &f).map_err(err)?;
            fail_if(!q.is_zero(), || format!("Q_{n}^({a},{b}) on geometric ratio {ratio} = {q}"))?;
            checked += 1;
        }
        Ok(format!("{checked} exact zero polynomials"))
    });
}

#[test]
fn criterion_2_worked_values() {
    criterion("2", "worked values", Duration::from_secs(5), || {
        let two_x_plus_one = Polynomial::from_ints(&[2, 2]);
        let six_x_plus_one = Polynomial::from_ints(&[6, 6]);
        let four_x_x_plus_one = Polynomial::from_ints(&[0, 4, 4]);
        let mut mismatches = Vec::new();
        let phi31 = phi(3, 1).map_err(err)?.phi;
        if phi31 != two_x_plus_one {
            mismatches.push(format!("Phi_1 at n = 3 is {phi31}, stated 2(x+1)"));
        }
        let phi41 = phi(4, 1).map_err(err)?.phi;
        if phi41 != six_x_plus_one {
            mismatches.push(format!("Phi_1 at n = 4 is {phi41}, stated 6(x+1)"));
        }
        let phi42 = phi(4, 2).map_err(err)?.phi;
        if phi42 != four_x_x_plus_one {
            mismatches.push(format!("Phi_2 at n = 4 is {phi42}, stated 4x(x+1)"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let n = rng.gen_range(2..=10);
            let f = random_sequence(&mut rng, n);
            let v = f.values();
            let expected = Rational::from_integer(factorial(n)) * (&v[1] * &v[n - 1] - &v[0] * &v[n]);
            let got = build_p(n, &f).map_err(err)?.coeff(0);
            if got != expected {
                mismatches.push(format!("p_{n}(0) = {got}, formula gives {expected}"));
                break;
            }
        }
        if mismatches.is_empty() {
            Ok("Phi values and 100 free terms match".into())
        } else {
            Err(mismatches.join("; "))
        }
    });
}

#[test]
fn criterion_3_route_equivalence() {
    criterion("3", "four-route equivalence", Duration::from_secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..500 {
            let n = rng.gen_range(2..=10);
            let f = random_sequence(&mut rng, n);
            let p = build_p(n, &f).map_err(err)?;
            let via_phi = build_p_via_phi(n, &f).map_err(err)?;
            fail_if(via_phi != p, || format!("sample {i}: phi route differs at n = {n}"))?;
            let coeffs = (0..=n - 2).map(|m| coeff_p(n, m, &f)).collect::<Result<Vec<_>, _>>().map_err(err)?;
            fail_if(Polynomial::from_coeffs(coeffs) != p, || {
                format!("sample {i}: coefficient route differs at n = {n}")
            })?;
        }
        for i in 0..200 {
            let n = rng.gen_range(2..=10);
            let f = random_sequence(&mut rng, n);
            fail_if(build_p_r(n, 2, &f).map_err(err)? != build_p(n, &f).map_err(err)?, || {
                format!("sample {i}: P_n^2 differs from P_n at n = {n}")
            })?;
        }
        for r in 2..=4 {
            for i in 0..100 {
                let n = rng.gen_range(0..=8);
                let f = random_sequence(&mut rng, n);
                fail_if(series_oracle(n, r, &f).map_err(err)? != build_p_r(n, r, &f).map_err(err)?, || {
                    format!("r = {r}, sample {i}: series route differs at n = {n}")
                })?;
            }
        }
        Ok("500 + 200 + 300 samples agree exactly".into())
    });
}

#[test]
fn criterion_4_theorem_one() {
    criterion("4", "degree n-2 and positive coefficients", Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for i in 0..1000 {
            let n = rng.gen_range(3..=12);
            let f0 = random_positive(&mut rng, 4, 16);
            let deltas: Vec<Rational> = (0..n)
                .map(|_| uniform_rational(&mut rng, &rat(1, 64), &int(1), 64, true))
                .collect();
            let f = gen_pf2(n, &f0, &deltas).map_err(err)?;
            let v = f.values();
            let strict = (1..n).all(|k| &v[k] * &v[k] > &v[k - 1] * &v[k + 1]);
            fail_if(!strict, || format!("sample {i}: generator output is not strictly log-concave"))?;
            let p = build_p(n, &f).map_err(err)?;
            fail_if(p.degree() != Some(n - 2), || {
                format!("sample {i}: degree {:?}, expected {}", p.degree(), n - 2)
            })?;
            fail_if(p.coeffs().iter().any(|c| !c.is_positive()), || {
                format!("sample {i}: nonpositive coefficient in {p}")
            })?;
        }
        Ok("1000 strictly log-concave samples, zero failures".into())
    });
}

/// Known-root polynomial families for the analyzer ground truth.
#[derive(Clone, Copy, Debug)]
enum RootFamily {
    NegativeReal,
    WithNonnegativeReal,
    StableComplexPair,
    UnstableComplexPair,
}

fn from_roots(rng: &mut ChaCha8Rng, family: RootFamily) -> Polynomial {
    let mut p = Polynomial::one();
    for _ in 0..rng.gen_range(1..=5) {
        let a = random_positive(rng, 6, 8);
        let times = if rng.gen_bool(0.2) { 2 } else { 1 };
        for _ in 0..times {
            p = &p * &Polynomial::linear(a.clone(), int(1));
        }
    }
    // x^2 - 2 s x + (s^2 + t^2) has roots s +- i t
    let pair = |s: Rational, t: Rational| Polynomial::from_coeffs(vec![&s * &s + &t * &t, -(int(2) * &s), int(1)]);
    let t = random_positive(rng, 3, 8);
    p = match family {
        RootFamily::NegativeReal => p,
        RootFamily::WithNonnegativeReal => {
            let c = if rng.gen_bool(0.3) { int(0) } else { random_positive(rng, 6, 8) };
            &p * &Polynomial::linear(-c, int(1))
        }
        RootFamily::StableComplexPair => &p * &pair(-random_positive(rng, 3, 8), t),
        RootFamily::UnstableComplexPair => {
            let s = if rng.gen_bool(0.3) { int(0) } else { random_positive(rng, 3, 8) };
            &p * &pair(s, t)
        }
    };
    let scale = random_positive(rng, 9, 4);
    let scale = if rng.gen_bool(0.25) { -scale } else { scale };
    p.scale(&scale)
}

#[test]
fn criterion_5_analyzer_ground_truth() {
    criterion("5", "analyzers against known roots", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let families = [
            (RootFamily::NegativeReal, true, true),
            (RootFamily::WithNonnegativeReal, false, false),
            (RootFamily::StableComplexPair, true, false),
            (RootFamily::UnstableComplexPair, false, false),
        ];
        for i in 0..500 {
            let (family, stable, real_negative) = families[i % 4];
            let p = from_roots(&mut rng, family);
            let h = hurwitz_stable(&p).map_err(err)?;
            let r = real_rooted_negative(&p).map_err(err)?;
            fail_if(h.holds != stable, || format!("sample {i} ({family:?}): hurwitz {} for {p}", h.holds))?;
            fail_if(r.holds != real_negative, || {
                format!("sample {i} ({family:?}): real_rooted_negative {} for {p}", r.holds)
            })?;
            let positive = coeffs_positive(&p.scale(&p.leading().unwrap().signum()), None).holds;
            fail_if(h.holds && !positive, || format!("sample {i}: stable but not positive: {p}"))?;
            fail_if(r.holds && !h.holds, || format!("sample {i}: real negative but not stable: {p}"))?;
        }
        Ok("500 polynomials classified correctly; Stodola holds".into())
    });
}

#[test]
fn criterion_6_pf_machinery() {
    criterion("6", "PF generators and checks", Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut checked = 0;
        for i in 0..60 {
            let n = rng.gen_range(1..=8);
            let roots: Vec<Rational> = (0..n).map(|_| random_positive(&mut rng, 8, 16)).collect();
            let f = gen_pf_inf(&roots).map_err(err)?;
            fail_if(!check_pf_inf(f.values()), || format!("sample {i}: check_pf_inf rejects {roots:?}"))?;
            for r in 1..=5 {
                let res = check_pf_r(f.values(), r);
                fail_if(!res.ok, || format!("sample {i}: PF_{r} rejects, witness {:?}", res.witness))?;
                checked += 1;
            }
        }
        let ones = vec![int(1); 3];
        fail_if(!check_pf_r(&ones, 2).ok, || "(1,1,1) should be PF_2".into())?;
        let three = check_pf_r(&ones, 3);
        let witness = three.witness.as_ref().map(|w| w.value.clone());
        fail_if(three.ok || witness != Some(int(-1)), || format!("(1,1,1) order 3: {three:?}"))?;
        for i in 0..500 {
            let n = rng.gen_range(0..=10);
            let p = rng.gen_range(1..=3);
            let roots: Vec<Rational> = (0..n).map(|_| random_positive(&mut rng, 8, 16)).collect();
            let f = gen_pf_inf(&roots).map_err(err)?;
            let g = grabarek_transform(f.values(), p).map_err(err)?;
            fail_if(!check_pf_inf(&g), || format!("sample {i}: transform with p = {p} leaves PF_inf"))?;
        }
        Ok(format!("{checked} PF_r checks, (1,1,1) witness -1, 500 transforms stay PF_inf"))
    });
}

/// Weights with exactly one sign change, positive last entry and nonnegative total.
fn lemma1_weights(rng: &mut ChaCha8Rng, len: usize, balanced: bool) -> Vec<Rational> {
    let change = rng.gen_range(1..len);
    let mut w: Vec<Rational> = (0..len)
        .map(|k| {
            let v = random_positive(rng, 4, 16);
            if k < change {
                -v
            } else {
                v
            }
        })
        .collect();
    let neg: Rational = -w[..change].iter().sum::<Rational>();
    let pos: Rational = w[change..].iter().sum();
    let target = if balanced { pos.clone() } else { &pos * random_positive(rng, 1, 16) };
    if neg > target || balanced {
        let s = &target / &neg;
        for x in &mut w[..change] {
            *x = &*x * &s;
        }
    }
    w
}

fn elementary_symmetric(xs: &[Rational]) -> Vec<Rational> {
    let mut e = vec![int(1)];
    for x in xs {
        let mut next = e.clone();
        next.push(int(0));
        for k in 1..next.len() {
            next[k] = &e.get(k).cloned().unwrap_or_else(Rational::zero) + x * &e[k - 1];
        }
        e = next;
    }
    e
}

/// `A` from `B` by shrinking entries and moving mass from smaller to larger entries;
/// both moves keep every ascending partial sum of `A` at most that of `B`.
fn supermajorized_pair(rng: &mut ChaCha8Rng) -> (Vec<Rational>, Vec<Rational>) {
    let size = rng.gen_range(1..=8);
    let mut b: Vec<Rational> = (0..size).map(|_| random_positive(rng, 8, 16)).collect();
    b.sort();
    let mut a = b.clone();
    for _ in 0..rng.gen_range(0..=4) {
        let i = rng.gen_range(0..size);
        let keep = uniform_rational(rng, &rat(1, 4), &int(1), 16, false);
        a[i] = &a[i] * keep;
        a.sort();
        if size > 1 {
            let lo = rng.gen_range(0..size - 1);
            let hi = rng.gen_range(lo + 1..size);
            let moved = &a[lo] * uniform_rational(rng, &int(0), &rat(1, 2), 16, false);
            a[lo] -= &moved;
            a[hi] += moved;
            a.sort();
        }
    }
    (b, a)
}

#[test]
fn criterion_7_lemma_suites() {
    criterion("7", "weighted-sum and ratio lemmas", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut equalities = 0;
        for i in 0..500 {
            let n = rng.gen_range(2..=12);
            let geometric = i % 5 == 0;
            let f = if geometric {
                Sequence::geometric(n, &random_positive(&mut rng, 4, 8), &random_positive(&mut rng, 4, 16))
            } else {
                let deltas: Vec<Rational> = (0..n)
                    .map(|_| uniform_rational(&mut rng, &rat(1, 32), &int(1), 32, false))
                    .collect();
                gen_pf2(n, &random_positive(&mut rng, 4, 16), &deltas)
            }
            .map_err(err)?;
            let m = lemma1_weights(&mut rng, n / 2 + 1, geometric);
            let w = lemma1_sum(&f, &m).map_err(err)?;
            fail_if(!w.hypotheses.all(), || format!("sample {i}: hypotheses fail: {:?}", w.hypotheses))?;
            let v = f.values();
            let direct: Rational = m.iter().enumerate().map(|(k, mk)| &v[k] * &v[n - k] * mk).sum();
            fail_if(direct != w.sum, || format!("sample {i}: sum {} vs direct {direct}", w.sum))?;
            fail_if(direct.is_negative(), || format!("sample {i}: negative weighted sum {direct}"))?;
            if geometric {
                fail_if(!direct.is_zero(), || format!("sample {i}: balanced geometric sum {direct} != 0"))?;
                equalities += 1;
            }
        }
        for i in 0..500 {
            let (b, a) = supermajorized_pair(&mut rng);
            let mut sa = int(0);
            let mut sb = int(0);
            for (x, y) in a.iter().zip(&b) {
                sa += x;
                sb += y;
                fail_if(sa > sb, || format!("sample {i}: construction broke majorization"))?;
            }
            let (mb, ma) = (Multiset::new(b.clone()), Multiset::new(a.clone()));
            fail_if(!weak_supermajorized(&mb, &ma).map_err(err)?, || format!("sample {i}: checker disagrees"))?;
            let (ea, eb) = (elementary_symmetric(&a), elementary_symmetric(&b));
            for k in 1..=a.len() {
                let direct = &ea[k] / &ea[k - 1] <= &eb[k] / &eb[k - 1];
                fail_if(!direct, || format!("sample {i}, k = {k}: ratio inequality fails"))?;
                fail_if(esp_ratio_decreases(&mb, &ma, k).map_err(err)? != direct, || {
                    format!("sample {i}, k = {k}: checker disagrees")
                })?;
            }
        }
        Ok(format!("500 weighted sums ({equalities} geometric equalities), 500 majorized pairs"))
    });
}

const CAMPAIGN_BUDGET: Duration = Duration::from_secs(15 * 60);

fn default_campaign() -> &'static (CampaignReport, Duration) {
    static REPORT: OnceLock<(CampaignReport, Duration)> = OnceLock::new();
    REPORT.get_or_init(|| {
        let config = CampaignConfig {
            conjecture: Conjecture::OPEN.to_vec(),
            trials: 500,
            ..Default::default()
        };
        let start = Instant::now();
        let report = run_campaign(&config).expect("valid config");
        (report, start.elapsed())
    })
}

fn same_summary(a: &TrialSummary, b: &TrialSummary) -> bool {
    TrialSummary { elapsed_ms: 0, ..a.clone() } == TrialSummary { elapsed_ms: 0, ..b.clone() }
}

#[test]
fn criterion_8_campaign_operational() {
    criterion("8a", "C1-C6 campaigns: errors, replay, shrinking", CAMPAIGN_BUDGET, || {
        let (report, elapsed) = default_campaign();
        fail_if(*elapsed > CAMPAIGN_BUDGET, || format!("campaign took {elapsed:?}"))?;
        fail_if(!report.internal_errors.is_empty(), || format!("internal errors: {:?}", report.internal_errors))?;
        for c in Conjecture::OPEN {
            let t = report.totals.get(&c).copied().unwrap_or_default();
            fail_if(t.trials != 500 || t.holds + t.fails + t.not_applicable != t.trials, || {
                format!("{c} totals {t:?}")
            })?;
        }
        let config = &report.config;
        for c in Conjecture::OPEN {
            for id in (0..500).step_by(50) {
                let again = TrialSummary::from(&run_trial(config, c, id).map_err(err)?);
                let stored = report.trials.iter().find(|t| t.conjecture == c && t.trial_id == id).unwrap();
                fail_if(!same_summary(&again, stored), || format!("{c} trial {id} does not replay"))?;
            }
        }
        for ce in &report.counterexamples {
            let original = &ce.original;
            fail_if(reevaluate(original).map_err(err)? != *original, || {
                format!("{} trial {} does not replay", original.case.conjecture, original.trial_id)
            })?;
            let shrunk = ce.shrunk.as_ref().ok_or("counterexample was not shrunk")?;
            fail_if(shrunk.outcome != Outcome::Fails || shrunk.case.n > original.case.n, || {
                format!("bad shrink of trial {}", original.trial_id)
            })?;
            fail_if(reevaluate(shrunk).map_err(err)? != *shrunk, || {
                format!("shrunk trial {} does not replay", original.trial_id)
            })?;
            let json = serde_json::to_string(ce).map_err(|e| e.to_string())?;
            let back: rfdet::harness::Counterexample = serde_json::from_str(&json).map_err(|e| e.to_string())?;
            fail_if(back != *ce, || "persisted counterexample does not round-trip".into())?;
        }
        Ok(format!(
            "3000 trials, 0 internal errors, {} counterexamples persisted, shrunk and replayed",
            report.counterexamples.len()
        ))
    });
}

#[test]
fn criterion_8_expected_findings() {
    criterion("8b", "C1-C6 expected finding count 0", CAMPAIGN_BUDGET, || {
        let (report, _) = default_campaign();
        let found: Vec<String> = Conjecture::OPEN
            .iter()
            .filter_map(|c| {
                let fails = report.totals.get(c)?.fails;
                (fails > 0).then(|| format!("{c}: {fails}"))
            })
            .collect();
        if found.is_empty() {
            return Ok("no findings".into());
        }
        let first = &report.counterexamples[0];
        let small = first.shrunk.as_ref().unwrap_or(&first.original);
        Err(format!(
            "findings {} (first: {} at n = {}, r = {:?}, {:?})",
            found.join(", "),
            small.case.conjecture,
            small.case.n,
            small.case.r,
            small.verdict.as_ref().and_then(|v| v.witness.as_ref())
        ))
    });
}

#[test]
fn criterion_9_determinism() {
    criterion("9", "byte-identical reports, serial vs 8 threads", Duration::from_secs(600), || {
        let config = |threads| CampaignConfig {
            conjecture: Conjecture::ALL.to_vec(),
            trials: 40,
            seed: 2024,
            threads,
            record_all: true,
            ..Default::default()
        };
        let serial = run_campaign(&config(1)).map_err(err)?.without_timing().to_json();
        let repeat = run_campaign(&config(1)).map_err(err)?.without_timing().to_json();
        let parallel = run_campaign(&config(8)).map_err(err)?.without_timing().to_json();
        fail_if(serial != repeat, || "two serial runs differ".into())?;
        fail_if(serial != parallel, || "serial and 8-thread reports differ".into())?;
        Ok(format!("{} bytes identical across 3 runs", serial.len()))
    });
}
