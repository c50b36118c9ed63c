//! Fixed identities plus randomized runs of the proved statements.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::campaign::{CampaignReport, NamedCheck};
use super::config::CampaignConfig;
use super::conjecture::Conjecture;
use super::trial::run_trial;
use crate::detpoly::{build_p, build_p_r, build_p_via_phi, build_q, coeff_p, phi, series_oracle, Sequence};
use crate::exactmath::{factorial, int, rat, Polynomial, Rational};
use crate::pfgen::{check_pf_r, kv_delta_bound, uniform_rational, MinorWitness};
use crate::rootcheck::{esp_ratio_decreases, weak_supermajorized};

/// Trials per proved statement in [`regression_suite`].
pub const REGRESSION_TRIALS: u64 = 50;

fn check(name: &str, outcome: std::result::Result<(), String>) -> NamedCheck {
    NamedCheck {
        name: name.to_string(),
        passed: outcome.is_ok(),
        detail: outcome.err(),
    }
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, got: T, want: T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn random_sequence(rng: &mut ChaCha8Rng, n: usize) -> Sequence {
    let values = (0..=n).map(|_| uniform_rational(rng, &rat(1, 16), &int(8), 16, false)).collect();
    Sequence::raw(values).expect("positive values")
}

fn phi_values() -> std::result::Result<(), String> {
    let e = |e: crate::error::Error| e.to_string();
    expect_eq("phi(3,1)", phi(3, 1).map_err(e)?.phi, Polynomial::from_ints(&[2, 2]))?;
    expect_eq("phi(4,1)", phi(4, 1).map_err(e)?.phi, Polynomial::from_ints(&[6, 6]))?;
    // the middle index at n = 4 has the halved coefficients A = -2, B = 2
    expect_eq("phi(4,2)", phi(4, 2).map_err(e)?.phi, Polynomial::from_ints(&[0, 2, 2]))
}

fn vanishing_on_ones() -> std::result::Result<(), String> {
    let pairs = [(int(1), int(1)), (int(2), int(3)), (rat(1, 2), rat(7, 3)), (rat(9, 4), rat(1, 5))];
    for n in 2..=12 {
        let ones = Sequence::ones(n);
        for (a, b) in &pairs {
            let q = build_q(n, a, b, &ones).map_err(|e| e.to_string())?;
            if !q.is_zero() {
                return Err(format!("Q_{n}^({a},{b})(ones) = {q}"));
            }
        }
    }
    let p = build_p(5, &Sequence::ones(5)).map_err(|e| e.to_string())?;
    expect_eq("P_5(ones)", p, Polynomial::zero())
}

fn small_example() -> std::result::Result<(), String> {
    let f = Sequence::raw(vec![int(1), int(2), int(2), int(1)]).map_err(|e| e.to_string())?;
    let p = build_p(3, &f).map_err(|e| e.to_string())?;
    expect_eq("P_3(1,2,2,1)", p, Polynomial::from_ints(&[18, 18]))
}

fn free_term(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    for _ in 0..50 {
        let n = rng.gen_range(2..=10);
        let f = random_sequence(rng, n);
        let v = f.values();
        let expected = Rational::from_integer(factorial(n)) * (&v[1] * &v[n - 1] - &v[0] * &v[n]);
        let p = build_p(n, &f).map_err(|e| e.to_string())?;
        expect_eq("p_n(0)", p.coeff(0), expected.clone())?;
        expect_eq("coeff_p(n, 0)", coeff_p(n, 0, &f).map_err(|e| e.to_string())?, expected)?;
    }
    Ok(())
}

fn routes(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let e = |e: crate::error::Error| e.to_string();
    for _ in 0..20 {
        let n = rng.gen_range(2..=9);
        let f = random_sequence(rng, n);
        let p = build_p(n, &f).map_err(e)?;
        expect_eq("phi route", build_p_via_phi(n, &f).map_err(e)?, p.clone())?;
        let coeffs: Vec<Rational> = (0..=n - 2).map(|m| coeff_p(n, m, &f)).collect::<Result<_, _>>().map_err(e)?;
        expect_eq("stirling route", Polynomial::from_coeffs(coeffs), p.clone())?;
        expect_eq("determinant route", build_p_r(n, 2, &f).map_err(e)?, p)?;
    }
    for _ in 0..5 {
        let n = rng.gen_range(2..=7);
        let f = random_sequence(rng, n);
        expect_eq(
            "series route, r = 3",
            series_oracle(n, 3, &f).map_err(e)?,
            build_p_r(n, 3, &f).map_err(e)?,
        )?;
    }
    Ok(())
}

fn order_three_witness() -> std::result::Result<(), String> {
    let ones = vec![int(1); 3];
    if !check_pf_r(&ones, 2).ok {
        return Err("(1,1,1) should pass order 2".into());
    }
    let res = check_pf_r(&ones, 3);
    let want = MinorWitness {
        rows: vec![1, 2, 3],
        cols: vec![2, 3, 4],
        value: int(-1),
    };
    if res.witness.as_ref() != Some(&want) {
        return Err(format!("witness {:?}", res.witness));
    }
    Ok(())
}

fn kv_bounds() -> std::result::Result<(), String> {
    expect_eq("c_2", kv_delta_bound(2), int(1))?;
    expect_eq("c_3", kv_delta_bound(3), rat(1, 2))
}

fn chi_chain() -> std::result::Result<(), String> {
    let e = |e: crate::error::Error| e.to_string();
    for n in 6..=14 {
        for k in 3..=n / 2 {
            let lower = phi(n, k - 1).map_err(e)?.chi;
            let upper = phi(n, k).map_err(e)?.chi;
            if upper.is_empty() {
                continue;
            }
            if !weak_supermajorized(&lower, &upper).map_err(e)? {
                return Err(format!("chi_{} not below chi_{k} at n = {n}", k - 1));
            }
            for j in 1..=upper.len() {
                if !esp_ratio_decreases(&lower, &upper, j).map_err(e)? {
                    return Err(format!("ratio order fails at n = {n}, k = {k}, j = {j}"));
                }
            }
        }
    }
    Ok(())
}

/// Exact identities and proved statements. Any failure makes the exit code 1.
pub fn regression_suite() -> CampaignReport {
    let start = Instant::now();
    let config = CampaignConfig {
        conjecture: vec![Conjecture::T1, Conjecture::TA, Conjecture::L1, Conjecture::L2],
        trials: REGRESSION_TRIALS,
        threads: 1,
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut report = CampaignReport::empty(config.clone());
    report.checks = vec![
        check("phi worked values", phi_values()),
        check("Q vanishes on the all-ones sequence", vanishing_on_ones()),
        check("P_3 of (1,2,2,1)", small_example()),
        check("free term formula", free_term(&mut rng)),
        check("route equality", routes(&mut rng)),
        check("(1,1,1) order-3 witness", order_three_witness()),
        check("exact KV bounds", kv_bounds()),
        check("chi chain majorization", chi_chain()),
    ];
    let results = config
        .conjecture
        .iter()
        .flat_map(|&c| (0..config.trials).map(move |id| (c, id)))
        .map(|(c, id)| (c, id, run_trial(&config, c, id)))
        .collect();
    report.absorb(results, false);
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report
}
