//! `Q_n^{α,β}(x)`, `P_n(x) = Q_n^{1,1}(x-1)` and the Stirling-number closed form
//! for the coefficients of `P_n`.

use num_traits::{One, Zero};

use super::phi::ab_coefficients;
use super::sequence::Sequence;
use crate::error::{invalid, Result};
use crate::exactmath::{binomial, factorial, stirling_first_unsigned, Polynomial, Rational};

pub(crate) fn check_len(n: usize, f: &Sequence) -> Result<()> {
    if f.len() < n + 1 {
        return invalid(format!("sequence has {} terms, need at least {}", f.len(), n + 1));
    }
    Ok(())
}

/// `[(x+s)_0, (x+s)_1, ..., (x+s)_n]`.
pub(crate) fn pochhammer_table(shift: &Rational, n: usize) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Polynomial::one());
    let mut s = shift.clone();
    for k in 1..=n {
        let next = &out[k - 1] * &Polynomial::linear(s.clone(), Rational::one());
        out.push(next);
        s += Rational::one();
    }
    out
}

/// Direct evaluation of
/// `Σ_k f_k f_{n-k} C(n,k) [(x+α)_k (x+β)_{n-k} - (x+α+β)_k (x)_{n-k}]`.
pub fn build_q(n: usize, alpha: &Rational, beta: &Rational, f: &Sequence) -> Result<Polynomial> {
    if n < 2 {
        return invalid(format!("n must be at least 2, got {n}"));
    }
    if alpha <= &Rational::zero() || beta <= &Rational::zero() {
        return invalid(format!("alpha and beta must be positive, got {alpha}, {beta}"));
    }
    check_len(n, f)?;
    let pa = pochhammer_table(alpha, n);
    let pb = pochhammer_table(beta, n);
    let pab = pochhammer_table(&(alpha + beta), n);
    let p0 = pochhammer_table(&Rational::zero(), n);
    let mut acc = Polynomial::zero();
    for k in 0..=n {
        let w = f.get(k as i64) * f.get((n - k) as i64) * binomial(n as u64, k as i64);
        if w.is_zero() {
            continue;
        }
        let bracket = &(&pa[k] * &pb[n - k]) - &(&pab[k] * &p0[n - k]);
        acc = &acc + &bracket.scale(&w);
    }
    Ok(acc)
}

/// `P_n(x) = Q_n^{1,1}(x - 1)`.
pub fn build_p(n: usize, f: &Sequence) -> Result<Polynomial> {
    let one = Rational::one();
    Ok(build_q(n, &one, &one, f)?.shift(&(-one)))
}

/// Coefficient of `x^m` in `P_n`, from the Stirling-number closed form
/// (independent of any polynomial arithmetic).
pub fn coeff_p(n: usize, m: usize, f: &Sequence) -> Result<Rational> {
    if n < 2 {
        return invalid(format!("n must be at least 2, got {n}"));
    }
    if m > n - 2 {
        return invalid(format!("m = {m} outside [0, {}]", n - 2));
    }
    check_len(n, f)?;
    let fk = |k: usize| f.get(k as i64) * f.get((n - k) as i64);
    if m == 0 {
        return Ok(Rational::from_integer(factorial(n)) * (fk(1) - fk(0)));
    }
    let s = stirling_first_unsigned;
    let nn = Rational::from_integer(((n * (n - 1)) as u64).into());
    let mut total = -(nn * s(n - 1, m + 1) * fk(0));
    for k in 1..=n / 2 {
        let w = fk(k);
        if w.is_zero() {
            continue;
        }
        let (a, b) = ab_coefficients(n, k);
        let inner = (0..=m).fold(Rational::zero(), |acc, i| {
            let sk = s(k - 1, i);
            if sk.is_zero() {
                return acc;
            }
            acc + sk * (&b * s(n - k - 1, m - i + 1) - &a * s(n - k - 1, m - i))
        });
        total += w * binomial(n as u64, k as i64) * inner;
    }
    Ok(total)
}
