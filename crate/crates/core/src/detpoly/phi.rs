//! The pairing `P_n = Σ_{0≤k≤n/2} f_k f_{n-k} C(n,k) Φ_k` and the factored
//! form of each `Φ_k`.

use num_traits::{One, Zero};

use super::build::check_len;
use super::sequence::Sequence;
use crate::error::{invalid, Result};
use crate::exactmath::{binomial, int, pochhammer, Multiset, Polynomial, Rational};

/// Factored data for one `Φ_k`.
///
/// For `k ≥ 1`, `Φ_k = (x)_{k-1} (x+1)_{n-k-2} l_k(x)` with `l_k = -A_k x + B_k`.
/// For `k ≥ 2` this is `x · l_k(x) · Π_{a∈χ_k}(x + a)`; for `k = 1` it is
/// `l_1(x) · Π_{a∈χ_1}(x + a)` with `χ_1 = {1..n-3}`.
/// `Φ_0 = -n(n-1)(x+1)_{n-2}` has no linear factor; its `A`, `B`, `l` fields
/// carry the generic formula values and `chi` holds `{1..n-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiDecomposition {
    pub n: usize,
    pub k: usize,
    pub a: Rational,
    pub b: Rational,
    pub l: Polynomial,
    pub chi: Multiset,
    pub phi: Polynomial,
}

/// `(A_k, B_k)`; the even-`n` middle index `k = n/2` uses the halved values.
pub fn ab_coefficients(n: usize, k: usize) -> (Rational, Rational) {
    let (n, k) = (n as i64, k as i64);
    if 2 * k == n {
        (int(-n) / int(2), int(n * (n - 2)) / int(4))
    } else {
        (int(n * (n - 1) - 4 * k * (n - k)), int(n * (n - 1) - 2 * k * (n - k)))
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return invalid(format!("n must be at least 2, got {n}"));
    }
    if k > n / 2 {
        return invalid(format!("k = {k} outside [0, {}]", n / 2));
    }
    Ok(())
}

pub fn phi(n: usize, k: usize) -> Result<PhiDecomposition> {
    check_nk(n, k)?;
    let (a, b) = ab_coefficients(n, k);
    let l = Polynomial::linear(b.clone(), -a.clone());
    let (chi, phi) = if k == 0 {
        let nn = int((n * (n - 1)) as i64);
        let chi = Multiset::from_ints(1..=(n as i64 - 2));
        (chi, pochhammer(&Rational::one(), n - 2).scale(&-nn))
    } else {
        let chi = if k == 1 {
            Multiset::from_ints(1..=(n as i64 - 3))
        } else {
            Multiset::from_ints((1..=(k as i64 - 2)).chain(1..=(n as i64 - k as i64 - 2)))
        };
        let phi = if n >= k + 2 {
            &(&pochhammer(&Rational::zero(), k - 1) * &pochhammer(&Rational::one(), n - k - 2)) * &l
        } else {
            // n = 2, k = 1: (x+1)_{-1} = 1/x cancels the factor x in l_1.
            l.div_rem(&Polynomial::x()).0
        };
        (chi, phi)
    };
    Ok(PhiDecomposition { n, k, a, b, l, chi, phi })
}

/// `Φ_k` straight from its definition as a combination of rising factorials.
pub fn phi_definitional(n: usize, k: usize) -> Result<Polynomial> {
    check_nk(n, k)?;
    let one = Rational::one();
    let x = |s: &Rational, m: usize| pochhammer(s, m);
    let (zero, minus, plus) = (Rational::zero(), -one.clone(), one);
    if 2 * k == n {
        Ok(&(&x(&zero, k) * &x(&zero, n - k)) - &(&x(&minus, k) * &x(&plus, n - k)))
    } else {
        let twice = (&x(&zero, k) * &x(&zero, n - k)).scale(&int(2));
        Ok(&(&twice - &(&x(&minus, k) * &x(&plus, n - k))) - &(&x(&minus, n - k) * &x(&plus, k)))
    }
}

/// `P_n` assembled from the factored `Φ_k`.
pub fn build_p_via_phi(n: usize, f: &Sequence) -> Result<Polynomial> {
    if n < 2 {
        return invalid(format!("n must be at least 2, got {n}"));
    }
    check_len(n, f)?;
    let mut acc = Polynomial::zero();
    for k in 0..=n / 2 {
        let w = f.get(k as i64) * f.get((n - k) as i64) * binomial(n as u64, k as i64);
        if w.is_zero() {
            continue;
        }
        acc = &acc + &phi(n, k)?.phi.scale(&w);
    }
    Ok(acc)
}
