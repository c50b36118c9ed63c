//! Rigorous rational bounds for the irrational quantities the generators need.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactmath::rational::big;
use crate::exactmath::{int, Polynomial, Rational};
use crate::rootcheck::{sturm_count, Bound};

/// A rational just below π (35 correct decimals, truncated).
pub fn pi_lower() -> Rational {
    let num: BigInt = "314159265358979323846264338327950288".parse().expect("literal");
    Rational::new(num, BigInt::from(10u8).pow(35))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// `(lo, hi)` with `lo <= cos(phi) <= hi` and `hi - lo < 2^-bits`, for `|phi| <= 2`.
/// Consecutive Taylor partial sums bracket the value once the terms decrease,
/// which holds from the second term on in this range.
pub fn cos_bracket(phi: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(phi.abs() <= int(2), "cos_bracket expects |phi| <= 2");
    let eps = Rational::new(BigInt::one(), pow2(bits));
    let phi2 = phi * phi;
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let mut k: i64 = 0;
    loop {
        k += 1;
        term = -(&term * &phi2) / int((2 * k - 1) * (2 * k));
        let next = &sum + &term;
        if k >= 2 && term.abs() < eps {
            return if next < sum { (next, sum) } else { (sum, next) };
        }
        sum = next;
    }
}

/// `floor(sqrt(x) * 2^bits) / 2^bits` for `x >= 0`: a lower bound within `2^-bits`.
pub fn sqrt_lower(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    let scale = pow2(bits);
    // sqrt(n/d) * 2^b = sqrt(n * d * 4^b) / d
    let radicand = x.numer() * x.denom() * &scale * &scale;
    let root = radicand.sqrt();
    Rational::new(root, x.denom() * scale)
}

/// `p_r` with `p_0 = 1`, `p_1 = x`, `p_k = x p_{k-1} - p_{k-2}`; its zeros are
/// `2cos(jπ/(r+1))`, `j = 1..r`.
fn chebyshev_u(r: usize) -> Polynomial {
    let x = Polynomial::x();
    let mut prev = Polynomial::one();
    let mut cur = x.clone();
    if r == 0 {
        return prev;
    }
    for _ in 1..r {
        let next = &(&x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The even part of `p_r` in `y = x^2`; its largest root is `4cos²(π/(r+1))`.
fn squared_root_poly(r: usize) -> Polynomial {
    let p = chebyshev_u(r);
    let offset = r % 2;
    let coeffs: Vec<Rational> = p.coeffs().iter().skip(offset).step_by(2).cloned().collect();
    Polynomial::from_coeffs(coeffs)
}

fn compute_delta_bound(r: usize) -> Rational {
    let q = squared_root_poly(r);
    let above = |c: &Rational| sturm_count(&q, &Bound::Finite(c.clone()), &Bound::PosInf).expect("squarefree");
    for c in [3, 2, 1].map(int) {
        if q.eval(&c).is_zero() && above(&c) == 0 {
            return c.recip();
        }
    }
    // the threshold lies in (lo, hi]; shrink until hi is within 10^-32
    let tol = Rational::new(BigInt::one(), BigInt::from(10u8).pow(32));
    let (mut lo, mut hi) = (int(0), int(4));
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / int(2);
        if above(&mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // 1/hi <= 1/threshold; round down to 30 decimals
    let scale = big(BigInt::from(10u8).pow(30));
    (hi.recip() * &scale).floor() / scale
}

/// Largest admissible `δ` for the KV construction of order `r`: a rational
/// `c_r <= 1/(4cos²(π/(r+1)))`, exact when the threshold is an integer.
pub fn kv_delta_bound(r: usize) -> Rational {
    assert!(r >= 2, "kv_delta_bound needs r >= 2");
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(c) = cache.lock().expect("cache lock").get(&r) {
        return c.clone();
    }
    let c = compute_delta_bound(r);
    cache.lock().expect("cache lock").insert(r, c.clone());
    c
}
