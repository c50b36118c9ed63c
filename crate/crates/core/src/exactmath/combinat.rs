//! Rising factorials, binomial/multinomial coefficients, unsigned Stirling
//! numbers of the first kind and elementary symmetric polynomials.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::rational::{big, Rational};
use crate::error::{invalid, Result};

/// `(x + shift)_k = (x+shift)(x+shift+1)...(x+shift+k-1)`; `(x+shift)_0 = 1`.
pub fn pochhammer(shift: &Rational, k: usize) -> Polynomial {
    let mut acc = Polynomial::one();
    let mut s = shift.clone();
    for _ in 0..k {
        acc = &acc * &Polynomial::linear(s.clone(), Rational::one());
        s += Rational::one();
    }
    acc
}

/// Numeric rising factorial `(a)_k`.
pub fn rising(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..k {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Rational {
    if k < 0 || k as u64 > n {
        return Rational::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    big(acc)
}

/// `n! / (k_1! ... k_r!)`; rejects parts that do not sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<Rational> {
    if parts.iter().sum::<usize>() != n {
        return invalid(format!("multinomial parts {parts:?} do not sum to {n}"));
    }
    let den = parts.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
    Ok(Rational::new(factorial(n), den))
}

static STIRLING: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

fn stirling_row(p: usize) -> Vec<BigInt> {
    if let Some(row) = STIRLING.read().expect("stirling table poisoned").get(p) {
        return row.clone();
    }
    let mut table = STIRLING.write().expect("stirling table poisoned");
    if table.is_empty() {
        table.push(vec![BigInt::one()]);
    }
    while table.len() <= p {
        let q = table.len();
        let prev = &table[q - 1];
        // S(q, j) = S(q-1, j-1) + (q-1) S(q-1, j)
        let row: Vec<BigInt> = (0..=q)
            .map(|j| {
                let left = if j > 0 { prev[j - 1].clone() } else { BigInt::zero() };
                let right = prev.get(j).map(|s| s * (q - 1)).unwrap_or_default();
                left + right
            })
            .collect();
        table.push(row);
    }
    table[p].clone()
}

/// Unsigned Stirling number of the first kind: coefficient of `x^j` in `(x)_p`.
pub fn stirling_first_unsigned(p: usize, j: usize) -> Rational {
    if j > p {
        return Rational::zero();
    }
    big(stirling_row(p).swap_remove(j))
}

/// A sorted (ascending) multiset of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Multiset {
    #[serde(with = "super::rational::serde_rational_vec")]
    elements: Vec<Rational>,
}

impl Multiset {
    pub fn new(mut elements: Vec<Rational>) -> Self {
        elements.sort();
        Self { elements }
    }

    pub fn from_ints(xs: impl IntoIterator<Item = i64>) -> Self {
        Self::new(xs.into_iter().map(super::rational::int).collect())
    }

    pub fn elements(&self) -> &[Rational] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn all_positive(&self) -> bool {
        self.elements.iter().all(|a| a > &Rational::zero())
    }

    /// `Π (x + a)` over the elements.
    pub fn product_poly(&self) -> Polynomial {
        self.elements.iter().fold(Polynomial::one(), |acc, a| {
            &acc * &Polynomial::linear(a.clone(), Rational::one())
        })
    }
}

/// `[e_0, e_1, ..., e_q]` for the multiset `{a_1..a_q}`, via the one-element-at-a-time
/// recurrence `e_k(a_1..a_m) = e_k(a_1..a_{m-1}) + a_m e_{k-1}(a_1..a_{m-1})`.
pub fn elementary_symmetric_all(vals: &Multiset) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for a in vals.elements() {
        e.push(Rational::zero());
        for k in (1..e.len()).rev() {
            let t = &e[k - 1] * a;
            e[k] += t;
        }
    }
    e
}
