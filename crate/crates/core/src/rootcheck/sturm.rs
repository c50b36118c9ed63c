//! Sturm sequences over exact rationals.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rational::sign;
use crate::exactmath::{Polynomial, Rational};

/// An endpoint on the extended real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    fn le(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::NegInf, _) | (_, Bound::PosInf) => true,
            (_, Bound::NegInf) | (Bound::PosInf, _) => false,
            (Bound::Finite(a), Bound::Finite(b)) => a <= b,
        }
    }
}

/// `p_0 = p`, `p_1 = p'`, `p_{i+1} = -rem(p_{i-1}, p_i)`, each rescaled by a positive
/// constant so coefficients stay small.
pub fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let len = chain.len();
        let (_, r) = chain[len - 2].div_rem(&chain[len - 1]);
        if r.is_zero() {
            break;
        }
        let lead = r.leading().expect("nonzero remainder").abs();
        chain.push(r.scale(&(-Rational::from_integer(1.into()) / lead)));
    }
    chain
}

fn sign_at(p: &Polynomial, at: &Bound) -> i8 {
    let Some(deg) = p.degree() else { return 0 };
    let lead = sign(p.leading().expect("nonzero"));
    match at {
        Bound::PosInf => lead,
        Bound::NegInf if deg % 2 == 1 => -lead,
        Bound::NegInf => lead,
        Bound::Finite(t) => sign(&p.eval(t)),
    }
}

fn variations(chain: &[Polynomial], at: &Bound) -> usize {
    let signs: Vec<i8> = chain.iter().map(|q| sign_at(q, at)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a squarefree `p` in `(a, b]`.
pub fn sturm_count(p: &Polynomial, a: &Bound, b: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if Polynomial::gcd(p, &p.derivative()).degree().unwrap_or(0) > 0 {
        return Err(Error::NotSquarefree);
    }
    if b.le(a) {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    Ok(variations(&chain, a).saturating_sub(variations(&chain, b)))
}

/// Sign changes in a sequence, skipping zeros.
pub fn sign_changes(seq: &[Rational]) -> usize {
    let signs: Vec<bool> = seq.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
