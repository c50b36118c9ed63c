use num_traits::{One, Signed, Zero};

use super::sturm::{sturm_count, Bound};
use super::verdict::{StabilityVerdict, VerdictKind, Witness};
use crate::error::{Error, Result};
use crate::exactmath::{Polynomial, Rational};

/// Multiplies by -1 when the leading coefficient is negative.
pub fn normalize_leading_positive(p: &Polynomial) -> Polynomial {
    match p.leading() {
        Some(l) if l.is_negative() => -p,
        _ => p.clone(),
    }
}

/// Every coefficient from `x^0` up to the degree is positive, and the degree
/// equals `expected_degree` when one is given.
pub fn coeffs_positive(p: &Polynomial, expected_degree: Option<usize>) -> StabilityVerdict {
    let kind = VerdictKind::AllCoeffsPositive;
    if let Some((index, value)) = p.coeffs().iter().enumerate().find(|(_, c)| !c.is_positive()) {
        return StabilityVerdict::fail(kind, Witness::CoefficientNotPositive { index, value: value.clone() });
    }
    match (expected_degree, p.degree()) {
        (Some(expected), observed) if observed != Some(expected) => {
            StabilityVerdict::fail(kind, Witness::DegreeMismatch { expected, observed })
        }
        (None, None) => StabilityVerdict::fail(kind, Witness::ZeroPolynomial),
        _ => StabilityVerdict::pass(kind),
    }
}

/// Hurwitz matrix `H[i][j] = a_{2j-i+1}` (0-based) for `p = a_0 x^d + ... + a_d`, `a_0 > 0`.
pub fn hurwitz_matrix(p: &Polynomial) -> Vec<Vec<Rational>> {
    let p = normalize_leading_positive(p);
    let d = p.degree().unwrap_or(0);
    // a_i is the coefficient of x^{d-i}
    let a = |i: i64| -> Rational {
        if i < 0 || i > d as i64 {
            Rational::zero()
        } else {
            p.coeff(d - i as usize)
        }
    };
    (0..d)
        .map(|i| (0..d).map(|j| a(2 * j as i64 - i as i64 + 1)).collect())
        .collect()
}

/// Leading principal minors `Δ_1, Δ_2, ...` of `m`, stopping after the first that is
/// not positive. Elimination needs no pivoting while every minor so far is nonzero.
pub fn leading_minors_until_nonpositive(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut running = Rational::one();
    for k in 0..n {
        running *= &a[k][k];
        minors.push(running.clone());
        if !running.is_positive() {
            break;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let t = &factor * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    minors
}

/// All roots strictly in the open left half-plane, decided by Hurwitz determinants.
pub fn hurwitz_stable(p: &Polynomial) -> Result<StabilityVerdict> {
    let kind = VerdictKind::HurwitzStable;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let minors = leading_minors_until_nonpositive(&hurwitz_matrix(p));
    match minors.iter().position(|d| !d.is_positive()) {
        Some(i) => Ok(StabilityVerdict::fail(
            kind,
            Witness::HurwitzMinor {
                index: i + 1,
                value: minors[i].clone(),
            },
        )),
        None => Ok(StabilityVerdict::pass(kind)),
    }
}

/// All roots real and strictly negative; multiplicities are ignored.
pub fn real_rooted_negative(p: &Polynomial) -> Result<StabilityVerdict> {
    let kind = VerdictKind::RealRootedNegative;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sqf = p.squarefree_part();
    let total = sqf.degree().unwrap_or(0);
    let real = sturm_count(&sqf, &Bound::NegInf, &Bound::PosInf)?;
    if real < total {
        return Ok(StabilityVerdict::fail(
            kind,
            Witness::RealRootShortfall {
                distinct_real: real,
                distinct_total: total,
            },
        ));
    }
    let at_zero = usize::from(p.coeff(0).is_zero());
    let nonneg = at_zero + sturm_count(&sqf, &Bound::Finite(Rational::zero()), &Bound::PosInf)?;
    if nonneg > 0 {
        return Ok(StabilityVerdict::fail(kind, Witness::NonnegativeRoot { count: nonneg }));
    }
    Ok(StabilityVerdict::pass(kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::from_ints(cs)
    }

    #[test]
    fn positivity() {
        assert!(coeffs_positive(&p(&[18, 18]), Some(1)).holds);
        let v = coeffs_positive(&p(&[-1, 0, 1]), None);
        assert_eq!(v.witness, Some(Witness::CoefficientNotPositive { index: 0, value: int(-1) }));
        let v = coeffs_positive(&Polynomial::zero(), Some(1));
        assert_eq!(v.witness, Some(Witness::DegreeMismatch { expected: 1, observed: None }));
        assert!(!coeffs_positive(&Polynomial::zero(), None).holds);
        assert!(!coeffs_positive(&p(&[1, 0, 1]), None).holds);
    }

    #[test]
    fn hurwitz() {
        assert!(hurwitz_stable(&p(&[2, 3, 1])).unwrap().holds);
        assert!(!hurwitz_stable(&p(&[1, 0, 1])).unwrap().holds);
        let v = hurwitz_stable(&p(&[1, 1, 1, 1])).unwrap();
        assert_eq!(v.witness, Some(Witness::HurwitzMinor { index: 2, value: int(0) }));
        assert!(hurwitz_stable(&p(&[7])).unwrap().holds);
        assert!(hurwitz_stable(&p(&[-2, -3, -1])).unwrap().holds);
        assert!(!hurwitz_stable(&p(&[0, 1, 1])).unwrap().holds);
        assert!(!hurwitz_stable(&p(&[-1, 1])).unwrap().holds);
        assert!(hurwitz_stable(&Polynomial::zero()).is_err());
    }

    #[test]
    fn real_negative() {
        assert!(real_rooted_negative(&p(&[6, 11, 6, 1])).unwrap().holds);
        let v = real_rooted_negative(&p(&[1, 1, 1])).unwrap();
        assert_eq!(v.witness, Some(Witness::RealRootShortfall { distinct_real: 0, distinct_total: 2 }));
        assert!(real_rooted_negative(&p(&[18, 18])).unwrap().holds);
        assert!(real_rooted_negative(&p(&[1, 2, 1])).unwrap().holds);
        let v = real_rooted_negative(&p(&[0, 1, 1])).unwrap();
        assert_eq!(v.witness, Some(Witness::NonnegativeRoot { count: 1 }));
        assert!(!real_rooted_negative(&p(&[-2, -1, 1])).unwrap().holds);
        assert!(real_rooted_negative(&p(&[3])).unwrap().holds);
        assert!(real_rooted_negative(&Polynomial::zero()).is_err());
    }
}
