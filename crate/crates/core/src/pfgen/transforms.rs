//! Quadratic sequence transforms. Outputs are returned as raw value vectors because
//! they can contain zeros or negative entries that a [`Sequence`](crate::detpoly::Sequence)
//! would reject.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactmath::{binomial, Rational};

fn at(values: &[Rational], i: i64) -> Rational {
    if i < 0 || i as usize >= values.len() {
        Rational::zero()
    } else {
        values[i as usize].clone()
    }
}

/// `g_m = C(2p-1, p) f_m^2 + Σ_{j=1..p} (-1)^j C(2p, p-j) f_{m-j} f_{m+j}`, zero-padded.
pub fn grabarek_transform(values: &[Rational], p: usize) -> Result<Vec<Rational>> {
    if p == 0 {
        return invalid("grabarek_transform needs p >= 1");
    }
    let p64 = p as u64;
    let lead = binomial(2 * p64 - 1, p as i64);
    Ok((0..values.len() as i64)
        .map(|m| {
            let mut g = &lead * at(values, m) * at(values, m);
            for j in 1..=p as i64 {
                let term = binomial(2 * p64, p as i64 - j) * at(values, m - j) * at(values, m + j);
                if j % 2 == 1 {
                    g -= term;
                } else {
                    g += term;
                }
            }
            g
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BrandenVariant {
    /// `Σ_j α_j f_{m-j} f_{m+j}`, one output per input index.
    Diagonal,
    /// `Σ_j α_j f_{m-j} f_{m+1+j}`, one output per adjacent pair.
    Offdiagonal,
}

pub fn branden_operator(values: &[Rational], alphas: &[Rational], variant: BrandenVariant) -> Vec<Rational> {
    let (len, offset) = match variant {
        BrandenVariant::Diagonal => (values.len(), 0),
        BrandenVariant::Offdiagonal => (values.len().saturating_sub(1), 1),
    };
    (0..len as i64)
        .map(|m| {
            alphas
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .fold(Rational::zero(), |acc, (j, a)| {
                    let j = j as i64;
                    acc + a * at(values, m - j) * at(values, m + offset + j)
                })
        })
        .collect()
}
