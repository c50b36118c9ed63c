//! Direct access to the builders with all three analyzers applied.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::detpoly::{build_p, build_p_r, build_q, Sequence};
use crate::error::{invalid, Error, Result};
use crate::exactmath::{Polynomial, Rational};
use crate::rootcheck::{coeffs_positive, hurwitz_stable, real_rooted_negative, StabilityVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpandMode {
    /// `Q_n^{α,β}(x)`
    Q,
    /// `P_n(x) = Q_n^{1,1}(x-1)`
    P,
    /// `P_n^r(x)`
    Pr,
}

impl FromStr for ExpandMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "q" => Ok(ExpandMode::Q),
            "p" => Ok(ExpandMode::P),
            "pr" => Ok(ExpandMode::Pr),
            _ => Err(Error::Config(format!("unknown mode {s:?}; expected Q, P or Pr"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub polynomial: Polynomial,
    pub degree: Option<usize>,
    /// Absent for the zero polynomial.
    pub verdicts: Vec<StabilityVerdict>,
}

fn yes_no(v: &StabilityVerdict) -> &'static str {
    if v.holds {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(degree) = self.degree else {
            return write!(f, "0 (zero polynomial)");
        };
        write!(f, "{}; degree {degree}", self.polynomial)?;
        for v in &self.verdicts {
            let name = serde_json::to_value(v.kind).ok();
            let name = name.as_ref().and_then(|n| n.as_str()).unwrap_or("?");
            if name != "hurwitz_stable" {
                write!(f, "; {}: {}", name.replace("all_coeffs_positive", "coeffs_positive"), yes_no(v))?;
            }
        }
        Ok(())
    }
}

impl Expansion {
    pub fn hurwitz(&self) -> Option<&StabilityVerdict> {
        self.verdicts.iter().find(|v| v.kind == crate::rootcheck::VerdictKind::HurwitzStable)
    }
}

/// Builds the requested polynomial and runs every analyzer on it.
pub fn expand(
    mode: ExpandMode,
    n: usize,
    r: Option<usize>,
    alpha: Option<&Rational>,
    beta: Option<&Rational>,
    f: &Sequence,
) -> Result<Expansion> {
    let polynomial = match mode {
        ExpandMode::Q => match (alpha, beta) {
            (Some(a), Some(b)) => build_q(n, a, b, f)?,
            _ => return invalid("mode Q needs alpha and beta"),
        },
        ExpandMode::P => build_p(n, f)?,
        ExpandMode::Pr => build_p_r(n, r.unwrap_or(2), f)?,
    };
    let degree = polynomial.degree();
    let verdicts = if polynomial.is_zero() {
        Vec::new()
    } else {
        vec![
            coeffs_positive(&polynomial, None),
            hurwitz_stable(&polynomial)?,
            real_rooted_negative(&polynomial)?,
        ]
    };
    Ok(Expansion {
        polynomial,
        degree,
        verdicts,
    })
}
