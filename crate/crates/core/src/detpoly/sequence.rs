use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rational::{serde_rational, serde_rational_vec};
use crate::exactmath::{rising, Rational};

/// Which construction produced a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Raw,
    Pf2,
    PfR {
        r: usize,
    },
    PfInf,
    Q3,
    Geometric,
    Ones,
    ReciprocalPochhammer {
        #[serde(with = "serde_rational")]
        c: Rational,
    },
}

/// A finite nonnegative sequence `f_0..f_n` with contiguous support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SequenceRepr", into = "SequenceRepr")]
pub struct Sequence {
    values: Vec<Rational>,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct SequenceRepr {
    #[serde(with = "serde_rational_vec")]
    values: Vec<Rational>,
    provenance: Provenance,
}

impl TryFrom<SequenceRepr> for Sequence {
    type Error = Error;
    fn try_from(r: SequenceRepr) -> Result<Self> {
        Sequence::new(r.values, r.provenance)
    }
}

impl From<Sequence> for SequenceRepr {
    fn from(s: Sequence) -> Self {
        SequenceRepr {
            values: s.values,
            provenance: s.provenance,
        }
    }
}

/// Nonnegative, not all zero, and no zero strictly between two nonzero entries.
pub fn validate_values(values: &[Rational]) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidSequence(m.to_string()));
    if values.is_empty() {
        return bad("empty sequence");
    }
    if values.iter().any(|v| v < &Rational::zero()) {
        return bad("negative entry");
    }
    let Some(first) = values.iter().position(|v| !v.is_zero()) else {
        return bad("all entries are zero");
    };
    let last = values.iter().rposition(|v| !v.is_zero()).unwrap_or(first);
    if values[first..=last].iter().any(Zero::is_zero) {
        return bad("internal zero");
    }
    Ok(())
}

impl Sequence {
    pub fn new(values: Vec<Rational>, provenance: Provenance) -> Result<Self> {
        validate_values(&values)?;
        Ok(Self { values, provenance })
    }

    pub fn raw(values: Vec<Rational>) -> Result<Self> {
        Self::new(values, Provenance::Raw)
    }

    /// `n + 1` ones.
    pub fn ones(n: usize) -> Self {
        Self {
            values: vec![Rational::one(); n + 1],
            provenance: Provenance::Ones,
        }
    }

    /// `f_k = f0 q^k`, `k = 0..=n`; requires `f0, q > 0`.
    pub fn geometric(n: usize, f0: &Rational, q: &Rational) -> Result<Self> {
        if f0 <= &Rational::zero() || q <= &Rational::zero() {
            return Err(Error::InvalidArgument("geometric needs f0 > 0 and q > 0".into()));
        }
        let mut values = Vec::with_capacity(n + 1);
        let mut v = f0.clone();
        for _ in 0..=n {
            values.push(v.clone());
            v *= q;
        }
        Self::new(values, Provenance::Geometric)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Number of stored terms (`n + 1`).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the last stored term.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `f_k`, zero outside the stored range (including negative `k`).
    pub fn get(&self, k: i64) -> Rational {
        if k < 0 {
            return Rational::zero();
        }
        self.values.get(k as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// Keeps `f_0..f_n`; fails if that would leave only zeros.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        let values = self.values[..=n.min(self.last_index())].to_vec();
        Self::new(values, self.provenance.clone())
    }
}

/// `f_k = 1/(c)_k`, the coefficient sequence that turns `f(a; z)` into `1F1(a; c; z)`.
pub fn reciprocal_pochhammer_sequence(c: &Rational, n: usize) -> Result<Sequence> {
    if c <= &Rational::zero() {
        return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
    }
    let values = (0..=n).map(|k| Rational::one() / rising(c, k)).collect();
    Sequence::new(values, Provenance::ReciprocalPochhammer { c: c.clone() })
}
