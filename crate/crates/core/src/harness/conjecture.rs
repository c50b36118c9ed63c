use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A claim the campaign engine can test. `C1`..`C6` are open conjectures;
/// `T1`, `TA`, `L1` and `L2` are proved statements used as regressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Conjecture {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    T1,
    TA,
    L1,
    L2,
}

impl Conjecture {
    pub const ALL: [Conjecture; 10] = [
        Conjecture::C1,
        Conjecture::C2,
        Conjecture::C3,
        Conjecture::C4,
        Conjecture::C5,
        Conjecture::C6,
        Conjecture::T1,
        Conjecture::TA,
        Conjecture::L1,
        Conjecture::L2,
    ];

    pub const OPEN: [Conjecture; 6] = [
        Conjecture::C1,
        Conjecture::C2,
        Conjecture::C3,
        Conjecture::C4,
        Conjecture::C5,
        Conjecture::C6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Conjecture::C1 => "C1",
            Conjecture::C2 => "C2",
            Conjecture::C3 => "C3",
            Conjecture::C4 => "C4",
            Conjecture::C5 => "C5",
            Conjecture::C6 => "C6",
            Conjecture::T1 => "T1",
            Conjecture::TA => "TA",
            Conjecture::L1 => "L1",
            Conjecture::L2 => "L2",
        }
    }

    /// Stable small integer used when deriving per-trial seeds.
    pub fn code(self) -> u64 {
        Conjecture::ALL.iter().position(|&c| c == self).expect("listed") as u64 + 1
    }

    /// Proved statements: a failure means a bug, not a finding.
    pub fn is_proved(self) -> bool {
        matches!(self, Conjecture::T1 | Conjecture::TA | Conjecture::L1 | Conjecture::L2)
    }

    /// Whether the polynomial is the order-`r` determinant expansion.
    pub fn uses_order(self) -> bool {
        matches!(self, Conjecture::C4 | Conjecture::C5 | Conjecture::C6)
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let upper = s.trim().to_ascii_uppercase();
        Conjecture::ALL
            .into_iter()
            .find(|c| c.name() == upper)
            .ok_or_else(|| Error::Config(format!("unknown conjecture {s:?}")))
    }
}
