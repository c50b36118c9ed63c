use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize};

use super::conjecture::Conjecture;
use crate::error::{Error, Result};
use crate::exactmath::rational::{serde_rational, serde_rational_opt};
use crate::exactmath::{int, rat, Rational};
use crate::pfgen::{default_delta_min, default_denominator_bound, GeneratorClass, GeneratorSpec};

/// Campaign settings. Field names double as config-file keys and CLI flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    #[serde(deserialize_with = "one_or_many")]
    pub conjecture: Vec<Conjecture>,
    /// Smallest `n` drawn (raised per conjecture where the claim needs more).
    pub n: usize,
    pub n_max: usize,
    /// Smallest order `r` for the determinant conjectures.
    pub r: usize,
    pub r_max: usize,
    pub trials: u64,
    pub seed: u64,
    /// Replaces the default hypothesis-class generator for C1..C6.
    pub generator: Option<GeneratorClass>,
    #[serde(with = "serde_rational_opt")]
    pub alpha: Option<Rational>,
    #[serde(with = "serde_rational_opt")]
    pub beta: Option<Rational>,
    /// Random `α, β` are drawn from `(0, alpha_max]` with denominator at most `alpha_denominator`.
    #[serde(with = "serde_rational")]
    pub alpha_max: Rational,
    pub alpha_denominator: u64,
    #[serde(with = "serde_rational")]
    pub delta_min: Rational,
    pub denominator_bound: u64,
    pub max_rejections: u32,
    /// C3 on `Q_n^{α,β}` with random `α, β`, looking for the failures the relaxed claim admits.
    pub search: bool,
    /// Worker threads; 0 uses every core, 1 runs serially.
    pub threads: usize,
    pub shrink: bool,
    /// Embed the full record of every trial, not only counterexamples.
    pub record_all: bool,
}

fn one_or_many<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Conjecture>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(Conjecture),
        Many(Vec<Conjecture>),
    }
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(c) => vec![c],
        OneOrMany::Many(cs) => cs,
    })
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            conjecture: Conjecture::OPEN.to_vec(),
            n: 3,
            n_max: 10,
            r: 2,
            r_max: 4,
            trials: 100,
            seed: 0,
            generator: None,
            alpha: None,
            beta: None,
            alpha_max: int(5),
            alpha_denominator: 64,
            delta_min: default_delta_min(),
            denominator_bound: default_denominator_bound(),
            max_rejections: 100,
            search: false,
            threads: 0,
            shrink: true,
            record_all: false,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.conjecture.is_empty() {
            return bad("no conjecture selected".into());
        }
        if self.n < 2 || self.n > self.n_max {
            return bad(format!("need 2 <= n <= n_max, got n = {}, n_max = {}", self.n, self.n_max));
        }
        if self.r < 2 || self.r > self.r_max {
            return bad(format!("need 2 <= r <= r_max, got r = {}, r_max = {}", self.r, self.r_max));
        }
        for (name, v) in [("alpha", &self.alpha), ("beta", &self.beta)] {
            if v.as_ref().is_some_and(|x| !x.is_positive()) {
                return bad(format!("{name} must be positive"));
            }
        }
        if !self.alpha_max.is_positive() || self.alpha_denominator == 0 {
            return bad("alpha_max and alpha_denominator must be positive".into());
        }
        if self.max_rejections == 0 {
            return bad("max_rejections must be positive".into());
        }
        self.generator_spec(GeneratorClass::Pf2, self.n, self.r, false).validate()
    }

    pub(crate) fn generator_spec(&self, class: GeneratorClass, n: usize, r: usize, strict: bool) -> GeneratorSpec {
        GeneratorSpec {
            class,
            n,
            r,
            seed: self.seed,
            delta_min: self.delta_min.clone(),
            denominator_bound: self.denominator_bound,
            strict,
        }
    }

    /// Lower end for random `α, β`: the smallest positive step.
    pub(crate) fn alpha_min(&self) -> Rational {
        let d = self.alpha_denominator as i64;
        rat(1, d.saturating_mul(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        CampaignConfig::default().validate().unwrap();
    }

    #[test]
    fn json_keys_and_partial_input() {
        let cfg: CampaignConfig =
            serde_json::from_str(r#"{"conjecture": "C2", "n_max": 6, "alpha": "1/2", "generator": "pf_inf_roots"}"#)
                .unwrap();
        assert_eq!(cfg.conjecture, vec![Conjecture::C2]);
        assert_eq!(cfg.n_max, 6);
        assert_eq!(cfg.alpha, Some(rat(1, 2)));
        assert_eq!(cfg.generator, Some(GeneratorClass::PfInfRoots));
        assert_eq!(cfg.trials, 100);
        let back: CampaignConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
        assert!(serde_json::from_str::<CampaignConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn rejects_bad_ranges() {
        let cfg = CampaignConfig {
            n: 8,
            n_max: 5,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = CampaignConfig {
            alpha: Some(int(0)),
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = CampaignConfig {
            delta_min: int(1),
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
