//! Campaign execution and the JSON report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::CampaignConfig;
use super::conjecture::Conjecture;
use super::shrink::shrink;
use super::trial::{admissible_orders, run_trial, Outcome, TrialRecord};
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub trials: u64,
    pub holds: u64,
    pub fails: u64,
    pub not_applicable: u64,
}

impl Totals {
    fn add(&mut self, outcome: Outcome) {
        self.trials += 1;
        match outcome {
            Outcome::Holds => self.holds += 1,
            Outcome::Fails => self.fails += 1,
            Outcome::NotApplicable => self.not_applicable += 1,
        }
    }
}

/// One row per trial; also the CSV layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub conjecture: Conjecture,
    pub trial_id: u64,
    pub seed: u64,
    pub n: usize,
    pub r: Option<usize>,
    pub outcome: Outcome,
    pub witness: Option<String>,
    pub rejections: u32,
    pub elapsed_ms: u64,
}

impl From<&TrialRecord> for TrialSummary {
    fn from(rec: &TrialRecord) -> Self {
        Self {
            conjecture: rec.case.conjecture,
            trial_id: rec.trial_id,
            seed: rec.seed,
            n: rec.case.n,
            r: rec.case.r,
            outcome: rec.outcome,
            witness: rec
                .verdict
                .as_ref()
                .and_then(|v| v.witness.as_ref())
                .map(|w| w.tag().to_string()),
            rejections: rec.rejections,
            elapsed_ms: rec.elapsed_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub original: TrialRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shrunk: Option<TrialRecord>,
}

/// A fixed identity checked by the regression suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub config: CampaignConfig,
    pub totals: BTreeMap<Conjecture, Totals>,
    pub rejections: BTreeMap<Conjecture, u64>,
    pub trials: Vec<TrialSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<TrialRecord>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<NamedCheck>,
    pub internal_errors: Vec<String>,
    pub caveats: Vec<String>,
    pub wall_time_ms: u64,
}

/// Process exit status: 0 when everything holds, 10 when an open conjecture failed,
/// 1 on an internal error (including a failed regression).
pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 10;
pub const EXIT_INTERNAL: i32 = 1;

impl CampaignReport {
    pub(crate) fn empty(config: CampaignConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            config,
            totals: BTreeMap::new(),
            rejections: BTreeMap::new(),
            trials: Vec::new(),
            records: Vec::new(),
            counterexamples: Vec::new(),
            checks: Vec::new(),
            internal_errors: Vec::new(),
            caveats: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn findings(&self) -> usize {
        self.counterexamples.len()
    }

    pub fn exit_code(&self) -> i32 {
        if !self.internal_errors.is_empty() || self.checks.iter().any(|c| !c.passed) {
            EXIT_INTERNAL
        } else if self.findings() > 0 {
            EXIT_COUNTEREXAMPLE
        } else {
            EXIT_OK
        }
    }

    /// Copy with every wall-clock field zeroed and the worker count cleared, for
    /// byte-level comparison of runs that differ only in how they were scheduled.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.wall_time_ms = 0;
        r.config.threads = 0;
        r.trials.iter_mut().for_each(|t| t.elapsed_ms = 0);
        r.records.iter_mut().for_each(|t| t.elapsed_ms = 0);
        for c in &mut r.counterexamples {
            c.original.elapsed_ms = 0;
            if let Some(s) = &mut c.shrunk {
                s.elapsed_ms = 0;
            }
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Folds trial results (in any order) into the report, sorted by conjecture then id.
    pub(crate) fn absorb(&mut self, mut results: Vec<(Conjecture, u64, Result<TrialRecord>)>, shrink_failures: bool) {
        results.sort_by_key(|(c, id, _)| (*c, *id));
        for (conjecture, trial_id, result) in results {
            let rec = match result {
                Ok(rec) => rec,
                Err(e) => {
                    self.internal_errors.push(format!("{conjecture} trial {trial_id}: {e}"));
                    continue;
                }
            };
            self.totals.entry(conjecture).or_default().add(rec.outcome);
            *self.rejections.entry(conjecture).or_default() += u64::from(rec.rejections);
            self.trials.push(TrialSummary::from(&rec));
            if rec.outcome == Outcome::Fails {
                if conjecture.is_proved() {
                    self.internal_errors
                        .push(format!("proved claim {conjecture} failed at trial {trial_id}"));
                }
                let shrunk = if shrink_failures {
                    match shrink(&rec) {
                        Ok(s) => Some(s),
                        Err(e) => {
                            self.internal_errors
                                .push(format!("{conjecture} trial {trial_id}: shrinking failed: {e}"));
                            None
                        }
                    }
                } else {
                    None
                };
                self.counterexamples.push(Counterexample {
                    original: rec.clone(),
                    shrunk,
                });
            }
            if self.config.record_all {
                self.records.push(rec);
            }
        }
    }
}

type Job = (Conjecture, u64);

#[cfg(feature = "parallel")]
fn execute<T, F>(jobs: &[Job], threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Job) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if threads == 1 {
        return jobs.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| jobs.par_iter().map(&f).collect()),
        Err(_) => jobs.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn execute<T, F>(jobs: &[Job], _threads: usize, f: F) -> Vec<T>
where
    F: Fn(&Job) -> T,
{
    jobs.iter().map(f).collect()
}

fn caveats(config: &CampaignConfig) -> Vec<String> {
    let mut out = Vec::new();
    if config.conjecture.iter().any(|c| c.uses_order()) {
        let kept = admissible_orders(config);
        let skipped: Vec<String> = (config.r..=config.r_max)
            .filter(|r| !kept.contains(r))
            .map(|r| r.to_string())
            .collect();
        if !skipped.is_empty() {
            out.push(format!(
                "orders r = {} skipped for C4-C6: the expected degree n - r(r-1) is negative for every n <= {}",
                skipped.join(", "),
                config.n_max
            ));
        }
    }
    if config.search && config.conjecture.contains(&Conjecture::C3) {
        out.push(
            "C3 search mode: hypotheses relaxed and the target is Q_n^{alpha,beta}; failures are expected to exist, \
             and finding none is not evidence either way"
                .to_string(),
        );
    }
    if config.generator.is_some() {
        out.push("generator override: trials whose sequence misses the hypothesis class are not_applicable".into());
    }
    out
}

/// Runs `trials` trials of every configured conjecture. Per-trial results do not
/// depend on `threads`.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let start = Instant::now();
    let jobs: Vec<Job> = config
        .conjecture
        .iter()
        .flat_map(|&c| (0..config.trials).map(move |id| (c, id)))
        .collect();
    let results = execute(&jobs, config.threads, |&(c, id)| (c, id, run_trial(config, c, id)));
    let mut report = CampaignReport::empty(config.clone());
    report.caveats = caveats(config);
    report.absorb(results, config.shrink);
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(threads: usize) -> CampaignConfig {
        CampaignConfig {
            trials: 6,
            n_max: 7,
            r_max: 3,
            seed: 42,
            threads,
            ..Default::default()
        }
    }

    #[test]
    fn small_campaign_holds() {
        let report = run_campaign(&config(1)).unwrap();
        assert_eq!(report.exit_code(), EXIT_OK, "{}", report.to_json());
        for c in Conjecture::OPEN {
            let t = report.totals[&c];
            assert_eq!(t.trials, 6);
            assert_eq!(t.holds + t.fails + t.not_applicable, t.trials);
        }
        assert_eq!(report.schema_version, SCHEMA_VERSION);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let a = run_campaign(&config(1)).unwrap().without_timing();
        let b = run_campaign(&config(4)).unwrap().without_timing();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn exit_codes() {
        let mut report = CampaignReport::empty(CampaignConfig::default());
        assert_eq!(report.exit_code(), EXIT_OK);
        report.checks.push(NamedCheck {
            name: "x".into(),
            passed: false,
            detail: None,
        });
        assert_eq!(report.exit_code(), EXIT_INTERNAL);
    }
}
