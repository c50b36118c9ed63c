//! Campaign engine: samples hypothesis-class sequences, builds the target
//! polynomials, applies the analyzers and aggregates a JSON report.

mod campaign;
mod config;
mod conjecture;
mod expand;
mod regression;
mod shrink;
mod trial;

pub use campaign::{
    run_campaign, CampaignReport, Counterexample, NamedCheck, Totals, TrialSummary, EXIT_COUNTEREXAMPLE,
    EXIT_INTERNAL, EXIT_OK, SCHEMA_VERSION,
};
pub use config::CampaignConfig;
pub use conjecture::Conjecture;
pub use expand::{expand, ExpandMode, Expansion};
pub use regression::{regression_suite, REGRESSION_TRIALS};
pub use shrink::shrink;
pub use trial::{
    admissible_orders, evaluate, evaluate_with, reevaluate, run_trial, trial_seed, Evaluation, LemmaInput, Outcome, TrialCase,
    TrialRecord,
};
