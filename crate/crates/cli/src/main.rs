//! `rfdet`: sequence generation, polynomial expansion, single-input checks,
//! randomized campaigns and the fixed regression suite.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use rfdet::detpoly::Sequence;
use rfdet::exactmath::{format_rational, parse_rational, parse_rational_list};
use rfdet::harness::{
    evaluate_with, expand, reevaluate, regression_suite, run_campaign, CampaignConfig, CampaignReport, Conjecture,
    ExpandMode, LemmaInput, Outcome, TrialCase, TrialRecord, TrialSummary, EXIT_COUNTEREXAMPLE, EXIT_INTERNAL,
    EXIT_OK,
};
use rfdet::pfgen::{GeneratorClass, GeneratorParams, GeneratorSpec};
use rfdet::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "rfdet", version, about = "Exact determinant polynomials, PF sequences and conjecture campaigns")]
struct Cli {
    /// TOML file using the flag names as keys (snake_case); flags win on conflict.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit sequences; sequence i uses seed + i.
    Gen(Common),
    /// Build Q, P or P^r from --f and print it with the analyzer verdicts.
    Expand {
        /// q, p or pr
        #[arg(long)]
        mode: Option<ExpandMode>,
        #[command(flatten)]
        common: Common,
    },
    /// Check one conjecture on one input sequence, or replay saved records.
    Check {
        /// Lemma 1 weights M_0..M_{n-2} (comma-separated rationals).
        #[arg(long)]
        weights: Option<String>,
        /// Re-evaluate a saved record or every counterexample in a saved report.
        #[arg(long, value_name = "FILE", conflicts_with = "f")]
        replay: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized trials of the selected conjectures.
    Campaign(Common),
    /// Fixed identities plus the proved statements.
    Regress(Common),
}

#[derive(Args, Clone, Debug, Default)]
struct Common {
    /// C1..C6, T1, TA, L1, L2 (comma-separated).
    #[arg(long, value_delimiter = ',')]
    conjecture: Vec<Conjecture>,
    /// Sequence length minus one; the lower end of the campaign range.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Order r; the lower end of the campaign range.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    r_max: Option<usize>,
    /// Trials per conjecture, or the number of sequences for `gen`.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// pf2, pf_r_cosbound, pf_r_sector, pf_inf_roots, q3, geometric, ones
    #[arg(long, value_parser = parse_class)]
    generator: Option<GeneratorClass>,
    #[arg(long, value_parser = parse_rational_flag)]
    alpha: Option<Rational>,
    #[arg(long, value_parser = parse_rational_flag)]
    beta: Option<Rational>,
    /// Sequence f_0..f_n as comma-separated rationals, e.g. 1,2,2,1 or 1,1/2,1/8.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads; 0 means every core, 1 runs serially.
    #[arg(long)]
    threads: Option<usize>,
    /// C3 search mode: relaxed hypotheses on Q_n^{α,β}.
    #[arg(long)]
    search: bool,
    #[arg(long)]
    no_shrink: bool,
    /// Embed every trial record in the report.
    #[arg(long)]
    record_all: bool,
}

fn parse_class(s: &str) -> Result<GeneratorClass, String> {
    serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase())).map_err(|e| e.to_string())
}

fn parse_rational_flag(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Keys accepted in the config file beyond the campaign settings.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileExtras {
    f: Option<toml::Value>,
    out: Option<PathBuf>,
    format: Option<Format>,
    mode: Option<String>,
    weights: Option<toml::Value>,
}

/// Everything a subcommand needs after merging file and flags.
struct Settings {
    config: CampaignConfig,
    explicit_n: Option<usize>,
    f: Option<Vec<Rational>>,
    weights: Option<Vec<Rational>>,
    out: Option<PathBuf>,
    format: Option<Format>,
    mode: Option<ExpandMode>,
}

fn rational_list(value: &toml::Value) -> Result<Vec<Rational>> {
    match value {
        toml::Value::String(s) => Ok(parse_rational_list(s)?),
        toml::Value::Array(items) => items
            .iter()
            .map(|v| match v {
                toml::Value::String(s) => Ok(parse_rational(s)?),
                toml::Value::Integer(i) => Ok(Rational::from_integer((*i).into())),
                other => bail!("expected a rational, got {other}"),
            })
            .collect(),
        other => bail!("expected a list of rationals, got {other}"),
    }
}

fn load_file(path: &Path) -> Result<Settings> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut table: toml::Table = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut extras = toml::Table::new();
    for key in ["f", "out", "format", "mode", "weights"] {
        if let Some(v) = table.remove(key) {
            extras.insert(key.to_string(), v);
        }
    }
    // integers are accepted where a rational is expected
    for key in ["alpha", "beta", "alpha_max", "delta_min"] {
        if let Some(v) = table.get_mut(key) {
            if let toml::Value::Integer(i) = v {
                *v = toml::Value::String(i.to_string());
            }
        }
    }
    let explicit_n = table.get("n").and_then(toml::Value::as_integer).map(|n| n as usize);
    let config: CampaignConfig = toml::Value::Table(table).try_into().context("invalid config file")?;
    let extras: FileExtras = toml::Value::Table(extras).try_into().context("invalid config file")?;
    Ok(Settings {
        config,
        explicit_n,
        f: extras.f.as_ref().map(rational_list).transpose()?,
        weights: extras.weights.as_ref().map(rational_list).transpose()?,
        out: extras.out,
        format: extras.format,
        mode: extras.mode.map(|m| m.parse()).transpose()?,
    })
}

fn settings(config_path: Option<&Path>, flags: &Common) -> Result<Settings> {
    let mut s = match config_path {
        Some(path) => load_file(path)?,
        None => Settings {
            config: CampaignConfig::default(),
            explicit_n: None,
            f: None,
            weights: None,
            out: None,
            format: None,
            mode: None,
        },
    };
    let c = &mut s.config;
    if !flags.conjecture.is_empty() {
        c.conjecture = flags.conjecture.clone();
    }
    if let Some(n) = flags.n {
        c.n = n;
        c.n_max = c.n_max.max(n);
        s.explicit_n = Some(n);
    }
    if let Some(m) = flags.n_max {
        c.n_max = m;
        c.n = c.n.min(m);
    }
    if let Some(r) = flags.r {
        c.r = r;
        c.r_max = c.r_max.max(r);
    }
    if let Some(m) = flags.r_max {
        c.r_max = m;
        c.r = c.r.min(m);
    }
    if let Some(t) = flags.trials {
        c.trials = t;
    }
    if let Some(seed) = flags.seed {
        c.seed = seed;
    }
    if flags.generator.is_some() {
        c.generator = flags.generator;
    }
    if flags.alpha.is_some() {
        c.alpha = flags.alpha.clone();
    }
    if flags.beta.is_some() {
        c.beta = flags.beta.clone();
    }
    if let Some(t) = flags.threads {
        c.threads = t;
    }
    c.search |= flags.search;
    c.shrink &= !flags.no_shrink;
    c.record_all |= flags.record_all;
    if let Some(f) = &flags.f {
        s.f = Some(parse_rational_list(f)?);
    }
    if flags.out.is_some() {
        s.out = flags.out.clone();
    }
    if flags.format.is_some() {
        s.format = flags.format;
    }
    Ok(s)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    Ok(String::from_utf8(writer.into_inner().map_err(|e| anyhow!("{e}"))?)?)
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn required_sequence(s: &Settings) -> Result<Sequence> {
    let values = s.f.clone().ok_or_else(|| anyhow!("--f is required"))?;
    let f = Sequence::raw(values)?;
    if let Some(n) = s.explicit_n {
        if n != f.last_index() {
            bail!("--n {n} does not match the {} given values", f.len());
        }
    }
    Ok(f)
}

#[derive(Serialize)]
struct GeneratedRow {
    index: u64,
    seed: u64,
    class: String,
    n: usize,
    values: String,
    rejections: u32,
}

fn cmd_gen(s: &Settings, count: u64) -> Result<i32> {
    let c = &s.config;
    let class = c.generator.unwrap_or(GeneratorClass::Pf2);
    let mut samples = Vec::new();
    for i in 0..count {
        let spec = GeneratorSpec {
            class,
            n: c.n,
            r: c.r,
            seed: c.seed.wrapping_add(i),
            delta_min: c.delta_min.clone(),
            denominator_bound: c.denominator_bound,
            strict: false,
        };
        samples.push((spec.seed, spec.generate()?));
    }
    let text = match s.format.unwrap_or(Format::Json) {
        Format::Json => json(&samples.iter().map(|(_, sample)| sample).collect::<Vec<_>>())?,
        Format::Csv => {
            let rows: Vec<GeneratedRow> = samples
                .iter()
                .enumerate()
                .map(|(i, (seed, sample))| GeneratedRow {
                    index: i as u64,
                    seed: *seed,
                    class: class_name(class),
                    n: sample.sequence.last_index(),
                    values: sample.sequence.values().iter().map(format_rational).collect::<Vec<_>>().join(";"),
                    rejections: sample.rejections,
                })
                .collect();
            to_csv(&rows)?
        }
    };
    emit(s.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn class_name(class: GeneratorClass) -> String {
    serde_json::to_value(class)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

#[derive(Serialize)]
struct CoefficientRow {
    power: usize,
    coefficient: String,
}

fn cmd_expand(s: &Settings) -> Result<i32> {
    let f = required_sequence(s)?;
    let mode = s.mode.unwrap_or(ExpandMode::P);
    let r = (mode == ExpandMode::Pr).then_some(s.config.r);
    let e = expand(mode, f.last_index(), r, s.config.alpha.as_ref(), s.config.beta.as_ref(), &f)?;
    let text = match s.format {
        None => e.to_string(),
        Some(Format::Json) => json(&e)?,
        Some(Format::Csv) => {
            let rows: Vec<CoefficientRow> = (0..=e.degree.unwrap_or(0))
                .filter(|_| e.degree.is_some())
                .map(|power| CoefficientRow {
                    power,
                    coefficient: format_rational(&e.polynomial.coeff(power)),
                })
                .collect();
            to_csv(&rows)?
        }
    };
    emit(s.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn single_conjecture(s: &Settings) -> Result<Conjecture> {
    match s.config.conjecture.as_slice() {
        [c] => Ok(*c),
        _ => bail!("check takes exactly one --conjecture"),
    }
}

fn cmd_check(s: &Settings) -> Result<i32> {
    let conjecture = single_conjecture(s)?;
    let f = required_sequence(s)?;
    let n = f.last_index();
    let needs_alpha_beta = matches!(conjecture, Conjecture::C1 | Conjecture::C2 | Conjecture::TA)
        || (conjecture == Conjecture::C3 && s.config.search);
    if needs_alpha_beta && (s.config.alpha.is_none() || s.config.beta.is_none()) {
        bail!("{conjecture} needs --alpha and --beta");
    }
    let lemma = match conjecture {
        Conjecture::L1 => Some(LemmaInput::Weights {
            weights: s.weights.clone().ok_or_else(|| anyhow!("L1 needs --weights"))?,
        }),
        Conjecture::L2 => bail!("L2 compares two multisets and takes no sequence; run it with `campaign`"),
        _ => None,
    };
    let case = TrialCase {
        conjecture,
        n,
        r: conjecture.uses_order().then_some(s.config.r),
        alpha: if needs_alpha_beta { s.config.alpha.clone() } else { None },
        beta: if needs_alpha_beta { s.config.beta.clone() } else { None },
        params: Some(GeneratorParams::Raw {
            values: f.values().to_vec(),
        }),
        lemma,
        search: s.config.search,
    };
    let eval = evaluate_with(&case, false)?;
    let record = TrialRecord {
        trial_id: 0,
        seed: s.config.seed,
        case,
        sequence: eval.sequence,
        polynomial: eval.polynomial,
        verdict: eval.verdict,
        outcome: eval.outcome,
        hypotheses_hold: eval.hypotheses_hold,
        rejections: 0,
        note: (!eval.hypotheses_hold).then(|| "input does not satisfy the hypotheses".to_string()),
        elapsed_ms: 0,
    };
    let text = match s.format.unwrap_or(Format::Json) {
        Format::Json => json(&record)?,
        Format::Csv => to_csv(&[TrialSummary::from(&record)])?,
    };
    emit(s.out.as_deref(), &text)?;
    let counts = record.outcome == Outcome::Fails && (record.hypotheses_hold || record.case.search);
    Ok(match (counts, conjecture.is_proved()) {
        (false, _) => EXIT_OK,
        (true, false) => EXIT_COUNTEREXAMPLE,
        (true, true) => EXIT_INTERNAL,
    })
}

#[derive(Serialize)]
struct ReplaySummary {
    replayed: usize,
    matched: usize,
    still_failing: usize,
    mismatches: Vec<String>,
}

fn saved_records(text: &str) -> Result<Vec<TrialRecord>> {
    if let Ok(report) = serde_json::from_str::<CampaignReport>(text) {
        let mut out = Vec::new();
        for c in report.counterexamples {
            out.push(c.original);
            out.extend(c.shrunk);
        }
        out.extend(report.records);
        return Ok(out);
    }
    serde_json::from_str::<TrialRecord>(text)
        .map(|r| vec![r])
        .context("expected a campaign report or a single trial record")
}

fn cmd_replay(path: &Path, s: &Settings) -> Result<i32> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let records = saved_records(&text)?;
    let mut summary = ReplaySummary {
        replayed: records.len(),
        matched: 0,
        still_failing: 0,
        mismatches: Vec::new(),
    };
    for rec in &records {
        let fresh = reevaluate(rec)?;
        if &fresh == rec {
            summary.matched += 1;
        } else {
            summary
                .mismatches
                .push(format!("{} trial {}", rec.case.conjecture, rec.trial_id));
        }
        if fresh.outcome == Outcome::Fails {
            summary.still_failing += 1;
        }
    }
    emit(s.out.as_deref(), &json(&summary)?)?;
    Ok(if !summary.mismatches.is_empty() {
        EXIT_INTERNAL
    } else if summary.still_failing > 0 {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    })
}

fn write_report(report: &CampaignReport, s: &Settings) -> Result<i32> {
    let text = match s.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json(),
        Format::Csv => to_csv(&report.trials)?,
    };
    emit(s.out.as_deref(), &text)?;
    for e in &report.internal_errors {
        eprintln!("internal error: {e}");
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("regression failed: {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
    }
    if report.findings() > 0 {
        eprintln!("{} counterexample(s) found", report.findings());
    }
    Ok(report.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    let config = cli.config.as_deref();
    match cli.command {
        Command::Gen(flags) => cmd_gen(&settings(config, &flags)?, flags.trials.unwrap_or(1)),
        Command::Expand { mode, common } => {
            let mut s = settings(config, &common)?;
            if mode.is_some() {
                s.mode = mode;
            }
            cmd_expand(&s)
        }
        Command::Check {
            weights,
            replay,
            common,
        } => {
            let mut s = settings(config, &common)?;
            if let Some(w) = weights {
                s.weights = Some(parse_rational_list(&w)?);
            }
            match replay {
                Some(path) => cmd_replay(&path, &s),
                None => cmd_check(&s),
            }
        }
        Command::Campaign(flags) => {
            let s = settings(config, &flags)?;
            write_report(&run_campaign(&s.config)?, &s)
        }
        Command::Regress(flags) => {
            let s = settings(config, &flags)?;
            write_report(&regression_suite(), &s)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INTERNAL as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INTERNAL as u8)
        }
    }
}
