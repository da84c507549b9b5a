//! Command-line surface: load models, run checks, print reports.
//!
//! Every rational in text output is printed exactly and with a 4-decimal
//! approximation; `--json` switches to the machine-readable report. Exit
//! codes: 0 when all checks pass, 1 when a check found violations, 2 for
//! input or usage errors.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::conjugate::{
    expected_posterior_mixture, BetaParams, PointVsBeta, TrialOutcome, TrialRecord,
};
use crate::exact::Rat;
use crate::model::{Event, FiniteModel, Updater};
use crate::montecarlo::{mc_reflection_check, mc_reflection_check_finite, McConfig, McReport};
use crate::reflection::{
    check_reflection_all_events, expected_posterior, lookahead_reflection, perturb_and_detect,
    perturbed_bayes_beliefs, perturbed_gap_on_event, solve_unique_updater, updater_beliefs,
    verify_updater_against_rule, DEFAULT_EVENT_CAP,
};

/// Environment variable overriding the exhaustive event-enumeration cap.
pub const EVENT_CAP_ENV: &str = "REFLECTANCE_EVENT_CAP";

/// Process exit status: 0 all checks passed, 1 a check found violations,
/// 2 input or usage error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass,
    Violations,
    UsageError,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Pass => 0,
            ExitStatus::Violations => 1,
            ExitStatus::UsageError => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "reflectance",
    version,
    about = "Exact verification of the martingale property of Bayesian posteriors"
)]
pub struct Cli {
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the prior predictive distribution of a model
    Predictive {
        /// Model file (JSON)
        #[arg(long)]
        model: PathBuf,
    },
    /// Check that the expected posterior equals the prior
    Reflect {
        #[arg(long)]
        model: PathBuf,
        /// Updating rule: bayes, noop, or tempered:<t>
        #[arg(long, default_value = "bayes")]
        rule: String,
    },
    /// Check the reflection identity on every nonempty event
    ReflectEvents {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value = "bayes")]
        rule: String,
        /// Outcome-count cap for exhaustive enumeration
        /// (default 20, or REFLECTANCE_EVENT_CAP)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check the identity over the k-step product outcome space
    Lookahead {
        #[arg(long)]
        model: PathBuf,
        /// Number of future observations
        #[arg(long, default_value_t = 1)]
        depth: u32,
    },
    /// Pin the updating rule forced by the Bayes event rule, or verify a
    /// perturbed rule against it
    Unique {
        #[arg(long)]
        model: PathBuf,
        /// Deviate from Bayes at one point: outcome:account:delta
        /// (e.g. y1:theta1:1/10)
        #[arg(long)]
        perturb: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Perturb one posterior value and exhibit an event that detects it
    Perturb {
        #[arg(long)]
        model: PathBuf,
        /// Where to deviate: outcome:account:delta (e.g. y1:theta1:1/10)
        #[arg(long)]
        at: String,
        /// Also evaluate the gap on this event (comma-separated outcome labels)
        #[arg(long)]
        event: Option<String>,
    },
    /// Built-in demonstration: the expected beta posterior over future
    /// observations collapses to the prior
    Example1 {
        /// Number of future observations to contemplate
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        n_star: u64,
    },
    /// Built-in demonstration: the expected posterior model probability
    /// equals the current one
    Example2 {
        /// Hypothesis file (JSON); defaults to rate 1/2 vs beta(1,1),
        /// equal odds
        #[arg(long)]
        hypothesis: Option<PathBuf>,
        /// Trial data file (JSON); defaults to 5 successes
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Monte Carlo reflection check (beta-binomial or finite model)
    McCheck(McCheckArgs),
}

#[derive(Args)]
pub struct McCheckArgs {
    /// Finite model file (JSON); mutually exclusive with --beta
    #[arg(long, conflicts_with = "beta")]
    model: Option<PathBuf>,
    /// Beta prior "a,b" for the conjugate check
    #[arg(long)]
    beta: Option<String>,
    /// Binomial trials per replication (conjugate check)
    #[arg(long, default_value_t = 20)]
    n_obs: u64,
    #[arg(long, default_value = "bayes")]
    rule: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    reps: u64,
    /// CDF evaluation points, comma-separated rationals in (0,1)
    #[arg(long, default_value = "1/4,1/2,3/4")]
    grid: String,
    /// Tolerance in standard errors
    #[arg(long, default_value_t = 3)]
    sigma: u32,
}

/// Parses the command line and runs it; returns the process exit code.
pub fn main_entry() -> i32 {
    run(Cli::parse()).code()
}

pub fn run(cli: Cli) -> ExitStatus {
    match dispatch(&cli) {
        Ok(status) => status,
        Err(message) => {
            eprintln!("error: {message}");
            ExitStatus::UsageError
        }
    }
}

fn dispatch(cli: &Cli) -> Result<ExitStatus, String> {
    match &cli.command {
        Command::Predictive { model } => cmd_predictive(cli.json, model),
        Command::Reflect { model, rule } => cmd_reflect(cli.json, model, rule),
        Command::ReflectEvents { model, rule, cap } => {
            cmd_reflect_events(cli.json, model, rule, *cap)
        }
        Command::Lookahead { model, depth } => cmd_lookahead(cli.json, model, *depth),
        Command::Unique {
            model,
            perturb,
            cap,
        } => cmd_unique(cli.json, model, perturb.as_deref(), *cap),
        Command::Perturb { model, at, event } => {
            cmd_perturb(cli.json, model, at, event.as_deref())
        }
        Command::Example1 { n_star } => cmd_example1(cli.json, *n_star),
        Command::Example2 { hypothesis, data } => {
            cmd_example2(cli.json, hypothesis.as_deref(), data.as_deref())
        }
        Command::McCheck(args) => cmd_mc_check(cli.json, args),
    }
}

// ---------------------------------------------------------------------------
// input parsing
// ---------------------------------------------------------------------------

fn load_model(path: &Path) -> Result<FiniteModel, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    FiniteModel::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_rule(raw: &str) -> Result<Updater, String> {
    Updater::from_str(raw)
}

fn parse_rat(field: &str, raw: &str) -> Result<Rat, String> {
    raw.parse().map_err(|e| format!("{field}: {e}"))
}

fn event_cap(flag: Option<usize>) -> Result<usize, String> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(EVENT_CAP_ENV) {
        Ok(raw) => raw
            .parse()
            .map_err(|_| format!("{EVENT_CAP_ENV} must be an integer (got {raw:?})")),
        Err(_) => Ok(DEFAULT_EVENT_CAP),
    }
}

/// outcome:account:delta, e.g. "y1:theta1:1/10"
fn parse_perturbation(
    model: &FiniteModel,
    raw: &str,
) -> Result<(usize, usize, Rat), String> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        return Err(format!(
            "perturbation must be outcome:account:delta (got {raw:?})"
        ));
    }
    let outcome = model.outcome_index(parts[0]).map_err(|e| e.to_string())?;
    let account = model.param_index(parts[1]).map_err(|e| e.to_string())?;
    let delta = parse_rat("delta", parts[2])?;
    Ok((outcome, account, delta))
}

fn parse_event(model: &FiniteModel, raw: &str) -> Result<Event, String> {
    let labels: Vec<String> = raw.split(',').map(|s| s.trim().to_string()).collect();
    Event::from_labels(model, &labels).map_err(|e| e.to_string())
}

#[derive(Deserialize)]
struct HypothesisFile {
    null_rate: String,
    alt_prior: BetaParamsFile,
    prior_odds_alt: String,
}

#[derive(Deserialize)]
struct BetaParamsFile {
    a: u64,
    b: u64,
}

fn load_hypothesis(path: &Path) -> Result<PointVsBeta, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: HypothesisFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let null_rate = parse_rat("null_rate", &file.null_rate)?;
    let odds = parse_rat("prior_odds_alt", &file.prior_odds_alt)?;
    let alt_prior =
        BetaParams::new(file.alt_prior.a, file.alt_prior.b).map_err(|e| e.to_string())?;
    PointVsBeta::new(null_rate, alt_prior, odds).map_err(|e| e.to_string())
}

#[derive(Deserialize)]
struct TrialFile {
    successes: Option<u64>,
    failures: Option<u64>,
    sequence: Option<Vec<u8>>,
}

/// Counts, plus the original sequence length when the file carried one.
fn load_trials(path: &Path) -> Result<(TrialRecord, Option<usize>), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: TrialFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    match (file.sequence, file.successes, file.failures) {
        (Some(seq), None, None) => {
            if let Some(bad) = seq.iter().find(|&&x| x > 1) {
                return Err(format!("sequence entries must be 0 or 1 (got {bad})"));
            }
            let len = seq.len();
            Ok((TrialRecord::from_sequence(&seq), Some(len)))
        }
        (None, s, f) => Ok((TrialRecord::new(s.unwrap_or(0), f.unwrap_or(0)), None)),
        _ => Err("give either successes/failures or a 0/1 sequence, not both".into()),
    }
}

// ---------------------------------------------------------------------------
// output helpers
// ---------------------------------------------------------------------------

/// Exact form plus a 4-decimal approximation, e.g. "213/266 ≈ 0.8008".
fn show(r: &Rat) -> String {
    format!("{r} ≈ {:.4}", r.to_f64())
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid JSON"));
}

fn mc_text(report: &McReport) {
    println!(
        "seed {}, {} replications, tolerance {}σ",
        report.seed, report.replications, report.sigma_level
    );
    for row in &report.rows {
        println!(
            "  {}: estimate {:.6}, reference {:.6}, se {:.6} — {}",
            row.label,
            row.estimate,
            row.reference,
            row.standard_error,
            if row.pass { "pass" } else { "FAIL" }
        );
    }
    println!("overall: {}", if report.overall_pass { "PASS" } else { "FAIL" });
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

fn cmd_predictive(json: bool, path: &Path) -> Result<ExitStatus, String> {
    let model = load_model(path)?;
    let predictive = model.predictive();
    if json {
        print_json(&json!({
            "outcomes": model.outcome_labels(),
            "predictive": predictive,
        }));
    } else {
        println!("prior predictive over {} outcomes:", model.num_outcomes());
        for (label, p) in model.outcome_labels().iter().zip(&predictive) {
            println!("  {label}: {}", show(p));
        }
    }
    Ok(ExitStatus::Pass)
}

fn cmd_reflect(json: bool, path: &Path, rule_raw: &str) -> Result<ExitStatus, String> {
    let model = load_model(path)?;
    let rule = parse_rule(rule_raw)?;
    let expected = expected_posterior(&model, rule).map_err(|e| e.to_string())?;
    let prior = model.prior();
    let gap = expected.gap(&prior);
    let holds = gap.is_zero();
    let summary = if holds {
        format!("rule {rule}: expected posterior = prior (exact)")
    } else {
        format!("rule {rule}: expected posterior differs from prior")
    };
    if json {
        print_json(&json!({
            "rule": rule.to_string(),
            "holds": holds,
            "accounts": model.param_labels(),
            "prior": prior.values(),
            "expected": expected.values(),
            "gap": gap.values(),
            "summary": summary,
        }));
    } else {
        println!("{summary}");
        for (j, label) in model.param_labels().iter().enumerate() {
            if holds {
                println!("  {label}: {}", show(prior.get(j)));
            } else {
                println!(
                    "  {label}: expected {}, prior {}, gap {}",
                    show(expected.get(j)),
                    show(prior.get(j)),
                    show(gap.get(j))
                );
            }
        }
    }
    Ok(if holds {
        ExitStatus::Pass
    } else {
        ExitStatus::Violations
    })
}

fn cmd_reflect_events(
    json: bool,
    path: &Path,
    rule_raw: &str,
    cap: Option<usize>,
) -> Result<ExitStatus, String> {
    let model = load_model(path)?;
    let rule = parse_rule(rule_raw)?;
    let cap = event_cap(cap)?;
    let report =
        check_reflection_all_events(&model, rule, cap).map_err(|e| e.to_string())?;
    if json {
        print_json(&report.to_json(&model));
    } else {
        println!("{}", report.summary());
        const SHOWN: usize = 10;
        for violation in report.violating_events.iter().take(SHOWN) {
            println!(
                "  {}: gap {}",
                violation.event.describe(&model),
                violation.gap
            );
        }
        if report.violating_events.len() > SHOWN {
            println!(
                "  … and {} more",
                report.violating_events.len() - SHOWN
            );
        }
    }
    Ok(if report.passed() {
        ExitStatus::Pass
    } else {
        ExitStatus::Violations
    })
}

fn cmd_lookahead(json: bool, path: &Path, depth: u32) -> Result<ExitStatus, String> {
    let model = load_model(path)?;
    let expected = lookahead_reflection(&model, depth).map_err(|e| e.to_string())?;
    let prior = model.prior();
    let holds = expected == prior;
    let outcomes = (model.num_outcomes() as u128).pow(depth);
    let summary = if holds {
        format!(
            "depth {depth}: expected posterior across the {outcomes}-sequence product space = prior (exact)"
        )
    } else {
        format!("depth {depth}: expected posterior differs from prior")
    };
    if json {
        print_json(&json!({
            "depth": depth,
            "product_outcomes": outcomes as u64,
            "accounts": model.param_labels(),
            "prior": prior.values(),
            "expected": expected.values(),
            "holds": holds,
            "summary": summary,
        }));
    } else {
        println!("{summary}");
        for (j, label) in model.param_labels().iter().enumerate() {
            println!("  {label}: {}", show(expected.get(j)));
        }
    }
    Ok(if holds {
        ExitStatus::Pass
    } else {
        ExitStatus::Violations
    })
}

fn cmd_unique(
    json: bool,
    path: &Path,
    perturb: Option<&str>,
    cap: Option<usize>,
) -> Result<ExitStatus, String> {
    let model = load_model(path)?;
    let cap = event_cap(cap)?;
    let solution = match perturb {
        None => solve_unique_updater(
            &model.predictive(),
            |e| model.event_posterior(e).map_err(Into::into),
            cap,
        )
        .map_err(|e| e.to_string())?,
        Some(raw) => {
            let (outcome, account, delta) = parse_perturbation(&model, raw)?;
            let beliefs = perturbed_bayes_beliefs(&model, outcome, account, &delta)
                .map_err(|e| e.to_string())?;
            verify_updater_against_rule(
                &model,
                &beliefs,
                |e| model.event_posterior(e).map_err(Into::into),
                cap,
            )
            .map_err(|e| e.to_string())?
        }
    };
    if json {
        print_json(&solution.to_json(&model));
    } else {
        println!("{}", solution.summary(&model));
        for (&i, bel) in &solution.pinned {
            println!("  {}: {bel}", model.outcome_labels()[i]);
        }
        for &i in &solution.free_outcomes {
            println!(
                "  {}: free (probability zero)",
                model.outcome_labels()[i]
            );
        }
        if let Some(witness) = &solution.witness {
            println!(
                "  witness event {}: gap {}",
                witness.event.describe(&model),
                witness.gap
            );
        }
    }
    Ok(if solution.consistent {
        ExitStatus::Pass
    } else {
        ExitStatus::Violations
    })
}

fn cmd_perturb(
    json: bool,
    path: &Path,
    at: &str,
    query_event: Option<&str>,
) -> Result<ExitStatus, String> {
    let model = load_model(path)?;
    let (outcome, account, delta) = parse_perturbation(&model, at)?;
    let witness =
        perturb_and_detect(&model, outcome, account, &delta).map_err(|e| e.to_string())?;
    let query = query_event
        .map(|raw| -> Result<(Event, _), String> {
            let event = parse_event(&model, raw)?;
            let gap = perturbed_gap_on_event(&model, outcome, account, &delta, &event)
                .map_err(|e| e.to_string())?;
            Ok((event, gap))
        })
        .transpose()?;
    if json {
        let mut value = witness.to_json(&model);
        if let Some((event, gap)) = &query {
            value["query_event"] = json!({
                "event": event.labels(&model),
                "gap": gap.values(),
            });
        }
        print_json(&value);
    } else {
        println!(
            "deviating from Bayes at Bel({} | {}) by {}",
            model.param_labels()[account],
            model.outcome_labels()[outcome],
            show(&delta)
        );
        println!("{}", witness.summary(&model));
        if let Some((event, gap)) = &query {
            println!("gap on query event {}: {gap}", event.describe(&model));
        }
    }
    Ok(ExitStatus::Violations)
}

fn cmd_example1(json: bool, n_star: u64) -> Result<ExitStatus, String> {
    let prior = BetaParams::new(2, 2).expect("positive parameters");
    let mixture = expected_posterior_mixture(&prior, n_star);
    let collapses = mixture.collapses_to(&prior);
    if json {
        print_json(&json!({
            "prior": {"a": prior.a(), "b": prior.b()},
            "n_star": n_star,
            "components": mixture.components().iter().map(|(w, p)| json!({
                "weight": w,
                "posterior": {"a": p.a(), "b": p.b()},
            })).collect::<Vec<_>>(),
            "mixture_pdf": mixture.pdf_poly().coeffs(),
            "collapses_to_prior": collapses,
        }));
    } else {
        println!("prior: {prior}");
        println!("future observations contemplated: n* = {n_star}");
        println!("predictive weights and posterior components:");
        for (s, (weight, params)) in mixture.components().iter().enumerate() {
            println!("  s* = {s}: weight {} → {params}", show(weight));
        }
        println!("mixture density: {}", mixture.pdf_poly());
        println!("prior density:   {}", prior.pdf_poly());
        println!(
            "mixture collapses to the {prior} prior: {} (exact polynomial equality)",
            if collapses { "yes" } else { "NO" }
        );
    }
    Ok(if collapses {
        ExitStatus::Pass
    } else {
        ExitStatus::Violations
    })
}

fn cmd_example2(
    json: bool,
    hypothesis: Option<&Path>,
    data: Option<&Path>,
) -> Result<ExitStatus, String> {
    let comparison = match hypothesis {
        Some(path) => load_hypothesis(path)?,
        None => PointVsBeta::new(
            Rat::ratio(1, 2),
            BetaParams::new(1, 1).expect("positive parameters"),
            Rat::one(),
        )
        .expect("valid defaults"),
    };
    let (trials, sequence_len) = match data {
        Some(path) => load_trials(path)?,
        None => (TrialRecord::new(5, 0), None),
    };

    let posterior = comparison.model_posterior(&trials);
    let posterior_alt = comparison.alt_prior().posterior(&trials);
    let (pred_success, pred_failure) = comparison.next_obs_predictive(&trials);
    let bf_success = comparison.next_obs_bayes_factor(&trials, TrialOutcome::Success);
    let bf_failure = comparison.next_obs_bayes_factor(&trials, TrialOutcome::Failure);
    let after_success = comparison.model_posterior(&trials.with_success()).prob_alt;
    let after_failure = comparison.model_posterior(&trials.with_failure()).prob_alt;
    let expected = comparison.expected_model_prob(&trials);
    let exact_martingale = expected == posterior.prob_alt;

    if json {
        print_json(&json!({
            "null_rate": comparison.null_rate(),
            "alt_prior": {"a": comparison.alt_prior().a(), "b": comparison.alt_prior().b()},
            "prior_odds_alt": comparison.prior_odds_alt(),
            "trials": {"successes": trials.successes, "failures": trials.failures},
            "sequence_length": sequence_len,
            "prob_alt": posterior.prob_alt,
            "odds_alt": posterior.odds_alt,
            "posterior_alt": {"a": posterior_alt.a(), "b": posterior_alt.b()},
            "pred_success": pred_success,
            "pred_failure": pred_failure,
            "bf_success": bf_success,
            "bf_failure": bf_failure,
            "prob_alt_after_success": after_success,
            "prob_alt_after_failure": after_failure,
            "expected_prob_alt": expected,
            "martingale_exact": exact_martingale,
        }));
    } else {
        println!(
            "hypotheses: H0: rate = {}, H1: rate ~ {}, prior odds (H1:H0) = {}",
            show(comparison.null_rate()),
            comparison.alt_prior(),
            comparison.prior_odds_alt()
        );
        match sequence_len {
            Some(len) => println!(
                "data: {} successes, {} failures (from a sequence of {len} observations)",
                trials.successes, trials.failures
            ),
            None => println!(
                "data: {} successes, {} failures",
                trials.successes, trials.failures
            ),
        }
        println!("posterior probability of H1: {}", show(&posterior.prob_alt));
        println!("posterior odds (H1:H0): {}", show(&posterior.odds_alt));
        println!("posterior under H1: {posterior_alt}");
        println!("next observation: p(success) = {}", show(&pred_success));
        println!("                  p(failure) = {}", show(&pred_failure));
        println!("Bayes factor if success: {}", show(&bf_success));
        println!("Bayes factor if failure: {}", show(&bf_failure));
        println!("probability of H1 after a success: {}", show(&after_success));
        println!("probability of H1 after a failure: {}", show(&after_failure));
        println!("expected posterior probability of H1: {}", show(&expected));
        println!(
            "expected equals current: {}",
            if exact_martingale { "yes (exact)" } else { "NO" }
        );
    }
    Ok(if exact_martingale {
        ExitStatus::Pass
    } else {
        ExitStatus::Violations
    })
}

fn cmd_mc_check(json: bool, args: &McCheckArgs) -> Result<ExitStatus, String> {
    let rule = parse_rule(&args.rule)?;
    let grid = args
        .grid
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_rat("grid", s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = McConfig {
        seed: args.seed,
        replications: args.reps,
        grid,
        sigma_level: args.sigma,
    };
    let report = match (&args.model, &args.beta) {
        (Some(path), None) => {
            let model = load_model(path)?;
            // fail fast if the rule cannot cover the model
            updater_beliefs(&model, rule).map_err(|e| e.to_string())?;
            mc_reflection_check_finite(&model, rule, &cfg).map_err(|e| e.to_string())?
        }
        (None, Some(raw)) => {
            let (a, b) = raw
                .split_once(',')
                .ok_or_else(|| format!("--beta must be \"a,b\" (got {raw:?})"))?;
            let a: u64 = a.trim().parse().map_err(|_| format!("invalid a in --beta {raw:?}"))?;
            let b: u64 = b.trim().parse().map_err(|_| format!("invalid b in --beta {raw:?}"))?;
            let prior = BetaParams::new(a, b).map_err(|e| e.to_string())?;
            mc_reflection_check(&prior, args.n_obs, rule, &cfg).map_err(|e| e.to_string())?
        }
        (None, None) => return Err("give either --model or --beta".into()),
        (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
    };
    if json {
        print_json(&report.to_json());
    } else {
        mc_text(&report);
    }
    Ok(if report.overall_pass {
        ExitStatus::Pass
    } else {
        ExitStatus::Violations
    })
}
