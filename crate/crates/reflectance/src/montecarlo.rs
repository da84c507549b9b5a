//! Sampling-based reflection checks, for spaces too large to enumerate and
//! for a grid-discretized view of the continuous identity.
//!
//! All floating-point arithmetic is confined to this module; estimates never
//! feed back into exact-engine verdicts. The generator is ChaCha8, a
//! counter-based stream cipher: replication `r` reads stream `r` of the
//! seed-keyed cipher, so the aggregate is independent of evaluation order
//! and identical across platforms and runs for a given seed.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::conjugate::{BetaParams, TrialRecord};
use crate::exact::Rat;
use crate::model::{FiniteModel, Updater};
use crate::reflection::{updater_beliefs, ReflectionError};

#[derive(Debug, Error)]
pub enum McError {
    #[error("invalid Monte Carlo config: {0}")]
    Config(String),
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
}

/// Configuration for a Monte Carlo check. `grid` holds the CDF evaluation
/// points for the conjugate check; the finite-model check compares per
/// account instead and ignores it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McConfig {
    pub seed: u64,
    pub replications: u64,
    /// Strictly increasing points in (0, 1).
    pub grid: Vec<Rat>,
    /// Tolerance multiplier: pass iff |estimate − reference| ≤ sigma_level
    /// standard errors.
    pub sigma_level: u32,
}

impl McConfig {
    pub fn new(seed: u64) -> Self {
        McConfig {
            seed,
            replications: 10_000,
            grid: vec![Rat::ratio(1, 4), Rat::ratio(1, 2), Rat::ratio(3, 4)],
            sigma_level: 3,
        }
    }

    pub fn validate(&self) -> Result<(), McError> {
        if self.replications < 100 {
            return Err(McError::Config(format!(
                "replications must be at least 100 (got {})",
                self.replications
            )));
        }
        if self.sigma_level == 0 {
            return Err(McError::Config("sigma level must be positive".into()));
        }
        for (k, x) in self.grid.iter().enumerate() {
            if !x.is_positive() || !(Rat::one() - x).is_positive() {
                return Err(McError::Config(format!(
                    "grid[{k}] = {x} is outside (0, 1)"
                )));
            }
            if k > 0 && !(x - &self.grid[k - 1]).is_positive() {
                return Err(McError::Config(format!(
                    "grid must be strictly increasing (grid[{k}] = {x})"
                )));
            }
        }
        Ok(())
    }
}

/// One comparison line of a Monte Carlo report.
#[derive(Debug, Clone, PartialEq)]
pub struct McRow {
    pub label: String,
    pub estimate: f64,
    pub reference: f64,
    /// Zero only when every replication produced the identical value.
    pub standard_error: f64,
    pub pass: bool,
}

/// Result of a Monte Carlo reflection check. Deterministic: the same seed
/// and config produce a byte-identical report.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub seed: u64,
    pub replications: u64,
    pub sigma_level: u32,
    pub rows: Vec<McRow>,
    pub overall_pass: bool,
}

/// 17 significant digits, enough to reconstruct the double exactly.
fn decimal17(x: f64) -> String {
    format!("{x:.16e}")
}

impl McReport {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "replications": self.replications,
            "sigma_level": self.sigma_level,
            "rows": self.rows.iter().map(|row| json!({
                "label": row.label,
                "estimate": decimal17(row.estimate),
                "reference": decimal17(row.reference),
                "standard_error": decimal17(row.standard_error),
                "pass": row.pass,
            })).collect::<Vec<_>>(),
            "overall_pass": self.overall_pass,
        })
    }

    pub fn summary(&self) -> String {
        format!(
            "{} of {} comparisons within {}σ; overall {}",
            self.rows.iter().filter(|r| r.pass).count(),
            self.rows.len(),
            self.sigma_level,
            if self.overall_pass { "PASS" } else { "FAIL" }
        )
    }
}

fn replication_rng(seed: u64, replication: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication);
    rng
}

fn unit_uniform(rng: &mut ChaCha8Rng) -> f64 {
    // 53 random mantissa bits in [0, 1)
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Beta(a, b) with integer parameters via order statistics: the a-th
/// smallest of a+b−1 uniforms.
fn sample_beta(rng: &mut ChaCha8Rng, a: u64, b: u64) -> f64 {
    let mut draws: Vec<f64> = (0..a + b - 1).map(|_| unit_uniform(rng)).collect();
    draws.sort_by(f64::total_cmp);
    draws[(a - 1) as usize]
}

fn sample_binomial(rng: &mut ChaCha8Rng, n: u64, rate: f64) -> u64 {
    (0..n).filter(|_| unit_uniform(rng) < rate).count() as u64
}

struct Accumulator {
    sums: Vec<f64>,
    sum_squares: Vec<f64>,
    mins: Vec<f64>,
    maxs: Vec<f64>,
    count: u64,
}

impl Accumulator {
    fn new(width: usize) -> Self {
        Accumulator {
            sums: vec![0.0; width],
            sum_squares: vec![0.0; width],
            mins: vec![f64::INFINITY; width],
            maxs: vec![f64::NEG_INFINITY; width],
            count: 0,
        }
    }

    fn record(&mut self, values: impl Iterator<Item = f64>) {
        for (slot, v) in values.enumerate() {
            self.sums[slot] += v;
            self.sum_squares[slot] += v * v;
            self.mins[slot] = self.mins[slot].min(v);
            self.maxs[slot] = self.maxs[slot].max(v);
        }
        self.count += 1;
    }

    fn row(&self, slot: usize, label: String, reference: f64, sigma_level: u32) -> McRow {
        let n = self.count as f64;
        // a zero-range sample means every replication produced the same
        // value; report it exactly rather than through the summation, so a
        // degenerate rule is not failed on accumulated rounding
        let (estimate, variance) = if self.mins[slot] == self.maxs[slot] {
            (self.mins[slot], 0.0)
        } else {
            let mean = self.sums[slot] / n;
            let var = ((self.sum_squares[slot] - n * mean * mean) / (n - 1.0)).max(0.0);
            (mean, var)
        };
        let standard_error = (variance / n).sqrt();
        let pass = (estimate - reference).abs() <= sigma_level as f64 * standard_error;
        McRow {
            label,
            estimate,
            reference,
            standard_error,
            pass,
        }
    }
}

/// Monte Carlo check of the conjugate-case reflection identity.
///
/// Each replication draws θ from the beta prior and a success count from
/// `n_obs` binomial trials, updates the beta distribution under the given
/// rule (counts scaled by the integer temperature for `Tempered`), and
/// evaluates the updated CDF at every grid point. The replication average
/// estimates the expected posterior CDF, which under Bayes equals the prior
/// CDF pointwise; the check passes where the estimate sits within
/// `sigma_level` standard errors of that exact reference.
pub fn mc_reflection_check(
    prior: &BetaParams,
    n_obs: u64,
    rule: Updater,
    cfg: &McConfig,
) -> Result<McReport, McError> {
    cfg.validate()?;
    if n_obs == 0 {
        return Err(McError::Config(
            "n_obs must be at least 1 per replication".into(),
        ));
    }
    if cfg.grid.is_empty() {
        return Err(McError::Config(
            "grid must contain at least one CDF evaluation point".into(),
        ));
    }
    let temperature = match rule {
        Updater::Bayes => 1,
        Updater::Tempered(t) => t as u64,
        Updater::Noop => 0,
    };

    // exact CDF of every reachable posterior, converted to f64 once
    let cdf_by_count: Vec<Vec<f64>> = (0..=n_obs)
        .map(|s| {
            let scaled = TrialRecord::new(temperature * s, temperature * (n_obs - s));
            let posterior = prior.posterior(&scaled);
            cfg.grid.iter().map(|x| posterior.cdf(x).to_f64()).collect()
        })
        .collect();
    let references: Vec<f64> = cfg.grid.iter().map(|x| prior.cdf(x).to_f64()).collect();

    let mut acc = Accumulator::new(cfg.grid.len());
    for replication in 0..cfg.replications {
        let mut rng = replication_rng(cfg.seed, replication);
        let theta = sample_beta(&mut rng, prior.a(), prior.b());
        let successes = sample_binomial(&mut rng, n_obs, theta);
        acc.record(cdf_by_count[successes as usize].iter().copied());
    }

    let rows: Vec<McRow> = references
        .iter()
        .enumerate()
        .map(|(k, &reference)| {
            acc.row(
                k,
                format!("θ ≤ {}", cfg.grid[k]),
                reference,
                cfg.sigma_level,
            )
        })
        .collect();
    let overall_pass = rows.iter().all(|r| r.pass);
    Ok(McReport {
        seed: cfg.seed,
        replications: cfg.replications,
        sigma_level: cfg.sigma_level,
        rows,
        overall_pass,
    })
}

/// Monte Carlo check of the finite-model reflection identity: sample
/// outcomes from the exact predictive, average the rule's updated beliefs,
/// and compare per account against the prior with a CLT tolerance.
pub fn mc_reflection_check_finite(
    model: &FiniteModel,
    rule: Updater,
    cfg: &McConfig,
) -> Result<McReport, McError> {
    cfg.validate()?;
    let beliefs = updater_beliefs(model, rule)?;
    let belief_table: Vec<Option<Vec<f64>>> = beliefs
        .iter()
        .map(|bel| bel.as_ref().map(|b| b.values().iter().map(Rat::to_f64).collect()))
        .collect();
    let predictive = model.predictive();
    let mut cumulative = Vec::with_capacity(predictive.len());
    let mut running = 0.0;
    for p in &predictive {
        running += p.to_f64();
        cumulative.push(running);
    }
    let last_positive = predictive
        .iter()
        .rposition(|p| !p.is_zero())
        .expect("predictive sums to 1");

    let m = model.num_accounts();
    let mut acc = Accumulator::new(m);
    for replication in 0..cfg.replications {
        let mut rng = replication_rng(cfg.seed, replication);
        let u = unit_uniform(&mut rng);
        let outcome = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(last_positive);
        let values = belief_table[outcome]
            .as_ref()
            .expect("sampled outcome has positive mass");
        acc.record(values.iter().copied());
    }

    let prior = model.prior();
    let rows: Vec<McRow> = (0..m)
        .map(|j| {
            acc.row(
                j,
                model.param_labels()[j].clone(),
                prior.get(j).to_f64(),
                cfg.sigma_level,
            )
        })
        .collect();
    let overall_pass = rows.iter().all(|r| r.pass);
    Ok(McReport {
        seed: cfg.seed,
        replications: cfg.replications,
        sigma_level: cfg.sigma_level,
        rows,
        overall_pass,
    })
}
