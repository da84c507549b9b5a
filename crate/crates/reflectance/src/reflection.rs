//! The reflection engine.
//!
//! The identity under test: averaging an updating rule's posteriors over the
//! prior predictive returns the prior — unconditionally, and conditionally on
//! any positive-probability event when the comparison target is the Bayesian
//! event posterior. Bayes' rule satisfies it everywhere; this module computes
//! both sides exactly, enumerates every event to find violations, and pins
//! down the unique rule compatible with a given event rule.
//!
//! Everything here is exact: a reported gap is a witness, not an estimate.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::Rat;
use crate::model::{BeliefAssignment, Event, FiniteModel, ModelError, Updater};

/// Default cap on exhaustive event enumeration (2^20 − 1 events).
pub const DEFAULT_EVENT_CAP: usize = 20;

/// Largest product outcome space the lookahead builder will construct.
pub const LOOKAHEAD_BUDGET: u128 = 1_000_000;

#[derive(Debug, Error)]
pub enum ReflectionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("updating rule is undefined on positive-mass outcome {outcome:?}")]
    UpdaterUndefined { outcome: String },
    #[error(
        "model has {n} outcomes; exhaustive enumeration of 2^{n} - 1 events exceeds the cap of \
         {cap} outcomes — use the Monte Carlo checker for spaces this large"
    )]
    TooManyOutcomes { n: usize, cap: usize },
    #[error("lookahead would build {size} product outcomes, over the budget of {budget}")]
    LookaheadBudget { size: u128, budget: u128 },
    #[error("lookahead depth must be at least 1")]
    ZeroDepth,
    #[error("predictive entries must be nonnegative and sum to 1 (sum was {sum})")]
    InvalidPredictive { sum: Rat },
    #[error("perturbation delta must be nonzero")]
    ZeroDelta,
    #[error(
        "outcome {outcome:?} has probability zero; a perturbation there is invisible almost surely"
    )]
    InvisiblePerturbation { outcome: String },
    #[error("account index {index} out of range for {size} accounts")]
    AccountOutOfRange { index: usize, size: usize },
}

/// Per-outcome beliefs of an updating rule. `None` marks outcomes of
/// probability zero, where the rule is never consulted.
pub fn updater_beliefs(
    model: &FiniteModel,
    rule: Updater,
) -> Result<Vec<Option<BeliefAssignment>>, ReflectionError> {
    let predictive = model.predictive();
    (0..model.num_outcomes())
        .map(|i| {
            if predictive[i].is_zero() {
                Ok(None)
            } else {
                rule.apply(model, i).map(Some).map_err(|_| {
                    ReflectionError::UpdaterUndefined {
                        outcome: model.outcome_labels()[i].clone(),
                    }
                })
            }
        })
        .collect()
}

/// Conditional expectation of a per-outcome belief table over an event:
/// `Σ_{i∈ξ} Bel(θ|yᵢ) p(yᵢ) / p(ξ)`, summing only over positive-mass
/// outcomes.
///
/// Fails on empty or null events, and when the table is missing a belief at
/// a positive-mass member of the event.
pub fn conditional_expectation(
    model: &FiniteModel,
    beliefs: &[Option<BeliefAssignment>],
    event: &Event,
) -> Result<BeliefAssignment, ReflectionError> {
    let mass = model.event_mass(event)?;
    if mass.is_zero() {
        return Err(ModelError::NullEvent {
            what: format!("event {}", event.describe(model)),
        }
        .into());
    }
    let predictive = model.predictive();
    let mut total = BeliefAssignment::zeros(model.num_accounts());
    for i in event.members() {
        if predictive[i].is_zero() {
            continue;
        }
        let bel = beliefs[i]
            .as_ref()
            .ok_or_else(|| ReflectionError::UpdaterUndefined {
                outcome: model.outcome_labels()[i].clone(),
            })?;
        total = total.add(&bel.scale(&predictive[i]));
    }
    Ok(total.scale(&(Rat::one() / mass)))
}

/// Expected posterior under the prior predictive:
/// `Σᵢ Bel(θ|yᵢ) p(yᵢ)` over positive-mass outcomes.
///
/// Under `Updater::Bayes` this equals the prior exactly, for every valid
/// model — the unconditional reflection identity.
pub fn expected_posterior(
    model: &FiniteModel,
    rule: Updater,
) -> Result<BeliefAssignment, ReflectionError> {
    let beliefs = updater_beliefs(model, rule)?;
    conditional_expectation(model, &beliefs, &Event::full(model.num_outcomes()))
}

/// Expected posterior restricted to the outcomes congruent with an event:
/// `Σ_{i∈ξ} Bel(θ|yᵢ) p(yᵢ) / p(ξ)`.
///
/// Under `Updater::Bayes` this equals `event_posterior(model, ξ)` exactly —
/// the event-conditional reflection identity.
pub fn expected_posterior_given_event(
    model: &FiniteModel,
    rule: Updater,
    event: &Event,
) -> Result<BeliefAssignment, ReflectionError> {
    let beliefs = updater_beliefs(model, rule)?;
    conditional_expectation(model, &beliefs, event)
}

/// One event on which a rule's conditional expectation disagrees with the
/// Bayesian event posterior, with the exact per-account gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolatingEvent {
    pub event: Event,
    /// expected-minus-target, per account; at least one entry is nonzero.
    pub gap: BeliefAssignment,
}

/// Result of exhaustively checking the reflection identity over all events.
#[derive(Debug, Clone)]
pub struct ReflectionReport {
    pub rule: Updater,
    pub holds_unconditional: bool,
    /// Expected posterior minus prior.
    pub unconditional_gap: BeliefAssignment,
    /// Events where the conditional identity fails, in canonical bitmask
    /// order.
    pub violating_events: Vec<ViolatingEvent>,
    pub checked_event_count: u64,
    pub skipped_null_events: u64,
}

impl ReflectionReport {
    /// True when the rule passed unconditionally and on every event.
    pub fn passed(&self) -> bool {
        self.holds_unconditional && self.violating_events.is_empty()
    }

    pub fn summary(&self) -> String {
        let unconditional = if self.holds_unconditional {
            "expected posterior = prior (exact)"
        } else {
            "expected posterior differs from prior"
        };
        format!(
            "rule {}: {}; {} of {} positive-mass events violate the conditional identity; {} null events skipped",
            self.rule,
            unconditional,
            self.violating_events.len(),
            self.checked_event_count,
            self.skipped_null_events
        )
    }

    pub fn to_json(&self, model: &FiniteModel) -> Value {
        json!({
            "rule": self.rule.to_string(),
            "holds_unconditional": self.holds_unconditional,
            "unconditional_gap": self.unconditional_gap.values(),
            "checked_event_count": self.checked_event_count,
            "skipped_null_events": self.skipped_null_events,
            "violating_events": self
                .violating_events
                .iter()
                .map(|v| json!({
                    "event": v.event.labels(model),
                    "gap": v.gap.values(),
                }))
                .collect::<Vec<_>>(),
            "summary": self.summary(),
        })
    }
}

/// Checks the reflection identity for every nonempty positive-mass event of
/// the model, in canonical bitmask order.
///
/// Refuses models with more than `max_outcomes` outcomes; the Monte Carlo
/// checker covers those approximately.
pub fn check_reflection_all_events(
    model: &FiniteModel,
    rule: Updater,
    max_outcomes: usize,
) -> Result<ReflectionReport, ReflectionError> {
    let n = model.num_outcomes();
    if n > max_outcomes || n >= 64 {
        return Err(ReflectionError::TooManyOutcomes {
            n,
            cap: max_outcomes.min(63),
        });
    }
    let predictive = model.predictive();
    let beliefs = updater_beliefs(model, rule)?;
    let prior = model.prior();
    let m = model.num_accounts();

    let expected = conditional_expectation(model, &beliefs, &Event::full(n))?;
    let unconditional_gap = expected.gap(&prior);
    let holds_unconditional = unconditional_gap.is_zero();

    let mut violating_events = Vec::new();
    let mut checked = 0u64;
    let mut skipped = 0u64;
    for mask in 1..(1u64 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut mass = Rat::zero();
        for &i in &members {
            mass = mass + &predictive[i];
        }
        if mass.is_zero() {
            skipped += 1;
            continue;
        }
        checked += 1;
        // expected belief and Bayes event posterior, accumulated per account
        let mut gap_values = Vec::with_capacity(m);
        let mut violated = false;
        for j in 0..m {
            let mut expected_j = Rat::zero();
            let mut event_lik_j = Rat::zero();
            for &i in &members {
                if let Some(bel) = &beliefs[i] {
                    expected_j = expected_j + bel.get(j) * &predictive[i];
                }
                event_lik_j = event_lik_j + model.likelihood(j, i);
            }
            let target_j = model.prior_values()[j].clone() * event_lik_j;
            // compare Σ Bel·p against p(θ)p(ξ|θ) before dividing by p(ξ)
            let gap_j = (expected_j - target_j) / &mass;
            if !gap_j.is_zero() {
                violated = true;
            }
            gap_values.push(gap_j);
        }
        if violated {
            violating_events.push(ViolatingEvent {
                event: Event::from_bitmask(mask),
                gap: BeliefAssignment::new(gap_values),
            });
        }
    }

    Ok(ReflectionReport {
        rule,
        holds_unconditional,
        unconditional_gap,
        violating_events,
        checked_event_count: checked,
        skipped_null_events: skipped,
    })
}

/// Builds the k-step i.i.d. product model: outcomes are length-k sequences,
/// the likelihood of a sequence given an account is the product of the
/// per-step likelihoods, and the prior is unchanged.
pub fn product_model(model: &FiniteModel, depth: u32) -> Result<FiniteModel, ReflectionError> {
    if depth == 0 {
        return Err(ReflectionError::ZeroDepth);
    }
    let n = model.num_outcomes() as u128;
    let size = n
        .checked_pow(depth)
        .filter(|&s| s <= LOOKAHEAD_BUDGET)
        .ok_or(ReflectionError::LookaheadBudget {
            size: n.saturating_pow(depth),
            budget: LOOKAHEAD_BUDGET,
        })?;

    let m = model.num_accounts();
    let mut labels = Vec::with_capacity(size as usize);
    let mut likelihood: Vec<Vec<Rat>> = vec![Vec::with_capacity(size as usize); m];
    // odometer over the n^k index sequences, most significant step first
    let mut steps = vec![0usize; depth as usize];
    loop {
        labels.push(
            steps
                .iter()
                .map(|&i| model.outcome_labels()[i].as_str())
                .collect::<Vec<_>>()
                .join("·"),
        );
        for (j, row) in likelihood.iter_mut().enumerate() {
            row.push(
                steps
                    .iter()
                    .fold(Rat::one(), |acc, &i| acc * model.likelihood(j, i)),
            );
        }
        let mut pos = depth as usize;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            steps[pos] += 1;
            if steps[pos] < model.num_outcomes() {
                break;
            }
            steps[pos] = 0;
        }
        if steps.iter().all(|&i| i == 0) {
            break;
        }
    }

    FiniteModel::new(
        model.param_labels().to_vec(),
        labels,
        model.prior_values().to_vec(),
        likelihood,
    )
    .map_err(Into::into)
}

/// Expected Bayes posterior over the k-step product space. Equals the prior
/// exactly for every depth — the tower property of the posterior martingale.
pub fn lookahead_reflection(
    model: &FiniteModel,
    depth: u32,
) -> Result<BeliefAssignment, ReflectionError> {
    let product = product_model(model, depth)?;
    expected_posterior(&product, Updater::Bayes)
}

/// Outcome of pinning an updating rule from its behaviour on events.
#[derive(Debug, Clone)]
pub struct UniquenessSolution {
    /// Forced beliefs, one per positive-mass outcome.
    pub pinned: BTreeMap<usize, BeliefAssignment>,
    /// Outcomes of probability zero, where the rule is unconstrained.
    pub free_outcomes: BTreeSet<usize>,
    pub consistent: bool,
    /// A composite event whose constraint the pinned values fail, when
    /// `consistent` is false.
    pub witness: Option<ViolatingEvent>,
}

impl UniquenessSolution {
    pub fn summary(&self, model: &FiniteModel) -> String {
        match &self.witness {
            None => format!(
                "{} outcomes pinned by singleton events, {} free (probability zero); every composite-event constraint holds",
                self.pinned.len(),
                self.free_outcomes.len()
            ),
            Some(w) => format!(
                "{} outcomes pinned by singleton events, {} free (probability zero); constraint violated on event {} with gap {}",
                self.pinned.len(),
                self.free_outcomes.len(),
                w.event.describe(model),
                w.gap
            ),
        }
    }

    pub fn to_json(&self, model: &FiniteModel) -> Value {
        let mut pinned = serde_json::Map::new();
        for (&i, bel) in &self.pinned {
            pinned.insert(
                model.outcome_labels()[i].clone(),
                json!(bel.values()),
            );
        }
        json!({
            "pinned": pinned,
            "free_outcomes": self
                .free_outcomes
                .iter()
                .map(|&i| model.outcome_labels()[i].clone())
                .collect::<Vec<_>>(),
            "consistent": self.consistent,
            "witness": self.witness.as_ref().map(|w| json!({
                "event": w.event.labels(model),
                "gap": w.gap.values(),
            })),
            "summary": self.summary(model),
        })
    }
}

/// Recovers the unique updating rule compatible with an event rule.
///
/// Singleton events force the rule's value on every positive-mass outcome;
/// every composite positive-mass event is then verified against the pinned
/// values: `Σ_{i∈ξ} Bel(θ|yᵢ) p(yᵢ) = rule(ξ) · p(ξ)` per account. Outcomes
/// with probability zero are reported free — on those the rule can be
/// anything without any event noticing.
pub fn solve_unique_updater(
    predictive: &[Rat],
    mut event_rule: impl FnMut(&Event) -> Result<BeliefAssignment, ReflectionError>,
    max_outcomes: usize,
) -> Result<UniquenessSolution, ReflectionError> {
    let n = predictive.len();
    if n > max_outcomes || n >= 64 {
        return Err(ReflectionError::TooManyOutcomes {
            n,
            cap: max_outcomes.min(63),
        });
    }
    let sum: Rat = predictive.iter().cloned().sum();
    if !sum.is_one() || predictive.iter().any(Rat::is_negative) {
        return Err(ReflectionError::InvalidPredictive { sum });
    }

    let mut pinned = BTreeMap::new();
    let mut free_outcomes = BTreeSet::new();
    for (i, p) in predictive.iter().enumerate() {
        if p.is_zero() {
            free_outcomes.insert(i);
        } else {
            pinned.insert(i, event_rule(&Event::singleton(i))?);
        }
    }

    let mut witness = None;
    'events: for mask in 1..(1u64 << n) {
        let event = Event::from_bitmask(mask);
        let mass: Rat = event.members().map(|i| predictive[i].clone()).sum();
        if mass.is_zero() {
            continue;
        }
        let target = event_rule(&event)?;
        let mut lhs = BeliefAssignment::zeros(target.len());
        for i in event.members() {
            if let Some(bel) = pinned.get(&i) {
                lhs = lhs.add(&bel.scale(&predictive[i]));
            }
        }
        let gap = lhs.scale(&(Rat::one() / &mass)).gap(&target);
        if !gap.is_zero() {
            witness = Some(ViolatingEvent { event, gap });
            break 'events;
        }
    }

    Ok(UniquenessSolution {
        pinned,
        free_outcomes,
        consistent: witness.is_none(),
        witness,
    })
}

/// Checks a pointwise-specified updater against an event rule on every
/// positive-mass event, in canonical order.
///
/// The updater's beliefs at positive-mass outcomes become the pinned values;
/// the first event whose conditional expectation disagrees with the rule
/// becomes the witness. For the Bayes belief table against the Bayes event
/// rule this is consistent; any single-point deviation is caught at the
/// deviating outcome's singleton.
pub fn verify_updater_against_rule(
    model: &FiniteModel,
    beliefs: &[Option<BeliefAssignment>],
    mut event_rule: impl FnMut(&Event) -> Result<BeliefAssignment, ReflectionError>,
    max_outcomes: usize,
) -> Result<UniquenessSolution, ReflectionError> {
    let n = model.num_outcomes();
    if n > max_outcomes || n >= 64 {
        return Err(ReflectionError::TooManyOutcomes {
            n,
            cap: max_outcomes.min(63),
        });
    }
    let predictive = model.predictive();
    let mut pinned = BTreeMap::new();
    let mut free_outcomes = BTreeSet::new();
    for (i, p) in predictive.iter().enumerate() {
        if p.is_zero() {
            free_outcomes.insert(i);
        } else {
            let bel = beliefs[i]
                .as_ref()
                .ok_or_else(|| ReflectionError::UpdaterUndefined {
                    outcome: model.outcome_labels()[i].clone(),
                })?;
            pinned.insert(i, bel.clone());
        }
    }

    let mut witness = None;
    for mask in 1..(1u64 << n) {
        let event = Event::from_bitmask(mask);
        let mass: Rat = event.members().map(|i| predictive[i].clone()).sum();
        if mass.is_zero() {
            continue;
        }
        let expected = conditional_expectation(model, beliefs, &event)?;
        let target = event_rule(&event)?;
        let gap = expected.gap(&target);
        if !gap.is_zero() {
            witness = Some(ViolatingEvent { event, gap });
            break;
        }
    }

    Ok(UniquenessSolution {
        pinned,
        free_outcomes,
        consistent: witness.is_none(),
        witness,
    })
}

/// A single-point deviation from Bayes' rule together with an event that
/// exposes it.
#[derive(Debug, Clone)]
pub struct PerturbationWitness {
    pub event: Event,
    pub account: usize,
    /// Conditional-expectation gap on the witness event; equals
    /// `delta · p(yᵢ) / p(ξ)`.
    pub gap: Rat,
}

impl PerturbationWitness {
    pub fn summary(&self, model: &FiniteModel) -> String {
        format!(
            "reflection violated on event {} at account {:?}: gap {} ≈ {:.4}",
            self.event.describe(model),
            model.param_labels()[self.account],
            self.gap,
            self.gap.to_f64()
        )
    }

    pub fn to_json(&self, model: &FiniteModel) -> Value {
        json!({
            "event": self.event.labels(model),
            "account": model.param_labels()[self.account],
            "gap": self.gap,
            "summary": self.summary(model),
        })
    }
}

/// The Bayes belief table with a single value nudged:
/// `Bel'(θ_account | y_outcome) += delta`. The deviation must be nonzero and
/// sit on a positive-mass outcome, otherwise no event can ever see it.
pub fn perturbed_bayes_beliefs(
    model: &FiniteModel,
    outcome: usize,
    account: usize,
    delta: &Rat,
) -> Result<Vec<Option<BeliefAssignment>>, ReflectionError> {
    if account >= model.num_accounts() {
        return Err(ReflectionError::AccountOutOfRange {
            index: account,
            size: model.num_accounts(),
        });
    }
    if outcome >= model.num_outcomes() {
        return Err(ModelError::OutcomeOutOfRange {
            index: outcome,
            size: model.num_outcomes(),
        }
        .into());
    }
    if delta.is_zero() {
        return Err(ReflectionError::ZeroDelta);
    }
    if model.predictive()[outcome].is_zero() {
        return Err(ReflectionError::InvisiblePerturbation {
            outcome: model.outcome_labels()[outcome].clone(),
        });
    }
    let mut beliefs = updater_beliefs(model, Updater::Bayes)?;
    let bel = beliefs[outcome].as_mut().expect("outcome has positive mass");
    bel.set(account, bel.get(account) + delta);
    Ok(beliefs)
}

/// Builds `Bel' = Bayes posterior except Bel'(θ_account | y_outcome) += delta`
/// and returns the singleton event `{y_outcome}` on which the reflection
/// constraint fails, with the exact gap (which on the singleton is `delta`
/// itself).
pub fn perturb_and_detect(
    model: &FiniteModel,
    outcome: usize,
    account: usize,
    delta: &Rat,
) -> Result<PerturbationWitness, ReflectionError> {
    let beliefs = perturbed_bayes_beliefs(model, outcome, account, delta)?;
    let event = Event::singleton(outcome);
    let expected = conditional_expectation(model, &beliefs, &event)?;
    let target = model.event_posterior(&event)?;
    let gap = expected.gap(&target);
    debug_assert!(!gap.get(account).is_zero());
    Ok(PerturbationWitness {
        event,
        account,
        gap: gap.get(account).clone(),
    })
}

/// Per-account gap of the same single-point perturbation evaluated on an
/// arbitrary query event: zero everywhere except `delta · p(yᵢ) / p(ξ)` at
/// the perturbed account when the event contains the perturbed outcome.
pub fn perturbed_gap_on_event(
    model: &FiniteModel,
    outcome: usize,
    account: usize,
    delta: &Rat,
    event: &Event,
) -> Result<BeliefAssignment, ReflectionError> {
    let beliefs = perturbed_bayes_beliefs(model, outcome, account, delta)?;
    let expected = conditional_expectation(model, &beliefs, event)?;
    let target = model.event_posterior(event)?;
    Ok(expected.gap(&target))
}
