//! Finite Bayesian models: accounts θ, outcomes y, prior, likelihood table,
//! events over the outcome space, and pluggable updating rules.
//!
//! A [`FiniteModel`] is validated at construction: the prior and every
//! likelihood row must sum to exactly 1. The loader rejects rows that do not,
//! rather than renormalizing — silently repairing input would defeat the
//! point of a verification tool.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::exact::{ParseRatError, Rat};

/// Errors from model construction, file loading, and conditioning.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model must have at least one account")]
    NoAccounts,
    #[error("model must have at least one outcome")]
    NoOutcomes,
    #[error("duplicate {kind} label {label:?}")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("prior has {got} entries but there are {expected} accounts")]
    PriorLength { got: usize, expected: usize },
    #[error("likelihood has {got} rows but there are {expected} accounts")]
    LikelihoodRows { got: usize, expected: usize },
    #[error("likelihood row {row} has {got} entries but there are {expected} outcomes")]
    LikelihoodRowLength {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("{field} is negative ({value})")]
    NegativeEntry { field: String, value: Rat },
    #[error("prior sums to {sum}, expected exactly 1")]
    PriorSum { sum: Rat },
    #[error("likelihood row {row} ({label:?}) sums to {sum}, expected exactly 1")]
    RowSum { row: usize, label: String, sum: Rat },
    #[error("{field}: {source}")]
    Field {
        field: String,
        source: ParseRatError,
    },
    #[error("model file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown outcome label {0:?}")]
    UnknownOutcome(String),
    #[error("unknown account label {0:?}")]
    UnknownAccount(String),
    #[error("outcome index {index} out of range for {size} outcomes")]
    OutcomeOutOfRange { index: usize, size: usize },
    #[error("event is empty; conditioning requires at least one outcome")]
    EmptyEvent,
    #[error("conditioning on a null event: {what} has probability zero")]
    NullEvent { what: String },
    #[error("tempered normalizer is zero at outcome {outcome:?}")]
    ZeroNormalizer { outcome: String },
}

/// A finite Bayesian model: `m` accounts (hypotheses) over `n` outcomes.
///
/// `likelihood[j][i]` is p(yᵢ | θⱼ). All rows and the prior are exact
/// distributions. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    param_labels: Vec<String>,
    outcome_labels: Vec<String>,
    prior: Vec<Rat>,
    likelihood: Vec<Vec<Rat>>,
}

impl FiniteModel {
    pub fn new(
        param_labels: Vec<String>,
        outcome_labels: Vec<String>,
        prior: Vec<Rat>,
        likelihood: Vec<Vec<Rat>>,
    ) -> Result<Self, ModelError> {
        let m = param_labels.len();
        let n = outcome_labels.len();
        if m == 0 {
            return Err(ModelError::NoAccounts);
        }
        if n == 0 {
            return Err(ModelError::NoOutcomes);
        }
        check_unique("account", &param_labels)?;
        check_unique("outcome", &outcome_labels)?;
        if prior.len() != m {
            return Err(ModelError::PriorLength {
                got: prior.len(),
                expected: m,
            });
        }
        if likelihood.len() != m {
            return Err(ModelError::LikelihoodRows {
                got: likelihood.len(),
                expected: m,
            });
        }
        for (j, row) in likelihood.iter().enumerate() {
            if row.len() != n {
                return Err(ModelError::LikelihoodRowLength {
                    row: j,
                    got: row.len(),
                    expected: n,
                });
            }
        }
        for (j, p) in prior.iter().enumerate() {
            if p.is_negative() {
                return Err(ModelError::NegativeEntry {
                    field: format!("prior[{j}]"),
                    value: p.clone(),
                });
            }
        }
        let prior_sum: Rat = prior.iter().cloned().sum();
        if !prior_sum.is_one() {
            return Err(ModelError::PriorSum { sum: prior_sum });
        }
        for (j, row) in likelihood.iter().enumerate() {
            for (i, p) in row.iter().enumerate() {
                if p.is_negative() {
                    return Err(ModelError::NegativeEntry {
                        field: format!("likelihood[{j}][{i}]"),
                        value: p.clone(),
                    });
                }
            }
            let row_sum: Rat = row.iter().cloned().sum();
            if !row_sum.is_one() {
                return Err(ModelError::RowSum {
                    row: j,
                    label: param_labels[j].clone(),
                    sum: row_sum,
                });
            }
        }
        Ok(FiniteModel {
            param_labels,
            outcome_labels,
            prior,
            likelihood,
        })
    }

    /// Loads a model from its JSON file form:
    /// `{"params": [...], "outcomes": [...], "prior": ["1/2", ...],
    /// "likelihood": [["num/den", ...], ...]}`.
    ///
    /// Rational strings only; a decimal literal is rejected with a
    /// diagnostic naming the offending field.
    pub fn from_json_str(s: &str) -> Result<Self, ModelError> {
        #[derive(Deserialize)]
        struct ModelFile {
            params: Vec<String>,
            outcomes: Vec<String>,
            prior: Vec<String>,
            likelihood: Vec<Vec<String>>,
        }
        let file: ModelFile = serde_json::from_str(s)?;
        let parse = |field: String, raw: &str| -> Result<Rat, ModelError> {
            Rat::from_str(raw).map_err(|source| ModelError::Field { field, source })
        };
        let prior = file
            .prior
            .iter()
            .enumerate()
            .map(|(j, raw)| parse(format!("prior[{j}]"), raw))
            .collect::<Result<Vec<_>, _>>()?;
        let likelihood = file
            .likelihood
            .iter()
            .enumerate()
            .map(|(j, row)| {
                row.iter()
                    .enumerate()
                    .map(|(i, raw)| parse(format!("likelihood[{j}][{i}]"), raw))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteModel::new(file.params, file.outcomes, prior, likelihood)
    }

    pub fn num_accounts(&self) -> usize {
        self.param_labels.len()
    }

    pub fn num_outcomes(&self) -> usize {
        self.outcome_labels.len()
    }

    pub fn param_labels(&self) -> &[String] {
        &self.param_labels
    }

    pub fn outcome_labels(&self) -> &[String] {
        &self.outcome_labels
    }

    pub fn prior(&self) -> BeliefAssignment {
        BeliefAssignment::new(self.prior.clone())
    }

    pub fn prior_values(&self) -> &[Rat] {
        &self.prior
    }

    pub fn likelihood(&self, account: usize, outcome: usize) -> &Rat {
        &self.likelihood[account][outcome]
    }

    pub fn outcome_index(&self, label: &str) -> Result<usize, ModelError> {
        self.outcome_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| ModelError::UnknownOutcome(label.to_string()))
    }

    pub fn param_index(&self, label: &str) -> Result<usize, ModelError> {
        self.param_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| ModelError::UnknownAccount(label.to_string()))
    }

    /// Prior predictive distribution: p(yᵢ) = Σⱼ p(θⱼ) p(yᵢ|θⱼ).
    ///
    /// Entries sum to exactly 1 for any valid model.
    pub fn predictive(&self) -> Vec<Rat> {
        (0..self.num_outcomes())
            .map(|i| {
                self.prior
                    .iter()
                    .zip(&self.likelihood)
                    .map(|(p, row)| p * &row[i])
                    .sum()
            })
            .collect()
    }

    /// Probability of an event: p(ξ) = Σ_{i∈ξ} p(yᵢ).
    pub fn event_mass(&self, event: &Event) -> Result<Rat, ModelError> {
        event.check_in(self)?;
        let predictive = self.predictive();
        Ok(event.members().map(|i| predictive[i].clone()).sum())
    }

    /// Likelihood of an event under one account: p(ξ|θⱼ) = Σ_{i∈ξ} p(yᵢ|θⱼ).
    pub fn event_likelihood(&self, event: &Event, account: usize) -> Result<Rat, ModelError> {
        event.check_in(self)?;
        Ok(event
            .members()
            .map(|i| self.likelihood[account][i].clone())
            .sum())
    }

    /// Bayesian update on an event: p(θⱼ|ξ) = p(θⱼ) p(ξ|θⱼ) / p(ξ).
    pub fn event_posterior(&self, event: &Event) -> Result<BeliefAssignment, ModelError> {
        event.check_in(self)?;
        let mass = self.event_mass(event)?;
        if mass.is_zero() {
            return Err(ModelError::NullEvent {
                what: format!("event {}", event.describe(self)),
            });
        }
        let values = (0..self.num_accounts())
            .map(|j| {
                let lik = self.event_likelihood(event, j)?;
                Ok(&self.prior[j] * &lik / &mass)
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        Ok(BeliefAssignment::new(values))
    }
}

fn check_unique(kind: &'static str, labels: &[String]) -> Result<(), ModelError> {
    let mut seen = BTreeSet::new();
    for label in labels {
        if !seen.insert(label) {
            return Err(ModelError::DuplicateLabel {
                kind,
                label: label.clone(),
            });
        }
    }
    Ok(())
}

/// A subset of outcome indices — the thing one conditions on.
///
/// May be constructed empty as a transient value, but every conditioning
/// operation rejects an empty event.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Event {
    members: BTreeSet<usize>,
}

impl Event {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        Event {
            members: members.into_iter().collect(),
        }
    }

    pub fn singleton(index: usize) -> Self {
        Event::new([index])
    }

    /// The sure event over an `n`-outcome space.
    pub fn full(n: usize) -> Self {
        Event::new(0..n)
    }

    /// Decodes a bitmask over outcome indices; bit i set means yᵢ ∈ ξ.
    /// Masks `1..2^n` enumerate the nonempty events in canonical order.
    pub fn from_bitmask(mask: u64) -> Self {
        Event::new((0..64).filter(|i| mask >> i & 1 == 1).map(|i| i as usize))
    }

    pub fn bitmask(&self) -> u64 {
        self.members.iter().fold(0, |acc, &i| acc | 1 << i)
    }

    pub fn from_labels(model: &FiniteModel, labels: &[String]) -> Result<Self, ModelError> {
        let mut members = BTreeSet::new();
        for label in labels {
            members.insert(model.outcome_index(label)?);
        }
        Ok(Event { members })
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(&index)
    }

    /// Complement within an `n`-outcome space.
    pub fn complement(&self, n: usize) -> Event {
        Event::new((0..n).filter(|i| !self.members.contains(i)))
    }

    pub fn labels(&self, model: &FiniteModel) -> Vec<String> {
        self.members()
            .map(|i| model.outcome_labels()[i].clone())
            .collect()
    }

    pub fn describe(&self, model: &FiniteModel) -> String {
        format!("{{{}}}", self.labels(model).join(", "))
    }

    fn check_in(&self, model: &FiniteModel) -> Result<(), ModelError> {
        if self.members.is_empty() {
            return Err(ModelError::EmptyEvent);
        }
        let n = model.num_outcomes();
        if let Some(&max) = self.members.last() {
            if max >= n {
                return Err(ModelError::OutcomeOutOfRange {
                    index: max,
                    size: n,
                });
            }
        }
        Ok(())
    }
}

/// One value per account. No positivity or normalization constraint: any
/// real-valued assignment is a legal belief, which is what makes the
/// uniqueness machinery non-trivial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BeliefAssignment {
    values: Vec<Rat>,
}

impl BeliefAssignment {
    pub fn new(values: Vec<Rat>) -> Self {
        BeliefAssignment { values }
    }

    pub fn zeros(len: usize) -> Self {
        BeliefAssignment::new(vec![Rat::zero(); len])
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, account: usize) -> &Rat {
        &self.values[account]
    }

    pub fn set(&mut self, account: usize, value: Rat) {
        self.values[account] = value;
    }

    /// Componentwise difference `self − other`.
    pub fn gap(&self, other: &BeliefAssignment) -> BeliefAssignment {
        assert_eq!(self.len(), other.len(), "belief length mismatch");
        BeliefAssignment::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, factor: &Rat) -> BeliefAssignment {
        BeliefAssignment::new(self.values.iter().map(|v| v * factor).collect())
    }

    pub fn add(&self, other: &BeliefAssignment) -> BeliefAssignment {
        assert_eq!(self.len(), other.len(), "belief length mismatch");
        BeliefAssignment::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rat::is_zero)
    }

    pub fn sum(&self) -> Rat {
        self.values.iter().cloned().sum()
    }
}

impl fmt::Display for BeliefAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A named updating rule mapping (model, observed outcome) to a belief
/// assignment over accounts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Updater {
    /// Bayes' rule: values ∝ prior · likelihood.
    Bayes,
    /// Likelihood raised to an integer temperature before normalizing.
    /// `Tempered(1)` coincides with `Bayes`; `Tempered(0)` with `Noop`.
    Tempered(u32),
    /// Returns the prior unchanged.
    Noop,
}

impl Updater {
    /// Updated beliefs after observing outcome `i`.
    ///
    /// Fails with a null-event error when the normalizer is zero, i.e. when
    /// conditioning on an outcome of probability zero.
    pub fn apply(&self, model: &FiniteModel, outcome: usize) -> Result<BeliefAssignment, ModelError> {
        if outcome >= model.num_outcomes() {
            return Err(ModelError::OutcomeOutOfRange {
                index: outcome,
                size: model.num_outcomes(),
            });
        }
        match self {
            Updater::Noop => Ok(model.prior()),
            Updater::Bayes => {
                let weights: Vec<Rat> = (0..model.num_accounts())
                    .map(|j| &model.prior_values()[j] * model.likelihood(j, outcome))
                    .collect();
                let normalizer: Rat = weights.iter().cloned().sum();
                if normalizer.is_zero() {
                    return Err(ModelError::NullEvent {
                        what: format!("outcome {:?}", model.outcome_labels()[outcome]),
                    });
                }
                Ok(BeliefAssignment::new(
                    weights.into_iter().map(|w| w / &normalizer).collect(),
                ))
            }
            Updater::Tempered(t) => {
                let weights: Vec<Rat> = (0..model.num_accounts())
                    .map(|j| {
                        &model.prior_values()[j] * &model.likelihood(j, outcome).pow(*t)
                    })
                    .collect();
                let normalizer: Rat = weights.iter().cloned().sum();
                if normalizer.is_zero() {
                    return Err(ModelError::ZeroNormalizer {
                        outcome: model.outcome_labels()[outcome].clone(),
                    });
                }
                Ok(BeliefAssignment::new(
                    weights.into_iter().map(|w| w / &normalizer).collect(),
                ))
            }
        }
    }
}

impl fmt::Display for Updater {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Updater::Bayes => write!(f, "bayes"),
            Updater::Tempered(t) => write!(f, "tempered:{t}"),
            Updater::Noop => write!(f, "noop"),
        }
    }
}

impl FromStr for Updater {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bayes" => Ok(Updater::Bayes),
            "noop" => Ok(Updater::Noop),
            other => match other.strip_prefix("tempered:") {
                Some(t) => t
                    .parse::<u32>()
                    .map(Updater::Tempered)
                    .map_err(|_| format!("invalid temperature {t:?}")),
                None => Err(format!(
                    "unknown rule {other:?}; expected bayes, noop, or tempered:<t>"
                )),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelgen::random_model;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> Rat {
        Rat::ratio(n, d)
    }

    fn rv(pairs: &[(i64, i64)]) -> Vec<Rat> {
        pairs.iter().map(|&(n, d)| r(n, d)).collect()
    }

    /// prior {1/3, 2/3}, rows {1/2, 1/2}, {3/4, 1/4}
    pub(crate) fn two_outcome_model() -> FiniteModel {
        FiniteModel::new(
            vec!["theta1".into(), "theta2".into()],
            vec!["y1".into(), "y2".into()],
            rv(&[(1, 3), (2, 3)]),
            vec![rv(&[(1, 2), (1, 2)]), rv(&[(3, 4), (1, 4)])],
        )
        .unwrap()
    }

    #[test]
    fn rejects_invalid_models() {
        let err = FiniteModel::new(
            vec!["a".into()],
            vec!["y".into()],
            rv(&[(1, 2)]),
            vec![rv(&[(1, 1)])],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::PriorSum { .. }));

        let err = FiniteModel::new(
            vec!["a".into()],
            vec!["y1".into(), "y2".into()],
            rv(&[(1, 1)]),
            vec![rv(&[(1, 2), (1, 3)])],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::RowSum { .. }));

        let err = FiniteModel::new(
            vec!["a".into(), "a".into()],
            vec!["y1".into(), "y2".into()],
            rv(&[(1, 2), (1, 2)]),
            vec![rv(&[(1, 2), (1, 2)]), rv(&[(1, 2), (1, 2)])],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::DuplicateLabel { .. }));
    }

    #[test]
    fn single_account_single_outcome_is_legal() {
        let m = FiniteModel::new(
            vec!["only".into()],
            vec!["y".into()],
            vec![Rat::one()],
            vec![vec![Rat::one()]],
        )
        .unwrap();
        assert_eq!(m.predictive(), vec![Rat::one()]);
        assert_eq!(
            Updater::Bayes.apply(&m, 0).unwrap(),
            BeliefAssignment::new(vec![Rat::one()])
        );
    }

    #[test]
    fn predictive_examples() {
        let symmetric = FiniteModel::new(
            vec!["a".into(), "b".into()],
            vec!["y1".into(), "y2".into()],
            rv(&[(1, 2), (1, 2)]),
            vec![rv(&[(1, 1), (0, 1)]), rv(&[(0, 1), (1, 1)])],
        )
        .unwrap();
        assert_eq!(symmetric.predictive(), rv(&[(1, 2), (1, 2)]));

        assert_eq!(two_outcome_model().predictive(), rv(&[(2, 3), (1, 3)]));
    }

    #[test]
    fn predictive_sums_to_one_on_random_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = random_model(&mut rng, 6, 6, true);
            let total: Rat = m.predictive().into_iter().sum();
            assert!(total.is_one());
        }
    }

    #[test]
    fn apply_updater_examples() {
        let perfect = FiniteModel::new(
            vec!["a".into(), "b".into()],
            vec!["y1".into(), "y2".into()],
            rv(&[(1, 2), (1, 2)]),
            vec![rv(&[(1, 1), (0, 1)]), rv(&[(0, 1), (1, 1)])],
        )
        .unwrap();
        assert_eq!(
            Updater::Bayes.apply(&perfect, 0).unwrap(),
            BeliefAssignment::new(rv(&[(1, 1), (0, 1)]))
        );

        let m = two_outcome_model();
        assert_eq!(
            Updater::Bayes.apply(&m, 0).unwrap(),
            BeliefAssignment::new(rv(&[(1, 4), (3, 4)]))
        );
        assert_eq!(Updater::Noop.apply(&m, 1).unwrap(), m.prior());
    }

    #[test]
    fn bayes_output_sums_to_one_and_tempered_equivalences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let m = random_model(&mut rng, 5, 5, false);
            for i in 0..m.num_outcomes() {
                let bayes = Updater::Bayes.apply(&m, i).unwrap();
                assert!(bayes.sum().is_one());
                assert_eq!(Updater::Tempered(1).apply(&m, i).unwrap(), bayes);
                assert_eq!(
                    Updater::Tempered(0).apply(&m, i).unwrap(),
                    Updater::Noop.apply(&m, i).unwrap()
                );
            }
        }
    }

    #[test]
    fn conditioning_on_null_outcome_is_an_error() {
        let m = FiniteModel::new(
            vec!["a".into(), "b".into()],
            vec!["y1".into(), "y2".into(), "never".into()],
            rv(&[(1, 2), (1, 2)]),
            vec![rv(&[(1, 2), (1, 2), (0, 1)]), rv(&[(1, 4), (3, 4), (0, 1)])],
        )
        .unwrap();
        let err = Updater::Bayes.apply(&m, 2).unwrap_err();
        assert!(err.to_string().contains("never"));
        let err = m.event_posterior(&Event::singleton(2)).unwrap_err();
        assert!(matches!(err, ModelError::NullEvent { .. }));
    }

    #[test]
    fn event_mass_examples() {
        let m = two_outcome_model();
        assert_eq!(m.event_mass(&Event::full(2)).unwrap(), Rat::one());
        assert_eq!(m.event_mass(&Event::singleton(0)).unwrap(), r(2, 3));
        assert!(matches!(
            m.event_mass(&Event::new([])).unwrap_err(),
            ModelError::EmptyEvent
        ));
    }

    #[test]
    fn event_likelihood_sums_member_columns() {
        let m = two_outcome_model();
        let full = Event::full(2);
        for j in 0..2 {
            assert_eq!(m.event_likelihood(&full, j).unwrap(), Rat::one());
        }
        assert_eq!(
            m.event_likelihood(&Event::singleton(0), 1).unwrap(),
            r(3, 4)
        );
        assert!(matches!(
            m.event_likelihood(&Event::new([]), 0).unwrap_err(),
            ModelError::EmptyEvent
        ));
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FiniteModel>();
        assert_send_sync::<Event>();
        assert_send_sync::<BeliefAssignment>();
        assert_send_sync::<Updater>();
        assert_send_sync::<Rat>();
    }

    #[test]
    fn event_additivity_on_disjoint_events() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let m = random_model(&mut rng, 4, 6, true);
            let n = m.num_outcomes();
            if n < 2 {
                continue;
            }
            let a = Event::new((0..n).step_by(2));
            let b = a.complement(n);
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let union = Event::new(a.members().chain(b.members()));
            assert_eq!(
                m.event_mass(&union).unwrap(),
                m.event_mass(&a).unwrap() + m.event_mass(&b).unwrap()
            );
        }
    }

    #[test]
    fn event_posterior_matches_singleton_update() {
        let m = two_outcome_model();
        assert_eq!(m.event_posterior(&Event::full(2)).unwrap(), m.prior());
        for i in 0..2 {
            assert_eq!(
                m.event_posterior(&Event::singleton(i)).unwrap(),
                Updater::Bayes.apply(&m, i).unwrap()
            );
        }
    }

    #[test]
    fn bitmask_round_trip() {
        let e = Event::new([0, 2, 5]);
        assert_eq!(e.bitmask(), 0b100101);
        assert_eq!(Event::from_bitmask(0b100101), e);
    }

    #[test]
    fn json_loading_names_offending_field() {
        let good = r#"{
            "params": ["fair", "biased"],
            "outcomes": ["heads", "tails"],
            "prior": ["1/3", "2/3"],
            "likelihood": [["1/2", "1/2"], ["3/4", "1/4"]]
        }"#;
        let m = FiniteModel::from_json_str(good).unwrap();
        assert_eq!(m, two_outcome_model_relabeled());

        let decimal = good.replace("\"2/3\"", "\"0.667\"");
        let err = FiniteModel::from_json_str(&decimal).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("prior[1]"), "got: {msg}");
        assert!(msg.contains("decimal"), "got: {msg}");

        let bad_cell = good.replace("\"3/4\"", "\"3/x\"");
        let err = FiniteModel::from_json_str(&bad_cell).unwrap_err();
        assert!(err.to_string().contains("likelihood[1][0]"));
    }

    fn two_outcome_model_relabeled() -> FiniteModel {
        FiniteModel::new(
            vec!["fair".into(), "biased".into()],
            vec!["heads".into(), "tails".into()],
            rv(&[(1, 3), (2, 3)]),
            vec![rv(&[(1, 2), (1, 2)]), rv(&[(3, 4), (1, 4)])],
        )
        .unwrap()
    }

    #[test]
    fn updater_parsing() {
        assert_eq!("bayes".parse::<Updater>().unwrap(), Updater::Bayes);
        assert_eq!(
            "tempered:3".parse::<Updater>().unwrap(),
            Updater::Tempered(3)
        );
        assert_eq!("noop".parse::<Updater>().unwrap(), Updater::Noop);
        assert!("jeffrey".parse::<Updater>().is_err());
        assert!("tempered:x".parse::<Updater>().is_err());
    }
}
