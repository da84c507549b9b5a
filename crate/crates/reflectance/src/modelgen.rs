//! Seeded random generation of valid finite models.
//!
//! The exhaustive checkers are exercised over randomized models throughout
//! the test suites; generation lives in the library so every suite draws
//! from the same, reproducible source.

use rand_chacha::rand_core::RngCore;

use crate::exact::Rat;
use crate::model::{BeliefAssignment, FiniteModel};

fn below(rng: &mut impl RngCore, bound: u64) -> u64 {
    rng.next_u64() % bound
}

/// A random exact distribution of length `n`: integer weights normalized by
/// their sum. With `allow_zero`, individual entries may be zero (never all).
pub fn random_distribution(rng: &mut impl RngCore, n: usize, allow_zero: bool) -> Vec<Rat> {
    let mut weights: Vec<u64> = (0..n)
        .map(|_| {
            if allow_zero {
                below(rng, 10)
            } else {
                1 + below(rng, 9)
            }
        })
        .collect();
    if weights.iter().all(|&w| w == 0) {
        weights[below(rng, n as u64) as usize] = 1;
    }
    let total = weights.iter().sum::<u64>() as i64;
    weights
        .into_iter()
        .map(|w| Rat::ratio(w as i64, total))
        .collect()
}

/// A random valid model with 1..=`max_accounts` accounts and
/// 1..=`max_outcomes` outcomes. With `allow_zero`, prior entries and
/// likelihood cells may be zero, so zero-mass outcomes can occur.
pub fn random_model(
    rng: &mut impl RngCore,
    max_accounts: usize,
    max_outcomes: usize,
    allow_zero: bool,
) -> FiniteModel {
    let m = 1 + below(rng, max_accounts as u64) as usize;
    let n = 1 + below(rng, max_outcomes as u64) as usize;
    let prior = random_distribution(rng, m, allow_zero);
    let likelihood = (0..m)
        .map(|_| random_distribution(rng, n, allow_zero))
        .collect();
    FiniteModel::new(
        (1..=m).map(|j| format!("theta{j}")).collect(),
        (1..=n).map(|i| format!("y{i}")).collect(),
        prior,
        likelihood,
    )
    .expect("generated model is valid by construction")
}

/// A random unconstrained belief value in roughly [-5, 5]; beliefs need not
/// be positive or normalized.
pub fn random_belief_value(rng: &mut impl RngCore) -> Rat {
    let num = below(rng, 101) as i64 - 50;
    let den = 1 + below(rng, 10) as i64;
    Rat::ratio(num, den)
}

/// One arbitrary belief assignment per outcome of an `n`-outcome space.
pub fn random_beliefs(
    rng: &mut impl RngCore,
    num_accounts: usize,
    num_outcomes: usize,
) -> Vec<BeliefAssignment> {
    (0..num_outcomes)
        .map(|_| {
            BeliefAssignment::new((0..num_accounts).map(|_| random_belief_value(rng)).collect())
        })
        .collect()
}
