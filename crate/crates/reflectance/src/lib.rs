//! Exact verification of the martingale property of Bayesian posteriors.
//!
//! A Bayesian agent who contemplates the prior predictive distribution
//! learns nothing: the predictive-weighted average of the posteriors equals
//! the prior, unconditionally and conditionally on any positive-probability
//! event. This crate represents finite models (and the beta-binomial
//! conjugate family) in arbitrary-precision rational arithmetic, verifies
//! that identity with zero rounding error, exhibits exact counterexamples
//! for non-Bayesian rules, and pins down Bayes' rule as the only rule an
//! event rule admits on positive-mass outcomes.
//!
//! Layers:
//!
//! - [`exact`] — canonical rationals and dense rational polynomials;
//! - [`model`] — finite models, events, belief assignments, updating rules;
//! - [`reflection`] — expected posteriors, exhaustive event checking,
//!   lookahead over product spaces, the uniqueness solver, perturbation
//!   detection;
//! - [`conjugate`] — beta densities as exact polynomials, beta-binomial
//!   predictives, expected-posterior mixtures, point-null versus beta
//!   model comparison;
//! - [`montecarlo`] — seeded, reproducible sampling checks for spaces too
//!   large to enumerate;
//! - [`cli`] — the `reflectance` command-line tool;
//! - [`modelgen`] — seeded random-model generation for the test suites.
//!
//! ```
//! use reflectance::model::{FiniteModel, Updater};
//! use reflectance::exact::Rat;
//! use reflectance::reflection::expected_posterior;
//!
//! let model = FiniteModel::new(
//!     vec!["fair".into(), "loaded".into()],
//!     vec!["heads".into(), "tails".into()],
//!     vec![Rat::ratio(1, 3), Rat::ratio(2, 3)],
//!     vec![
//!         vec![Rat::ratio(1, 2), Rat::ratio(1, 2)],
//!         vec![Rat::ratio(3, 4), Rat::ratio(1, 4)],
//!     ],
//! )
//! .unwrap();
//!
//! // contemplating the predictive moves nothing, exactly
//! assert_eq!(expected_posterior(&model, Updater::Bayes).unwrap(), model.prior());
//! ```

pub mod cli;
pub mod conjugate;
pub mod exact;
pub mod model;
pub mod modelgen;
pub mod montecarlo;
pub mod reflection;
