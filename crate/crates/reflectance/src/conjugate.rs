//! Exact beta-binomial machinery.
//!
//! Beta densities with integer parameters are polynomials with rational
//! coefficients, so expected-posterior mixtures can be collapsed and compared
//! by structural equality. The two-hypothesis point-null versus beta-prior
//! comparison lives here too, with every posterior probability, predictive
//! and Bayes factor an exact rational.

use std::fmt;

use thiserror::Error;

use crate::exact::{beta_fn, binom, Poly, Rat};
use crate::model::{FiniteModel, ModelError};

#[derive(Debug, Error)]
pub enum ConjugateError {
    #[error("beta parameters must be positive integers (got a={a}, b={b})")]
    ZeroBetaParam { a: u64, b: u64 },
    #[error("successes ({s}) exceed the number of trials ({n})")]
    SuccessesExceedTrials { s: u64, n: u64 },
    #[error("null rate must lie strictly between 0 and 1 (got {0})")]
    NullRateOutOfRange(Rat),
    #[error("prior odds must be positive (got {0})")]
    NonPositiveOdds(Rat),
    #[error("mixture must have at least one component")]
    EmptyMixture,
    #[error("mixture weight {0} is not positive")]
    NonPositiveWeight(Rat),
    #[error("mixture weights sum to {sum}, expected exactly 1")]
    WeightSum { sum: Rat },
    #[error("duplicate mixture component beta({a},{b})")]
    DuplicateComponent { a: u64, b: u64 },
    #[error("sequence model for {n} flips would need 2^{n} outcomes; capped at {cap} flips")]
    TooManyFlips { n: u32, cap: u32 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Parameters of a beta distribution, restricted to positive integers so the
/// density is an exact polynomial and B(a, b) is rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BetaParams {
    a: u64,
    b: u64,
}

impl BetaParams {
    pub fn new(a: u64, b: u64) -> Result<Self, ConjugateError> {
        if a == 0 || b == 0 {
            return Err(ConjugateError::ZeroBetaParam { a, b });
        }
        Ok(BetaParams { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// Exact normalizer B(a, b).
    pub fn beta_norm(&self) -> Rat {
        beta_fn(self.a, self.b).expect("parameters are positive")
    }

    /// The density θ^(a−1) (1−θ)^(b−1) / B(a, b) as an exact polynomial,
    /// via binomial expansion of (1−θ)^(b−1).
    pub fn pdf_poly(&self) -> Poly {
        let norm = self.beta_norm();
        let degree = (self.a + self.b - 2) as usize;
        let mut coeffs = vec![Rat::zero(); degree + 1];
        for j in 0..self.b {
            let sign = num_bigint::BigInt::from(if j % 2 == 0 { 1 } else { -1 });
            let c = Rat::from_bigint(binom(self.b - 1, j) * sign) / &norm;
            coeffs[(self.a - 1 + j) as usize] = c;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Exact CDF at a rational point: ∫₀ˣ of the density polynomial.
    pub fn cdf(&self, x: &Rat) -> Rat {
        self.pdf_poly().integral_0x(x)
    }

    /// Posterior mean a / (a + b).
    pub fn mean(&self) -> Rat {
        Rat::new((self.a).into(), (self.a + self.b).into()).expect("a+b > 0")
    }

    /// Conjugate update: (a + successes, b + failures).
    pub fn posterior(&self, trials: &TrialRecord) -> BetaParams {
        BetaParams {
            a: self.a + trials.successes,
            b: self.b + trials.failures,
        }
    }
}

impl fmt::Display for BetaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "beta({},{})", self.a, self.b)
    }
}

/// Number of successes in `n` trials under a beta prior on the rate:
/// `C(n,s) · B(a+s, b+n−s) / B(a,b)`.
pub fn beta_binomial_pmf(p: &BetaParams, n: u64, s: u64) -> Result<Rat, ConjugateError> {
    if s > n {
        return Err(ConjugateError::SuccessesExceedTrials { s, n });
    }
    let num = beta_fn(p.a + s, p.b + n - s).expect("positive parameters");
    Ok(Rat::from_bigint(binom(n, s)) * num / p.beta_norm())
}

/// Success/failure counts. The binomial model is exchangeable, so counts are
/// all that matter; reducing a 0/1 sequence to counts is the caller's job.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialRecord {
    pub successes: u64,
    pub failures: u64,
}

impl TrialRecord {
    pub fn new(successes: u64, failures: u64) -> Self {
        TrialRecord {
            successes,
            failures,
        }
    }

    pub fn from_sequence(seq: &[u8]) -> Self {
        let successes = seq.iter().filter(|&&x| x != 0).count() as u64;
        TrialRecord {
            successes,
            failures: seq.len() as u64 - successes,
        }
    }

    pub fn total(&self) -> u64 {
        self.successes + self.failures
    }

    pub fn with_success(&self) -> Self {
        TrialRecord::new(self.successes + 1, self.failures)
    }

    pub fn with_failure(&self) -> Self {
        TrialRecord::new(self.successes, self.failures + 1)
    }
}

/// A weighted mixture of beta densities; weights are positive and sum to 1,
/// component parameters are distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaMixture {
    components: Vec<(Rat, BetaParams)>,
}

impl BetaMixture {
    pub fn new(components: Vec<(Rat, BetaParams)>) -> Result<Self, ConjugateError> {
        if components.is_empty() {
            return Err(ConjugateError::EmptyMixture);
        }
        let mut sum = Rat::zero();
        let mut seen = std::collections::BTreeSet::new();
        for (w, p) in &components {
            if !w.is_positive() {
                return Err(ConjugateError::NonPositiveWeight(w.clone()));
            }
            if !seen.insert(*p) {
                return Err(ConjugateError::DuplicateComponent { a: p.a, b: p.b });
            }
            sum = sum + w;
        }
        if !sum.is_one() {
            return Err(ConjugateError::WeightSum { sum });
        }
        Ok(BetaMixture { components })
    }

    pub fn components(&self) -> &[(Rat, BetaParams)] {
        &self.components
    }

    /// Weighted sum of the component density polynomials.
    pub fn pdf_poly(&self) -> Poly {
        self.components
            .iter()
            .fold(Poly::zero(), |acc, (w, p)| acc.add(&p.pdf_poly().scale(w)))
    }

    /// Exact test: does this mixture equal the single beta density?
    pub fn collapses_to(&self, p: &BetaParams) -> bool {
        self.pdf_poly() == p.pdf_poly()
    }
}

/// The expected posterior after `n_star` future observations: one component
/// per possible success count s, weighted by its predictive probability.
///
/// The punchline is that this mixture always collapses back to the prior.
pub fn expected_posterior_mixture(p: &BetaParams, n_star: u64) -> BetaMixture {
    let components = (0..=n_star)
        .map(|s| {
            let weight = beta_binomial_pmf(p, n_star, s).expect("s <= n_star");
            (weight, p.posterior(&TrialRecord::new(s, n_star - s)))
        })
        .collect();
    BetaMixture::new(components).expect("predictive weights form a distribution")
}

/// Next-trial result in the two-hypothesis comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    Success,
    Failure,
}

/// Posterior state of the two-hypothesis comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelPosterior {
    pub prob_alt: Rat,
    pub odds_alt: Rat,
}

/// Point null (rate fixed) versus a beta-prior alternative, with prior odds
/// on the alternative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointVsBeta {
    null_rate: Rat,
    alt_prior: BetaParams,
    prior_odds_alt: Rat,
}

impl PointVsBeta {
    pub fn new(
        null_rate: Rat,
        alt_prior: BetaParams,
        prior_odds_alt: Rat,
    ) -> Result<Self, ConjugateError> {
        if !null_rate.is_positive() || !(Rat::one() - &null_rate).is_positive() {
            return Err(ConjugateError::NullRateOutOfRange(null_rate));
        }
        if !prior_odds_alt.is_positive() {
            return Err(ConjugateError::NonPositiveOdds(prior_odds_alt));
        }
        Ok(PointVsBeta {
            null_rate,
            alt_prior,
            prior_odds_alt,
        })
    }

    pub fn null_rate(&self) -> &Rat {
        &self.null_rate
    }

    pub fn alt_prior(&self) -> &BetaParams {
        &self.alt_prior
    }

    pub fn prior_odds_alt(&self) -> &Rat {
        &self.prior_odds_alt
    }

    /// Marginal likelihood of the counts under the alternative:
    /// B(a+s, b+f) / B(a, b).
    pub fn marginal_alt(&self, trials: &TrialRecord) -> Rat {
        let post = self.alt_prior.posterior(trials);
        post.beta_norm() / self.alt_prior.beta_norm()
    }

    /// Marginal likelihood of the counts under the null: r^s (1−r)^f.
    pub fn marginal_null(&self, trials: &TrialRecord) -> Rat {
        self.null_rate.pow(trials.successes as u32)
            * (Rat::one() - &self.null_rate).pow(trials.failures as u32)
    }

    /// Posterior probability and odds of the alternative after the counts.
    pub fn model_posterior(&self, trials: &TrialRecord) -> ModelPosterior {
        let odds_alt =
            &self.prior_odds_alt * &self.marginal_alt(trials) / self.marginal_null(trials);
        let prob_alt = &odds_alt / (Rat::one() + &odds_alt);
        ModelPosterior { prob_alt, odds_alt }
    }

    /// Law-of-total-probability predictive for the next observation:
    /// the null rate under H0, the posterior mean under H1, each weighted by
    /// its model probability.
    pub fn next_obs_predictive(&self, trials: &TrialRecord) -> (Rat, Rat) {
        let posterior = self.model_posterior(trials);
        let prob_null = Rat::one() - &posterior.prob_alt;
        let mean_alt = self.alt_prior.posterior(trials).mean();
        let p_success = &self.null_rate * &prob_null + &mean_alt * &posterior.prob_alt;
        let p_failure = (Rat::one() - &self.null_rate) * prob_null
            + (Rat::one() - mean_alt) * &posterior.prob_alt;
        (p_success, p_failure)
    }

    /// Bayes factor (alternative over null) for one more observation.
    pub fn next_obs_bayes_factor(&self, trials: &TrialRecord, outcome: TrialOutcome) -> Rat {
        let mean_alt = self.alt_prior.posterior(trials).mean();
        match outcome {
            TrialOutcome::Success => mean_alt / &self.null_rate,
            TrialOutcome::Failure => {
                (Rat::one() - mean_alt) / (Rat::one() - &self.null_rate)
            }
        }
    }

    /// Expected posterior model probability across the next observation:
    /// Σ over success/failure of (model probability after that outcome) ×
    /// (its predictive probability). Equals the current model probability —
    /// the martingale property for model probabilities.
    pub fn expected_model_prob(&self, trials: &TrialRecord) -> Rat {
        let (p_success, p_failure) = self.next_obs_predictive(trials);
        let after_success = self.model_posterior(&trials.with_success()).prob_alt;
        let after_failure = self.model_posterior(&trials.with_failure()).prob_alt;
        after_success * p_success + after_failure * p_failure
    }

    /// Encodes `n_flips` observations as a finite model: two accounts (null
    /// and alternative, with the θ under the alternative marginalized out)
    /// over all 2^n_flips outcome sequences.
    ///
    /// Outcome labels are strings of `s`/`f`, first flip first.
    pub fn sequence_model(&self, n_flips: u32) -> Result<FiniteModel, ConjugateError> {
        const MAX_FLIPS: u32 = 16;
        if n_flips == 0 || n_flips > MAX_FLIPS {
            return Err(ConjugateError::TooManyFlips {
                n: n_flips,
                cap: MAX_FLIPS,
            });
        }
        let count = 1u64 << n_flips;
        let mut labels = Vec::with_capacity(count as usize);
        let mut row_null = Vec::with_capacity(count as usize);
        let mut row_alt = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let mut label = String::with_capacity(n_flips as usize);
            let mut successes = 0u64;
            for step in 0..n_flips {
                if idx >> (n_flips - 1 - step) & 1 == 1 {
                    label.push('s');
                    successes += 1;
                } else {
                    label.push('f');
                }
            }
            labels.push(label);
            let trials = TrialRecord::new(successes, n_flips as u64 - successes);
            row_null.push(self.marginal_null(&trials));
            row_alt.push(self.marginal_alt(&trials));
        }
        let prob_alt = &self.prior_odds_alt / (Rat::one() + &self.prior_odds_alt);
        let prob_null = Rat::one() - &prob_alt;
        FiniteModel::new(
            vec!["H0".into(), "H1".into()],
            labels,
            vec![prob_null, prob_alt],
            vec![row_null, row_alt],
        )
        .map_err(Into::into)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Event, Updater};
    use crate::reflection::expected_posterior_given_event;

    fn r(n: i64, d: i64) -> Rat {
        Rat::ratio(n, d)
    }

    fn beta(a: u64, b: u64) -> BetaParams {
        BetaParams::new(a, b).unwrap()
    }

    /// null rate 1/2 versus beta(1,1), equal prior odds
    fn coin_comparison() -> PointVsBeta {
        PointVsBeta::new(r(1, 2), beta(1, 1), Rat::one()).unwrap()
    }

    #[test]
    fn pdf_poly_examples() {
        assert_eq!(beta(1, 1).pdf_poly(), Poly::constant(Rat::one()));
        assert_eq!(
            beta(2, 2).pdf_poly(),
            Poly::from_coeffs(vec![Rat::zero(), Rat::from_int(6), Rat::from_int(-6)])
        );
        let mut six_theta5 = vec![Rat::zero(); 6];
        six_theta5[5] = Rat::from_int(6);
        assert_eq!(beta(6, 1).pdf_poly(), Poly::from_coeffs(six_theta5));
    }

    #[test]
    fn pdf_poly_integrates_to_one_exhaustively() {
        for a in 1..=12 {
            for b in 1..=12 {
                assert!(
                    beta(a, b).pdf_poly().integral_01().is_one(),
                    "beta({a},{b})"
                );
            }
        }
    }

    #[test]
    fn cdf_matches_binomial_tail_oracle() {
        // independent route: for integer parameters the regularized
        // incomplete beta is a binomial tail, I_x(a,b) = P(Bin(a+b-1, x) >= a)
        let tail = |a: u64, b: u64, x: &Rat| -> Rat {
            let n = a + b - 1;
            (a..=n)
                .map(|j| {
                    Rat::from_bigint(binom(n, j))
                        * x.pow(j as u32)
                        * (Rat::one() - x).pow((n - j) as u32)
                })
                .sum()
        };
        for a in 1..=6 {
            for b in 1..=6 {
                for x in [r(1, 4), r(1, 3), r(1, 2), r(2, 3), r(3, 4)] {
                    assert_eq!(beta(a, b).cdf(&x), tail(a, b, &x), "beta({a},{b}) at {x}");
                }
            }
        }
    }

    #[test]
    fn beta_binomial_examples() {
        let p = beta(2, 2);
        let pmf: Vec<Rat> = (0..=2)
            .map(|s| beta_binomial_pmf(&p, 2, s).unwrap())
            .collect();
        assert_eq!(pmf, vec![r(3, 10), r(2, 5), r(3, 10)]);

        assert_eq!(beta_binomial_pmf(&beta(1, 1), 5, 5).unwrap(), r(1, 6));
        assert_eq!(beta_binomial_pmf(&beta(6, 1), 1, 1).unwrap(), r(6, 7));
        assert!(matches!(
            beta_binomial_pmf(&p, 2, 3),
            Err(ConjugateError::SuccessesExceedTrials { .. })
        ));
    }

    #[test]
    fn beta_binomial_sums_to_one_exhaustively() {
        for a in 1..=8 {
            for b in 1..=8 {
                let p = beta(a, b);
                for n in 0..=12 {
                    let total: Rat = (0..=n)
                        .map(|s| beta_binomial_pmf(&p, n, s).unwrap())
                        .sum();
                    assert!(total.is_one(), "beta({a},{b}), n={n}");
                }
            }
        }
    }

    #[test]
    fn posterior_params_examples() {
        assert_eq!(
            beta(1, 1).posterior(&TrialRecord::new(5, 0)),
            beta(6, 1)
        );
        assert_eq!(beta(2, 2).posterior(&TrialRecord::new(0, 0)), beta(2, 2));
        assert_eq!(beta(2, 2).posterior(&TrialRecord::new(2, 0)), beta(4, 2));
    }

    #[test]
    fn expected_posterior_mixture_examples() {
        let mix = expected_posterior_mixture(&beta(2, 2), 2);
        assert_eq!(
            mix.components(),
            &[
                (r(3, 10), beta(2, 4)),
                (r(2, 5), beta(3, 3)),
                (r(3, 10), beta(4, 2)),
            ]
        );
        assert!(mix.collapses_to(&beta(2, 2)));

        let uniform = expected_posterior_mixture(&beta(1, 1), 1);
        assert_eq!(
            uniform.components(),
            &[(r(1, 2), beta(1, 2)), (r(1, 2), beta(2, 1))]
        );

        assert_eq!(expected_posterior_mixture(&beta(2, 2), 100).components().len(), 101);
    }

    #[test]
    fn mixture_collapse_is_general() {
        for a in 1..=6 {
            for b in 1..=6 {
                let p = beta(a, b);
                for n_star in 1..=25 {
                    assert!(
                        expected_posterior_mixture(&p, n_star).collapses_to(&p),
                        "beta({a},{b}), n*={n_star}"
                    );
                }
            }
        }
    }

    #[test]
    fn distinct_density_does_not_collapse() {
        let single = BetaMixture::new(vec![(Rat::one(), beta(3, 3))]).unwrap();
        assert!(!single.collapses_to(&beta(2, 2)));
    }

    #[test]
    fn mixture_validation() {
        assert!(matches!(
            BetaMixture::new(vec![]),
            Err(ConjugateError::EmptyMixture)
        ));
        assert!(matches!(
            BetaMixture::new(vec![(r(1, 2), beta(1, 1)), (r(1, 2), beta(1, 1))]),
            Err(ConjugateError::DuplicateComponent { .. })
        ));
        assert!(matches!(
            BetaMixture::new(vec![(r(1, 2), beta(1, 1))]),
            Err(ConjugateError::WeightSum { .. })
        ));
    }

    #[test]
    fn model_posterior_ledger() {
        let h = coin_comparison();
        let five = TrialRecord::new(5, 0);
        let posterior = h.model_posterior(&five);
        assert_eq!(posterior.prob_alt, r(16, 19));
        assert_eq!(posterior.odds_alt, r(16, 3));
        assert_eq!(h.alt_prior().posterior(&five), beta(6, 1));

        assert_eq!(
            h.model_posterior(&TrialRecord::new(0, 0)).prob_alt,
            r(1, 2)
        );
        let one = h.model_posterior(&TrialRecord::new(1, 0));
        assert_eq!(one.odds_alt, Rat::one());
        assert_eq!(one.prob_alt, r(1, 2));
    }

    #[test]
    fn next_obs_predictive_ledger() {
        let h = coin_comparison();
        assert_eq!(
            h.next_obs_predictive(&TrialRecord::new(5, 0)),
            (r(213, 266), r(53, 266))
        );
        assert_eq!(
            h.next_obs_predictive(&TrialRecord::new(0, 0)),
            (r(1, 2), r(1, 2))
        );
        // 1/2·1/2 + 2/3·1/2 = 7/12
        assert_eq!(
            h.next_obs_predictive(&TrialRecord::new(1, 0)).0,
            r(7, 12)
        );
    }

    #[test]
    fn bayes_factor_ledger() {
        let h = coin_comparison();
        let five = TrialRecord::new(5, 0);
        assert_eq!(
            h.next_obs_bayes_factor(&five, TrialOutcome::Success),
            r(12, 7)
        );
        assert_eq!(
            h.next_obs_bayes_factor(&five, TrialOutcome::Failure),
            r(2, 7)
        );
        assert_eq!(
            h.next_obs_bayes_factor(&TrialRecord::new(0, 0), TrialOutcome::Success),
            Rat::one()
        );
    }

    #[test]
    fn branch_posteriors_match_the_chain() {
        let h = coin_comparison();
        let five = TrialRecord::new(5, 0);
        let after_success = h.model_posterior(&five.with_success());
        let after_failure = h.model_posterior(&five.with_failure());
        assert_eq!(after_success.prob_alt, "192/213".parse().unwrap());
        assert_eq!(after_failure.prob_alt, "32/53".parse().unwrap());
        // odds chain: 16/3 · 12/7 and 16/3 · 2/7
        assert_eq!(after_success.odds_alt, r(16, 3) * r(12, 7));
        assert_eq!(after_failure.odds_alt, r(16, 3) * r(2, 7));
    }

    #[test]
    fn expected_model_prob_ledger() {
        let h = coin_comparison();
        let five = TrialRecord::new(5, 0);
        // 192/213 · 213/266 + 32/53 · 53/266 = 16/19
        assert_eq!(h.expected_model_prob(&five), r(16, 19));
        assert_eq!(h.expected_model_prob(&TrialRecord::new(0, 0)), r(1, 2));

        let mixed = TrialRecord::new(3, 1);
        assert_eq!(
            h.expected_model_prob(&mixed),
            h.model_posterior(&mixed).prob_alt
        );
    }

    #[test]
    fn model_prob_martingale_randomized() {
        // assorted comparisons, every trial record with s + f <= 10
        let rates = [r(1, 3), r(2, 5), r(1, 2), r(7, 10)];
        let odds = [r(1, 2), Rat::one(), r(3, 1)];
        let priors = [beta(1, 1), beta(2, 3), beta(4, 1)];
        for rate in &rates {
            for (odd, prior) in odds.iter().zip(priors.iter()) {
                let h = PointVsBeta::new(rate.clone(), *prior, odd.clone()).unwrap();
                for s in 0..=10u64 {
                    for f in 0..=(10 - s) {
                        let t = TrialRecord::new(s, f);
                        assert_eq!(
                            h.expected_model_prob(&t),
                            h.model_posterior(&t).prob_alt,
                            "rate={rate} odds={odd} prior={prior} s={s} f={f}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sequence_model_reproduces_event_conditioning() {
        let h = coin_comparison();
        let m = h.sequence_model(5).unwrap();
        assert_eq!(m.num_outcomes(), 32);
        let all_success = Event::from_labels(&m, &["sssss".to_string()]).unwrap();
        let posterior = m.event_posterior(&all_success).unwrap();
        assert_eq!(posterior.values(), &[r(3, 19), r(16, 19)]);

        // six flips, conditioning on "first five are successes"
        let m6 = h.sequence_model(6).unwrap();
        assert_eq!(m6.num_outcomes(), 64);
        let first_five = Event::from_labels(
            &m6,
            &["ssssss".to_string(), "sssssf".to_string()],
        )
        .unwrap();
        let expected =
            expected_posterior_given_event(&m6, Updater::Bayes, &first_five).unwrap();
        assert_eq!(expected.get(1), &r(16, 19));
        assert_eq!(expected, m6.event_posterior(&first_five).unwrap());
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            BetaParams::new(0, 2),
            Err(ConjugateError::ZeroBetaParam { .. })
        ));
        assert!(matches!(
            PointVsBeta::new(Rat::one(), beta(1, 1), Rat::one()),
            Err(ConjugateError::NullRateOutOfRange(_))
        ));
        assert!(matches!(
            PointVsBeta::new(r(1, 2), beta(1, 1), Rat::zero()),
            Err(ConjugateError::NonPositiveOdds(_))
        ));
        assert!(matches!(
            coin_comparison().sequence_model(17),
            Err(ConjugateError::TooManyFlips { .. })
        ));
    }

    #[test]
    fn trial_record_from_sequence() {
        let t = TrialRecord::from_sequence(&[1, 1, 0, 1, 0]);
        assert_eq!(t, TrialRecord::new(3, 2));
        assert_eq!(t.total(), 5);
    }
}
