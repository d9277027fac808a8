//! Randomized checks of ranking-metric axioms.
//!
//! Each suite draws `trials` independent cases from a seeded sampler, evaluates
//! both sides of an inequality and records violations. Trial `t` of seed `s` uses
//! its own ChaCha stream, so reports are identical whatever the thread count.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use crate::bibliometric::{PerfCurveFamily, RankedProfile};
use crate::rankmetrics::{
    acceptance_member, MetricValue, OmegaMode, Property, Provenance, RankingMetric,
};
use crate::riskmeasures::{LambdaFn, RiskMeasure, UtilityFn};
use crate::scenarios::ScenarioDist;

pub const SLACK_ABS: f64 = 1e-9;
// ratios near a vanishing denominator carry rounding error proportional to size
pub const SLACK_REL: f64 = 1e-12;

/// Operations the suites need from a position type.
pub trait Position: Clone + Send + Sync {
    fn constant(k: f64) -> Self;
    /// Adds the nonnegative `increments`, giving a position that dominates `self`.
    fn raised(&self, increments: &[f64]) -> Self;
    fn shifted(&self, k: f64) -> Self;
    fn mix_constant(&self, lambda: f64, k: f64) -> Self;
    /// `lambda * self + (1 - lambda) * other` on a common state space.
    fn mix(&self, other: &Self, lambda: f64) -> Self;
    fn describe(&self) -> String;
}

impl Position for ScenarioDist {
    fn constant(k: f64) -> Self {
        ScenarioDist::degenerate(k)
    }

    fn raised(&self, increments: &[f64]) -> Self {
        self.map_states(|i, x| x + increments[i])
    }

    fn shifted(&self, k: f64) -> Self {
        self.shift(k)
    }

    fn mix_constant(&self, lambda: f64, k: f64) -> Self {
        self.mix_with_constant(lambda, k)
    }

    fn mix(&self, other: &Self, lambda: f64) -> Self {
        assert_eq!(
            self.state_probabilities(),
            other.state_probabilities(),
            "mixed positions must share states"
        );
        let ys = other.state_outcomes();
        self.map_states(|i, x| lambda * x + (1.0 - lambda) * ys[i])
    }

    fn describe(&self) -> String {
        let xs = self.state_outcomes();
        if self.is_equal_weight() {
            format!("X={xs:?}")
        } else {
            format!("X={xs:?} p={:?}", self.state_probabilities())
        }
    }
}

impl Position for RankedProfile {
    fn constant(k: f64) -> Self {
        RankedProfile::constant(k)
    }

    fn raised(&self, increments: &[f64]) -> Self {
        RankedProfile::raised(self, increments)
    }

    fn shifted(&self, k: f64) -> Self {
        RankedProfile::shifted(self, k)
    }

    fn mix_constant(&self, lambda: f64, k: f64) -> Self {
        self.mix_with_constant(lambda, k)
    }

    fn mix(&self, other: &Self, lambda: f64) -> Self {
        RankedProfile::mix(self, other, lambda)
    }

    fn describe(&self) -> String {
        format!("profile={:?} tail={}", self.values(), self.tail())
    }
}

/// Seeded source of trial inputs.
pub trait Sampler: Sync {
    type Position: Position;

    fn seed(&self) -> u64;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Position;
    /// Two positions on one state space, ready for [`Position::mix`].
    fn sample_pair(&self, rng: &mut ChaCha8Rng) -> (Self::Position, Self::Position);
    fn sample_increments(&self, rng: &mut ChaCha8Rng, p: &Self::Position) -> Vec<f64>;
    /// A cash amount in the range spanned by `p`.
    fn sample_constant(&self, rng: &mut ChaCha8Rng, p: &Self::Position) -> f64;
    /// A cash shift `k >= min_shift`.
    fn sample_shift(&self, rng: &mut ChaCha8Rng, min_shift: f64) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbScheme {
    Equal,
    RandomSimplex,
}

/// How the two members of a quasiconcavity pair share states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// Both sorted ascending, so mixing pairs outcomes by rank.
    Comonotone,
    /// Independent draws on the same states.
    Statewise,
}

/// Finite distributions with outcomes in `[-magnitude, magnitude]`.
///
/// About a third of outcomes snap to a half-unit grid to produce ties, and one
/// draw in ten is reflected to be nonnegative so zero-loss branches get exercised.
#[derive(Debug, Clone)]
pub struct DistSampler {
    pub n_min: usize,
    pub n_max: usize,
    pub magnitude: f64,
    pub scheme: ProbScheme,
    pub pairing: Pairing,
    pub seed: u64,
}

impl DistSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            n_min: 2,
            n_max: 12,
            magnitude: 5.0,
            scheme: ProbScheme::Equal,
            pairing: Pairing::Comonotone,
            seed,
        }
    }

    pub fn with_scheme(mut self, scheme: ProbScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_pairing(mut self, pairing: Pairing) -> Self {
        self.pairing = pairing;
        self
    }

    fn probs(&self, rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<f64>> {
        match self.scheme {
            ProbScheme::Equal => None,
            ProbScheme::RandomSimplex => {
                let w: Vec<f64> = (0..n)
                    .map(|_| Distribution::<f64>::sample(&Exp1, rng) + 1e-3)
                    .collect();
                let s: f64 = w.iter().sum();
                Some(w.into_iter().map(|v| v / s).collect())
            }
        }
    }

    fn outcomes(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        let nonneg = rng.gen_bool(0.1);
        (0..n)
            .map(|_| {
                let x = rng.gen_range(-self.magnitude..=self.magnitude);
                let x = if rng.gen_bool(0.3) {
                    (2.0 * x).round() / 2.0
                } else {
                    x
                };
                if nonneg {
                    x.abs()
                } else {
                    x
                }
            })
            .collect()
    }

    fn build(outcomes: Vec<f64>, probs: &Option<Vec<f64>>) -> ScenarioDist {
        match probs {
            None => ScenarioDist::equal_weight(&outcomes),
            Some(p) => ScenarioDist::new(outcomes, p.clone()),
        }
        .expect("sampler builds valid distributions")
    }
}

impl Sampler for DistSampler {
    type Position = ScenarioDist;

    fn seed(&self) -> u64 {
        self.seed
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> ScenarioDist {
        let n = rng.gen_range(self.n_min..=self.n_max);
        let probs = self.probs(rng, n);
        Self::build(self.outcomes(rng, n), &probs)
    }

    fn sample_pair(&self, rng: &mut ChaCha8Rng) -> (ScenarioDist, ScenarioDist) {
        let n = rng.gen_range(self.n_min..=self.n_max);
        let probs = self.probs(rng, n);
        let (mut x, mut y) = (self.outcomes(rng, n), self.outcomes(rng, n));
        if self.pairing == Pairing::Comonotone {
            x.sort_by(f64::total_cmp);
            y.sort_by(f64::total_cmp);
        }
        (Self::build(x, &probs), Self::build(y, &probs))
    }

    fn sample_increments(&self, rng: &mut ChaCha8Rng, p: &ScenarioDist) -> Vec<f64> {
        (0..p.len())
            .map(|_| {
                if rng.gen_bool(0.5) {
                    0.0
                } else {
                    rng.gen_range(0.0..=self.magnitude / 2.0)
                }
            })
            .collect()
    }

    fn sample_constant(&self, rng: &mut ChaCha8Rng, p: &ScenarioDist) -> f64 {
        rng.gen_range(p.min()..=p.max())
    }

    fn sample_shift(&self, rng: &mut ChaCha8Rng, min_shift: f64) -> f64 {
        min_shift + rng.gen_range(0.0..=self.magnitude)
    }
}

/// Integer profiles with up to `n_max` assets and entries up to `max_value`.
#[derive(Debug, Clone)]
pub struct ProfileSampler {
    pub n_max: usize,
    pub max_value: u64,
    pub seed: u64,
}

impl ProfileSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            n_max: 50,
            max_value: 100,
            seed,
        }
    }

    fn counts(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        // skewed draws keep many profiles near the interesting index range
        let skew = rng.gen_range(1.0..4.0);
        (0..n)
            .map(|_| {
                let u: f64 = rng.gen();
                (self.max_value as f64 * u.powf(skew)).floor()
            })
            .collect()
    }
}

impl Sampler for ProfileSampler {
    type Position = RankedProfile;

    fn seed(&self) -> u64 {
        self.seed
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> RankedProfile {
        let n = rng.gen_range(1..=self.n_max);
        RankedProfile::new(self.counts(rng, n)).expect("nonnegative counts")
    }

    fn sample_pair(&self, rng: &mut ChaCha8Rng) -> (RankedProfile, RankedProfile) {
        (self.sample(rng), self.sample(rng))
    }

    fn sample_increments(&self, rng: &mut ChaCha8Rng, p: &RankedProfile) -> Vec<f64> {
        (0..p.n_assets())
            .map(|_| {
                if rng.gen_bool(0.5) {
                    0.0
                } else {
                    rng.gen_range(1..=10) as f64
                }
            })
            .collect()
    }

    fn sample_constant(&self, rng: &mut ChaCha8Rng, p: &RankedProfile) -> f64 {
        rng.gen_range(0.0..=p.top())
    }

    fn sample_shift(&self, rng: &mut ChaCha8Rng, min_shift: f64) -> f64 {
        let lo = min_shift.ceil().max(0.0) as u64;
        rng.gen_range(lo..=lo + 20) as f64
    }
}

/// What a suite is expected to show.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Declared property: any violation fails the suite.
    MustHold,
    /// Property believed false: the suite searches for a counterexample and
    /// passes either way.
    Falsify,
    /// Harness self-test: the suite fails unless it finds violations.
    MustFail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    HoldsOnSample,
    Violated,
    /// Every trial was skipped.
    NotApplicable,
    /// Falsification budget exhausted without a counterexample.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsOnSample => "holds_on_sample",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not_applicable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Reproducible violating case: rerun trial `trial` of `seed` to regenerate it.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub inputs: String,
    pub magnitude: f64,
    pub seed: u64,
    pub trial: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub property: String,
    pub metric: String,
    pub expectation: Expectation,
    pub seed: u64,
    pub trials: usize,
    pub violations: usize,
    pub skipped: usize,
    pub worst: Option<Counterexample>,
    pub verdict: Verdict,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        match self.expectation {
            Expectation::MustHold => self.violations == 0,
            Expectation::Falsify => true,
            Expectation::MustFail => self.violations > 0,
        }
    }

    pub const CSV_HEADER: &'static str = "property,metric,trials,violations,skipped,seed,verdict";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.property,
            self.metric,
            self.trials,
            self.violations,
            self.skipped,
            self.seed,
            self.verdict
        )
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}]: {}/{} violations, {} skipped, seed {} -> {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.metric,
            self.property,
            self.violations,
            self.trials,
            self.skipped,
            self.seed,
            self.verdict
        )?;
        if let Some(w) = &self.worst {
            write!(
                f,
                "\n    worst {:.3e} at trial {}: {}",
                w.magnitude, w.trial, w.inputs
            )?;
        }
        Ok(())
    }
}

enum Outcome {
    Pass,
    Skip,
    Violation(f64),
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn slack(a: f64, b: f64) -> f64 {
    let scale = [a, b]
        .into_iter()
        .filter(|v| v.is_finite())
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    SLACK_ABS + SLACK_REL * scale
}

/// Outcome of `lhs >= rhs` with slack; magnitude is the shortfall.
fn expect_ge(lhs: f64, rhs: f64) -> Outcome {
    if lhs == f64::INFINITY || rhs == f64::NEG_INFINITY || lhs >= rhs - slack(lhs, rhs) {
        Outcome::Pass
    } else {
        Outcome::Violation(rhs - lhs)
    }
}

// right-censored and undefined values carry no usable level
fn unusable(vals: &[MetricValue]) -> bool {
    vals.iter().any(|v| {
        matches!(
            v.provenance,
            Provenance::RightCensored | Provenance::Undefined
        )
    })
}

fn run_trials<F>(
    property: &str,
    metric: &str,
    expectation: Expectation,
    seed: u64,
    trials: usize,
    trial: F,
) -> PropertyReport
where
    F: Fn(&mut ChaCha8Rng, Option<&mut String>) -> Outcome + Sync,
{
    assert!(trials >= 1, "trials must be positive");
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|t| trial(&mut trial_rng(seed, t), None))
        .collect();
    let mut violations = 0;
    let mut skipped = 0;
    let mut worst: Option<(usize, f64)> = None;
    for (t, o) in outcomes.iter().enumerate() {
        match *o {
            Outcome::Pass => {}
            Outcome::Skip => skipped += 1,
            Outcome::Violation(m) => {
                violations += 1;
                if worst.map_or(true, |(_, w)| m.total_cmp(&w).is_gt()) {
                    worst = Some((t, m));
                }
            }
        }
    }
    let worst = worst.map(|(t, magnitude)| {
        let mut inputs = String::new();
        trial(&mut trial_rng(seed, t), Some(&mut inputs));
        Counterexample {
            inputs,
            magnitude,
            seed,
            trial: t,
        }
    });
    let verdict = if violations > 0 {
        Verdict::Violated
    } else if skipped == trials {
        Verdict::NotApplicable
    } else if expectation == Expectation::Falsify {
        Verdict::Inconclusive
    } else {
        Verdict::HoldsOnSample
    };
    PropertyReport {
        property: property.into(),
        metric: metric.into(),
        expectation,
        seed,
        trials,
        violations,
        skipped,
        worst,
        verdict,
    }
}

fn note(sink: Option<&mut String>, text: impl FnOnce() -> String) {
    if let Some(s) = sink {
        *s = text();
    }
}

/// `X <= Y` implies `r(X) <= r(Y)`, with `Y = X + eps`, `eps >= 0`.
pub fn check_monotonicity<S: Sampler>(
    r: &RankingMetric<S::Position>,
    s: &S,
    trials: usize,
) -> PropertyReport {
    check_monotonicity_as(r, s, trials, Expectation::MustHold)
}

pub fn check_monotonicity_as<S: Sampler>(
    r: &RankingMetric<S::Position>,
    s: &S,
    trials: usize,
    expectation: Expectation,
) -> PropertyReport {
    run_trials(
        "monotonicity",
        r.name(),
        expectation,
        s.seed(),
        trials,
        |rng, sink| {
            let x = s.sample(rng);
            let eps = s.sample_increments(rng, &x);
            let y = x.raised(&eps);
            let (rx, ry) = (r.evaluate(&x), r.evaluate(&y));
            note(sink, || {
                format!(
                    "{} eps={eps:?} r(X)={} r(X+eps)={}",
                    x.describe(),
                    rx.value,
                    ry.value
                )
            });
            if unusable(&[rx, ry]) {
                return Outcome::Skip;
            }
            expect_ge(ry.value, rx.value)
        },
    )
}

/// `r(lambda X + (1 - lambda) k) >= min{r(X), r(k)}`.
pub fn check_cash_quasiconcavity<S: Sampler>(
    r: &RankingMetric<S::Position>,
    s: &S,
    trials: usize,
) -> PropertyReport {
    run_trials(
        "cash_quasiconcavity",
        r.name(),
        Expectation::MustHold,
        s.seed(),
        trials,
        |rng, sink| {
            let x = s.sample(rng);
            let k = s.sample_constant(rng, &x);
            let lambda: f64 = rng.gen();
            let m = x.mix_constant(lambda, k);
            let (rx, rk, rm) = (
                r.evaluate(&x),
                r.evaluate(&S::Position::constant(k)),
                r.evaluate(&m),
            );
            note(sink, || {
                format!(
                    "{} k={k} lambda={lambda} r(X)={} r(k)={} r(mix)={}",
                    x.describe(),
                    rx.value,
                    rk.value,
                    rm.value
                )
            });
            if unusable(&[rx, rk, rm]) {
                return Outcome::Skip;
            }
            expect_ge(rm.value, rx.value.min(rk.value))
        },
    )
}

/// `r(lambda X + (1 - lambda) Y) >= min{r(X), r(Y)}`. Metrics that do not
/// declare quasiconcavity are run as a counterexample search.
pub fn check_quasiconcavity<S: Sampler>(
    r: &RankingMetric<S::Position>,
    s: &S,
    trials: usize,
) -> PropertyReport {
    let expectation = if r.declares(Property::Quasiconcave) {
        Expectation::MustHold
    } else {
        Expectation::Falsify
    };
    run_trials(
        "quasiconcavity",
        r.name(),
        expectation,
        s.seed(),
        trials,
        |rng, sink| {
            let (x, y) = s.sample_pair(rng);
            let lambda: f64 = rng.gen();
            let m = x.mix(&y, lambda);
            let (rx, ry, rm) = (r.evaluate(&x), r.evaluate(&y), r.evaluate(&m));
            note(sink, || {
                format!(
                    "{} Y:{} lambda={lambda} r(X)={} r(Y)={} r(mix)={}",
                    x.describe(),
                    y.describe(),
                    rx.value,
                    ry.value,
                    rm.value
                )
            });
            if unusable(&[rx, ry, rm]) {
                return Outcome::Skip;
            }
            expect_ge(rm.value, rx.value.min(ry.value))
        },
    )
}

/// Cash shifts `k >= min_shift`. Without `on_support` checks
/// `r(X + k) <= r(X) + k`; with it checks `r(X + k) = r(X) + k` wherever
/// `r(X) > 0`.
pub fn check_cash_subadditivity<S: Sampler>(
    r: &RankingMetric<S::Position>,
    s: &S,
    trials: usize,
    on_support: bool,
) -> PropertyReport {
    let min_shift = if on_support {
        0.0
    } else {
        r.cash_subadditive_from().unwrap_or(0.0)
    };
    let property = if on_support {
        "cash_additivity_on_support"
    } else {
        "cash_subadditivity"
    };
    run_trials(
        property,
        r.name(),
        Expectation::MustHold,
        s.seed(),
        trials,
        |rng, sink| {
            let x = s.sample(rng);
            let k = s.sample_shift(rng, min_shift);
            let (rx, rk) = (r.evaluate(&x), r.evaluate(&x.shifted(k)));
            note(sink, || {
                format!(
                    "{} k={k} r(X)={} r(X+k)={}",
                    x.describe(),
                    rx.value,
                    rk.value
                )
            });
            if unusable(&[rx, rk]) || (on_support && !(rx.value > 0.0)) {
                return Outcome::Skip;
            }
            let upper = expect_ge(rx.value + k, rk.value);
            if !on_support || !matches!(upper, Outcome::Pass) {
                return upper;
            }
            expect_ge(rk.value, rx.value + k)
        },
    )
}

/// Level sets are cash-convex: `X, k` in `A_x` implies the mixture is in `A_x`.
pub fn check_level_sets<S: Sampler>(
    r: &RankingMetric<S::Position>,
    s: &S,
    trials: usize,
) -> PropertyReport {
    run_trials(
        "level_sets",
        r.name(),
        Expectation::MustHold,
        s.seed(),
        trials,
        |rng, sink| {
            let x = s.sample(rng);
            let k = s.sample_constant(rng, &x);
            let lambda: f64 = rng.gen();
            let c = S::Position::constant(k);
            let (rx, rk) = (r.evaluate(&x), r.evaluate(&c));
            let floor = rx.value.min(rk.value);
            // one level in five lies above both values, an empty premise
            let level = if floor.is_finite() && rng.gen_bool(0.8) {
                rng.gen_range(0.0..=floor)
            } else {
                floor + rng.gen_range(0.0..=1.0)
            };
            let m = x.mix_constant(lambda, k);
            note(sink, || {
                format!("{} k={k} lambda={lambda} level={level}", x.describe())
            });
            if unusable(&[rx, rk])
                || !acceptance_member(&x, level, r)
                || !acceptance_member(&c, level, r)
            {
                return Outcome::Skip;
            }
            let rm = r.evaluate(&m);
            if acceptance_member(&m, level - slack(rm.value, level), r) {
                Outcome::Pass
            } else {
                Outcome::Violation(level - rm.value)
            }
        },
    )
}

/// Every suite implied by the metric's declared properties.
pub fn run_declared_suites<S: Sampler>(
    r: &RankingMetric<S::Position>,
    s: &S,
    trials: usize,
) -> Vec<PropertyReport> {
    let mut out = Vec::new();
    if r.declares(Property::Monotone) {
        out.push(check_monotonicity(r, s, trials));
    }
    if r.declares(Property::CashQuasiconcave) {
        out.push(check_cash_quasiconcavity(r, s, trials));
        out.push(check_level_sets(r, s, trials));
    }
    if r.declares(Property::Quasiconcave) {
        out.push(check_quasiconcavity(r, s, trials));
    }
    if r.cash_subadditive_from().is_some() {
        out.push(check_cash_subadditivity(r, s, trials, false));
    }
    if r.declares(Property::CashAdditiveOnSupport) {
        out.push(check_cash_subadditivity(r, s, trials, true));
    }
    out
}

/// Distribution metrics covered by `verify`: reward-risk ratios, both step
/// directions of Lambda, a piecewise-linear certainty equivalent and a shift metric.
pub fn builtin_dist_metrics() -> Vec<RankingMetric<ScenarioDist>> {
    let two_step = |below, above| LambdaFn::two_step(below, above, 0.0).expect("valid levels");
    vec![
        RankingMetric::glr(),
        RankingMetric::omega(OmegaMode::Infinity),
        RankingMetric::omega(OmegaMode::Zero),
        RankingMetric::raroc(RiskMeasure::CvarHistorical(0.05)).renamed("raroc:cvar:0.05"),
        RankingMetric::lambda_var(two_step(0.55, 0.65)).renamed("lvar:two_step:0.55:0.65:0"),
        RankingMetric::lambda_var(two_step(0.65, 0.55)).renamed("lvar:two_step:0.65:0.55:0"),
        RankingMetric::certainty_equiv(
            UtilityFn::piecewise_linear(0.5, 0.1).expect("valid utility"),
        )
        .renamed("ce:plinear:0.5:0.1"),
        RankingMetric::shift(RiskMeasure::CvarHistorical(0.05)).renamed("shift:cvar:0.05"),
    ]
}

pub fn builtin_profile_metrics() -> Vec<RankingMetric<RankedProfile>> {
    [
        PerfCurveFamily::H,
        PerfCurveFamily::H2,
        PerfCurveFamily::HAlpha(0.5),
        PerfCurveFamily::HAlpha(2.0),
        PerfCurveFamily::W,
    ]
    .into_iter()
    .map(RankingMetric::bibliometric)
    .collect()
}

/// `max(0, -E[X])`: anti-monotone, used to prove the suites can fail.
pub fn planted_antimonotone() -> RankingMetric<ScenarioDist> {
    RankingMetric::new(
        "planted_antimonotone",
        vec![Property::Monotone],
        |d: &ScenarioDist| MetricValue::truncated(-d.expectation()),
    )
}

/// Monotonicity suite on the planted metric; passes only if it finds violations.
pub fn harness_self_test(seed: u64, trials: usize) -> PropertyReport {
    check_monotonicity_as(
        &planted_antimonotone(),
        &DistSampler::new(seed),
        trials,
        Expectation::MustFail,
    )
}
