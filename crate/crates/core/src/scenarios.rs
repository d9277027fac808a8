//! Finite empirical distributions of a real-valued position.
//!
//! A [`ScenarioDist`] holds a finite list of payoffs with explicit probabilities.
//! Outcomes are kept sorted ascending (with the original state order remembered)
//! so that CDF, quantile and tail computations are single scans.

use crate::error::{Error, Result};

const PROB_SUM_TOL: f64 = 1e-12;

/// Finite discrete law of a payoff `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioDist {
    // sorted ascending
    outcomes: Vec<f64>,
    probs: Vec<f64>,
    // cumulative probabilities aligned with `outcomes`; the last entry is exactly 1
    cumulative: Vec<f64>,
    // permutation[i] = original state index of sorted outcome i
    permutation: Vec<usize>,
    equal_weights: bool,
}

impl ScenarioDist {
    /// Builds a distribution from outcomes and matching probabilities.
    pub fn new(outcomes: Vec<f64>, probabilities: Vec<f64>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        if outcomes.len() != probabilities.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} outcomes but {} probabilities",
                outcomes.len(),
                probabilities.len()
            )));
        }
        if let Some(x) = outcomes.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidDistribution(format!(
                "non-finite outcome {x}"
            )));
        }
        if let Some(p) = probabilities
            .iter()
            .find(|p| !(**p > 0.0) || !p.is_finite())
        {
            return Err(Error::InvalidDistribution(format!(
                "probability {p} is not strictly positive"
            )));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(Self::assemble(outcomes, probabilities, false))
    }

    /// Equal-weight distribution over a historical sample.
    pub fn equal_weight(sample: &[f64]) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        if let Some(x) = sample.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidDistribution(format!(
                "non-finite outcome {x}"
            )));
        }
        let p = 1.0 / sample.len() as f64;
        Ok(Self::assemble(sample.to_vec(), vec![p; sample.len()], true))
    }

    /// The sure payoff `c`.
    pub fn degenerate(c: f64) -> Self {
        Self::assemble(vec![c], vec![1.0], true)
    }

    fn assemble(outcomes: Vec<f64>, probs: Vec<f64>, equal_weights: bool) -> Self {
        let n = outcomes.len();
        let mut permutation: Vec<usize> = (0..n).collect();
        permutation.sort_by(|&a, &b| outcomes[a].total_cmp(&outcomes[b]).then(a.cmp(&b)));
        let sorted: Vec<f64> = permutation.iter().map(|&i| outcomes[i]).collect();
        let sorted_probs: Vec<f64> = permutation.iter().map(|&i| probs[i]).collect();
        let cumulative = if equal_weights {
            (1..=n).map(|k| k as f64 / n as f64).collect()
        } else {
            let mut acc = 0.0;
            let mut cum: Vec<f64> = sorted_probs
                .iter()
                .map(|p| {
                    acc += p;
                    acc
                })
                .collect();
            cum[n - 1] = 1.0;
            cum
        };
        Self {
            outcomes: sorted,
            probs: sorted_probs,
            cumulative,
            permutation,
            equal_weights,
        }
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Outcomes sorted ascending.
    pub fn outcomes(&self) -> &[f64] {
        &self.outcomes
    }

    /// Probabilities aligned with [`outcomes`](Self::outcomes).
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// Cumulative probabilities aligned with the sorted outcomes.
    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn is_equal_weight(&self) -> bool {
        self.equal_weights
    }

    /// Outcomes in the order the states were supplied.
    pub fn state_outcomes(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for (sorted_idx, &state) in self.permutation.iter().enumerate() {
            out[state] = self.outcomes[sorted_idx];
        }
        out
    }

    /// Probabilities in the order the states were supplied.
    pub fn state_probabilities(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for (sorted_idx, &state) in self.permutation.iter().enumerate() {
            out[state] = self.probs[sorted_idx];
        }
        out
    }

    /// Applies `f(state, outcome)` statewise, keeping probabilities.
    pub fn map_states(&self, mut f: impl FnMut(usize, f64) -> f64) -> Self {
        let outcomes: Vec<f64> = self
            .state_outcomes()
            .into_iter()
            .enumerate()
            .map(|(i, x)| f(i, x))
            .collect();
        Self::assemble(outcomes, self.state_probabilities(), self.equal_weights)
    }

    pub fn min(&self) -> f64 {
        self.outcomes[0]
    }

    pub fn max(&self) -> f64 {
        self.outcomes[self.len() - 1]
    }

    /// `E[X]`.
    pub fn expectation(&self) -> f64 {
        self.weighted_sum(|x| x)
    }

    /// `E[max(X, 0)]`.
    pub fn pos_part_expectation(&self) -> f64 {
        self.weighted_sum(|x| x.max(0.0))
    }

    /// `E[max(-X, 0)]`.
    pub fn neg_part_expectation(&self) -> f64 {
        self.weighted_sum(|x| (-x).max(0.0))
    }

    /// `E[g(X)]`.
    pub fn weighted_sum(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.outcomes
            .iter()
            .zip(&self.probs)
            .map(|(&x, &p)| p * g(x))
            .sum()
    }

    /// Probability-weighted variance.
    pub fn variance(&self) -> f64 {
        let mean = self.expectation();
        self.weighted_sum(|x| (x - mean).powi(2))
    }

    /// `P(X <= y)`.
    pub fn empirical_cdf(&self, y: f64) -> f64 {
        let k = self.outcomes.partition_point(|&x| x <= y);
        if k == 0 {
            0.0
        } else {
            self.cumulative[k - 1]
        }
    }

    /// Left-continuous inverse `inf{y : P(X <= y) >= alpha}`.
    ///
    /// `alpha` outside `(0, 1)` is clamped to the support edges.
    pub fn quantile(&self, alpha: f64) -> f64 {
        let i = self.cumulative.partition_point(|&c| c < alpha);
        self.outcomes[i.min(self.len() - 1)]
    }

    /// Outcomes `a * x + b`.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        self.map_states(|_, x| a * x + b)
    }

    /// Outcomes `x + c`.
    pub fn shift(&self, c: f64) -> Self {
        self.affine(1.0, c)
    }

    /// Outcomes `lambda * x + (1 - lambda) * k`.
    pub fn mix_with_constant(&self, lambda: f64, k: f64) -> Self {
        self.map_states(|_, x| lambda * x + (1.0 - lambda) * k)
    }

    /// Comonotone mixture `lambda * X + (1 - lambda) * Y`.
    ///
    /// Both distributions must live on the same probability grid: equal length and
    /// matching sorted probabilities. Outcomes are paired by rank.
    pub fn mix_comonotone(&self, other: &Self, lambda: f64) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot mix distributions with {} and {} outcomes",
                self.len(),
                other.len()
            )));
        }
        if self
            .probs
            .iter()
            .zip(&other.probs)
            .any(|(a, b)| (a - b).abs() > PROB_SUM_TOL)
        {
            return Err(Error::DimensionMismatch(
                "distributions do not share a probability grid".into(),
            ));
        }
        let outcomes = self
            .outcomes
            .iter()
            .zip(&other.outcomes)
            .map(|(x, y)| lambda * x + (1.0 - lambda) * y)
            .collect();
        Ok(Self::assemble(
            outcomes,
            self.probs.clone(),
            self.equal_weights,
        ))
    }

    /// Distinct outcomes with the CDF value at each, ascending.
    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.len();
        (0..n)
            .filter(move |&i| i + 1 == n || self.outcomes[i + 1] != self.outcomes[i])
            .map(move |i| (self.outcomes[i], self.cumulative[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym4() -> ScenarioDist {
        ScenarioDist::equal_weight(&[-2.0, -1.0, 1.0, 2.0]).unwrap()
    }

    #[test]
    fn expectation_fixtures() {
        assert_eq!(
            ScenarioDist::equal_weight(&[-1.0, 3.0])
                .unwrap()
                .expectation(),
            1.0
        );
        assert_eq!(ScenarioDist::degenerate(4.5).expectation(), 4.5);
        assert_eq!(sym4().expectation(), 0.0);
    }

    #[test]
    fn part_expectations() {
        let d = ScenarioDist::equal_weight(&[-1.0, 3.0]).unwrap();
        assert_eq!(d.pos_part_expectation(), 1.5);
        assert_eq!(d.neg_part_expectation(), 0.5);
        let d = ScenarioDist::equal_weight(&[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(d.neg_part_expectation(), 0.0);
        assert_eq!(sym4().pos_part_expectation(), 0.75);
        assert_eq!(sym4().neg_part_expectation(), 0.75);
    }

    #[test]
    fn cdf_and_quantile() {
        let d = sym4();
        assert_eq!(d.empirical_cdf(-1.0), 0.5);
        assert_eq!(d.empirical_cdf(-2.5), 0.0);
        assert_eq!(d.empirical_cdf(2.0), 1.0);
        assert_eq!(d.empirical_cdf(7.0), 1.0);
        assert_eq!(d.quantile(0.25), -2.0);
        assert_eq!(d.quantile(0.5), -1.0);
        assert_eq!(d.quantile(0.51), 1.0);
        let c = ScenarioDist::degenerate(3.0);
        for a in [0.01, 0.5, 0.99] {
            assert_eq!(c.quantile(a), 3.0);
        }
    }

    #[test]
    fn affine_and_mix() {
        let d = ScenarioDist::equal_weight(&[-1.0, 3.0]).unwrap();
        assert_eq!(d.mix_with_constant(1.0, 9.0).outcomes(), d.outcomes());
        assert_eq!(d.mix_with_constant(0.0, 5.0).outcomes(), &[5.0, 5.0]);
        assert_eq!(d.affine(2.0, 1.0).outcomes(), &[-1.0, 7.0]);
    }

    #[test]
    fn state_order_is_preserved() {
        let d = ScenarioDist::new(vec![3.0, -1.0, 2.0], vec![0.2, 0.5, 0.3]).unwrap();
        assert_eq!(d.outcomes(), &[-1.0, 2.0, 3.0]);
        assert_eq!(d.state_outcomes(), vec![3.0, -1.0, 2.0]);
        assert_eq!(d.state_probabilities(), vec![0.2, 0.5, 0.3]);
        let e = d.map_states(|i, x| if i == 1 { x + 10.0 } else { x });
        assert_eq!(e.state_outcomes(), vec![3.0, 9.0, 2.0]);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(ScenarioDist::new(vec![], vec![]).is_err());
        assert!(ScenarioDist::new(vec![1.0], vec![0.5]).is_err());
        assert!(ScenarioDist::new(vec![1.0, 2.0], vec![1.0, 0.0]).is_err());
        assert!(ScenarioDist::new(vec![1.0, 2.0], vec![1.0]).is_err());
        assert!(ScenarioDist::equal_weight(&[f64::NAN]).is_err());
    }

    #[test]
    fn comonotone_mix_requires_common_grid() {
        let a = ScenarioDist::equal_weight(&[1.0, 0.0]).unwrap();
        let b = ScenarioDist::equal_weight(&[2.0, 4.0]).unwrap();
        let m = a.mix_comonotone(&b, 0.5).unwrap();
        assert_eq!(m.outcomes(), &[1.0, 2.5]);
        let c = ScenarioDist::equal_weight(&[1.0]).unwrap();
        assert!(a.mix_comonotone(&c, 0.5).is_err());
    }

    fn arb_dist() -> impl Strategy<Value = ScenarioDist> {
        prop::collection::vec((-10.0f64..10.0, 0.01f64..1.0), 1..30).prop_map(|v| {
            let total: f64 = v.iter().map(|(_, p)| p).sum();
            let (xs, ps): (Vec<f64>, Vec<f64>) = v.into_iter().map(|(x, p)| (x, p / total)).unzip();
            ScenarioDist::new(xs, ps).unwrap()
        })
    }

    proptest! {
        #[test]
        fn mixing_is_affine_in_expectation(d in arb_dist(), lambda in 0.0f64..=1.0, k in -10.0f64..10.0) {
            let lhs = d.mix_with_constant(lambda, k).expectation();
            let rhs = lambda * d.expectation() + (1.0 - lambda) * k;
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }

        #[test]
        fn parts_recombine(d in arb_dist()) {
            let diff = d.pos_part_expectation() - d.neg_part_expectation();
            prop_assert!((diff - d.expectation()).abs() <= 1e-12);
        }

        #[test]
        fn cdf_nondecreasing(d in arb_dist()) {
            let (lo, hi) = (d.min() - 1.0, d.max() + 1.0);
            let mut prev = 0.0;
            for i in 0..100 {
                let y = lo + (hi - lo) * i as f64 / 99.0;
                let c = d.empirical_cdf(y);
                prop_assert!(c >= prev);
                prev = c;
            }
            prop_assert_eq!(prev, 1.0);
        }

        #[test]
        fn quantile_nondecreasing(d in arb_dist(), a in 0.001f64..0.999, b in 0.001f64..0.999) {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(d.quantile(a) <= d.quantile(b));
        }
    }
}
