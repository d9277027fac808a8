use std::fmt;
use std::sync::Arc;

use super::{evar_expectile, expected_loss, lambda_var, LambdaFn, LossFn, RiskMeasure};
use crate::scenarios::ScenarioDist;

type LevelEvaluator = dyn Fn(f64, &ScenarioDist) -> Option<f64> + Send + Sync;

/// Level-indexed family `x -> rho_x` of risk functionals.
///
/// `monotone_certificate` declares that `rho_x(X)` is nondecreasing in `x`; the
/// axiom harness checks the declaration empirically.
#[derive(Clone)]
pub struct RiskFamily {
    name: String,
    evaluator: Arc<LevelEvaluator>,
    monotone_certificate: bool,
}

impl fmt::Debug for RiskFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RiskFamily")
            .field("name", &self.name)
            .field("monotone_certificate", &self.monotone_certificate)
            .finish()
    }
}

/// Level schedule `p(x) = 1 / (offset + x)` for expectile families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectileSchedule {
    pub offset: f64,
}

impl ExpectileSchedule {
    pub fn level(&self, x: f64) -> f64 {
        1.0 / (self.offset + x)
    }
}

impl RiskFamily {
    pub fn custom(
        name: impl Into<String>,
        monotone_certificate: bool,
        evaluator: impl Fn(f64, &ScenarioDist) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            evaluator: Arc::new(evaluator),
            monotone_certificate,
        }
    }

    /// `rho_x = rho + x`.
    pub fn shift(rho: RiskMeasure) -> Self {
        let name = format!("shift({rho:?})");
        Self::custom(name, true, move |x, d| rho.evaluate(d).map(|v| v + x))
    }

    /// `rho_x = -E[X] + x rho(X)`; nondecreasing in `x` wherever `rho(X) >= 0`.
    pub fn raroc(rho: RiskMeasure) -> Self {
        let name = format!("raroc({rho:?})");
        Self::custom(name, true, move |x, d| {
            rho.evaluate(d).map(|v| -d.expectation() + x * v)
        })
    }

    /// `rho_x = EVaR^{p(x)}` with `p(x) = 1 / (offset + x)`.
    ///
    /// With `offset = 1` the induced metric is Omega; with `offset = 2` it is
    /// Omega minus one.
    pub fn expectile(schedule: ExpectileSchedule) -> Self {
        let name = format!("expectile(1/({}+x))", schedule.offset);
        Self::custom(name, true, move |x, d| {
            let p = schedule.level(x);
            (p > 0.0 && p < 1.0).then(|| evar_expectile(d, p))
        })
    }

    /// `rho_x = E[f_x(-X)]`.
    pub fn expected_loss(curves: impl Fn(f64) -> LossFn + Send + Sync + 'static) -> Self {
        Self::custom("expected_loss", true, move |x, d| {
            Some(expected_loss(d, &curves(x)))
        })
    }

    /// `rho_x = LambdaVaR` under the level function `Lambda^x`.
    pub fn lambda_levels(levels: impl Fn(f64) -> LambdaFn + Send + Sync + 'static) -> Self {
        Self::custom("lambda_levels", true, move |x, d| {
            lambda_var(d, &levels(x)).value()
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn monotone_certificate(&self) -> bool {
        self.monotone_certificate
    }

    pub fn evaluate(&self, level: f64, d: &ScenarioDist) -> Option<f64> {
        (self.evaluator)(level, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_family_adds_level() {
        let d = ScenarioDist::equal_weight(&[-1.0, 3.0]).unwrap();
        let fam = RiskFamily::shift(RiskMeasure::NegExpectation);
        assert_eq!(fam.evaluate(0.5, &d), Some(-0.5));
        assert!(fam.monotone_certificate());
    }

    #[test]
    fn expectile_schedule_levels() {
        let s = ExpectileSchedule { offset: 2.0 };
        assert_eq!(s.level(0.0), 0.5);
        assert_eq!(s.level(2.0), 0.25);
    }

    #[test]
    fn builtin_families_are_monotone_on_grid() {
        let d = ScenarioDist::equal_weight(&[-1.5, -0.2, 0.4, 1.0, 2.2]).unwrap();
        let families = [
            RiskFamily::shift(RiskMeasure::CvarHistorical(0.05)),
            RiskFamily::raroc(RiskMeasure::CvarHistorical(0.5)),
            RiskFamily::expectile(ExpectileSchedule { offset: 1.0 }),
            RiskFamily::expectile(ExpectileSchedule { offset: 2.0 }),
            RiskFamily::expected_loss(|x| LossFn::Put { strike: x }),
            RiskFamily::lambda_levels(|x| LambdaFn::constant(0.9 / (1.0 + x)).unwrap()),
        ];
        for fam in &families {
            let values: Vec<f64> = (1..=50)
                .map(|i| fam.evaluate(i as f64 * 0.2, &d).unwrap())
                .collect();
            assert!(
                values.windows(2).all(|w| w[0] <= w[1] + 1e-9),
                "{}: {values:?}",
                fam.name()
            );
        }
    }
}
