//! Ranking metrics: maps from positions to performance levels in `[0, inf]`.

mod keys;

pub use keys::{parse_metric_key, CeTheta, MetricSpec, RiskSpec};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::riskmeasures::{
    certainty_equivalent, lambda_quantile, LambdaFn, LambdaQuantile, RiskFamily, RiskMeasure,
    UtilityFn,
};
use crate::scenarios::ScenarioDist;

pub const DEFAULT_BRACKET_MAX: f64 = 1e6;
pub const DEFAULT_FAMILY_TOL: f64 = 1e-8;
const FAMILY_MONOTONE_SLACK: f64 = 1e-9;

/// Which branch of a metric's case split produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// A finite ratio such as `E[X] / E[X^-]`.
    Ratio,
    /// Expected return was not positive.
    NonPositiveMean,
    /// Denominator vanished with a positive numerator.
    ZeroDenominator,
    /// The risk functional was `<= 0` (RAROC's infinite branch).
    NonPositiveRisk,
    /// A monetary value `sup{0, v}` with `v > 0`.
    Positive,
    /// A monetary value `sup{0, v}` truncated to zero.
    Truncated,
    /// Underlying functional undefined on this position.
    Undefined,
    /// Bisection hit the upper end of the level bracket.
    RightCensored,
    /// Level found by bisection on a risk family.
    Bisection,
    /// Integer level of a performance-curve index.
    Level,
    Constant,
}

/// A value in `[0, inf]` with the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricValue {
    pub value: f64,
    pub provenance: Provenance,
}

impl MetricValue {
    pub fn new(value: f64, provenance: Provenance) -> Self {
        debug_assert!(value >= 0.0, "metric values are nonnegative, got {value}");
        Self { value, provenance }
    }

    pub fn infinite(provenance: Provenance) -> Self {
        Self::new(f64::INFINITY, provenance)
    }

    pub fn undefined() -> Self {
        Self::new(0.0, Provenance::Undefined)
    }

    /// `sup{0, v}` tagged by the branch taken.
    pub fn truncated(v: f64) -> Self {
        if v > 0.0 {
            Self::new(v, Provenance::Positive)
        } else {
            Self::new(0.0, Provenance::Truncated)
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    pub fn is_undefined(&self) -> bool {
        self.provenance == Provenance::Undefined
    }
}

/// `a >= b - slack` over the extended reals (`inf >= anything`).
pub fn ge_with_slack(a: f64, b: f64, slack: f64) -> bool {
    a == f64::INFINITY || (b != f64::INFINITY && a >= b - slack)
}

/// Properties a metric claims; the axiom harness decides which suites must pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Property {
    Monotone,
    CashQuasiconcave,
    Quasiconcave,
    /// `r(X + k) <= r(X) + k` for every `k >= min_shift`.
    CashSubadditive {
        min_shift: f64,
    },
    CashAdditiveOnSupport,
    ScaleInvariant,
}

type Evaluator<P> = dyn Fn(&P) -> MetricValue + Send + Sync;

/// A named ranking metric over positions of type `P`.
pub struct RankingMetric<P = ScenarioDist> {
    name: String,
    properties: Vec<Property>,
    evaluator: Arc<Evaluator<P>>,
}

impl<P> Clone for RankingMetric<P> {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            properties: self.properties.clone(),
            evaluator: Arc::clone(&self.evaluator),
        }
    }
}

impl<P> fmt::Debug for RankingMetric<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RankingMetric")
            .field("name", &self.name)
            .field("properties", &self.properties)
            .finish()
    }
}

impl<P> RankingMetric<P> {
    pub fn new(
        name: impl Into<String>,
        properties: Vec<Property>,
        evaluator: impl Fn(&P) -> MetricValue + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            properties,
            evaluator: Arc::new(evaluator),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn properties(&self) -> &[Property] {
        &self.properties
    }

    pub fn declares(&self, p: Property) -> bool {
        self.properties.iter().any(|q| match (q, &p) {
            (Property::CashSubadditive { .. }, Property::CashSubadditive { .. }) => true,
            _ => *q == p,
        })
    }

    /// Smallest cash shift covered by a cash-subadditivity claim.
    pub fn cash_subadditive_from(&self) -> Option<f64> {
        self.properties.iter().find_map(|q| match q {
            Property::CashSubadditive { min_shift } => Some(*min_shift),
            _ => None,
        })
    }

    pub fn evaluate(&self, position: &P) -> MetricValue {
        (self.evaluator)(position)
    }
}

/// Normalization of Omega when `E[X^-] = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaMode {
    Zero,
    #[default]
    Infinity,
}

/// Gain-loss ratio: `E[X] / E[X^-]` if `E[X] > 0`, else 0; `+inf` when the
/// mean is positive and there is no downside.
pub fn glr(d: &ScenarioDist) -> MetricValue {
    let mean = d.expectation();
    if !(mean > 0.0) {
        return MetricValue::new(0.0, Provenance::NonPositiveMean);
    }
    let downside = d.neg_part_expectation();
    if downside > 0.0 {
        MetricValue::new(mean / downside, Provenance::Ratio)
    } else {
        MetricValue::infinite(Provenance::ZeroDenominator)
    }
}

/// Omega ratio `E[X^+] / E[X^-]`, normalized by `mode` when `E[X^-] = 0`.
pub fn omega(d: &ScenarioDist, mode: OmegaMode) -> MetricValue {
    let downside = d.neg_part_expectation();
    if downside > 0.0 {
        MetricValue::new(d.pos_part_expectation() / downside, Provenance::Ratio)
    } else {
        match mode {
            OmegaMode::Zero => MetricValue::new(0.0, Provenance::ZeroDenominator),
            OmegaMode::Infinity => MetricValue::infinite(Provenance::ZeroDenominator),
        }
    }
}

/// RAROC: `E[X] / rho(X)` when both are positive, 0 when `E[X] <= 0 < rho(X)`,
/// `+inf` when `rho(X) <= 0`.
pub fn raroc(d: &ScenarioDist, rho: &RiskMeasure) -> MetricValue {
    let Some(risk) = rho.evaluate(d) else {
        return MetricValue::undefined();
    };
    if risk <= 0.0 {
        return MetricValue::infinite(Provenance::NonPositiveRisk);
    }
    let mean = d.expectation();
    if mean > 0.0 {
        MetricValue::new(mean / risk, Provenance::Ratio)
    } else {
        MetricValue::new(0.0, Provenance::NonPositiveMean)
    }
}

/// `sup{0, q_Lambda(X)}`; an undefined quantile maps to 0 flagged `Undefined`.
pub fn r_lambda_var(d: &ScenarioDist, lambda: &LambdaFn) -> MetricValue {
    match lambda_quantile(d, lambda) {
        LambdaQuantile::Attained(q) => MetricValue::truncated(q),
        LambdaQuantile::Undefined => MetricValue::undefined(),
    }
}

/// `sup{0, u^{-1}(E[u(X)])}`.
pub fn r_certainty_equiv(d: &ScenarioDist, u: &UtilityFn) -> MetricValue {
    MetricValue::truncated(certainty_equivalent(d, u))
}

/// `sup{0, -rho(X)}`, the metric induced by the shift family `rho + x`.
pub fn r_shift(d: &ScenarioDist, rho: &RiskMeasure) -> MetricValue {
    rho.evaluate(d)
        .map_or_else(MetricValue::undefined, |v| MetricValue::truncated(-v))
}

/// `sup{x > 0 : rho_x(X) <= 0}` by bisection on the level.
///
/// Returns 0 when `rho_tol(X) > 0`, `bracket_max` flagged `RightCensored` when
/// `rho_{bracket_max}(X) <= 0`, and otherwise a level `x*` with
/// `rho_{x*} <= 0 < rho_{x* + tol}`.
pub fn r_from_family(
    d: &ScenarioDist,
    fam: &RiskFamily,
    bracket_max: f64,
    tol: f64,
) -> Result<MetricValue> {
    if !(tol > 0.0) {
        return Err(Error::param("tol", "must be positive"));
    }
    if !(bracket_max > tol) {
        return Err(Error::param("bracket_max", "must exceed tol"));
    }
    let eval = |x: f64| fam.evaluate(x, d);
    let (Some(mut rho_lo), Some(mut rho_hi)) = (eval(tol), eval(bracket_max)) else {
        return Ok(MetricValue::undefined());
    };
    let not_increasing = |lo_level, lo_value, hi_level, hi_value| Error::FamilyNotIncreasing {
        lo_level,
        lo_value,
        hi_level,
        hi_value,
    };
    // both ends acceptable: the level set covers the bracket whatever the slope,
    // as for RAROC families with a negative risk
    if rho_lo <= 0.0 && rho_hi <= 0.0 {
        return Ok(MetricValue::new(bracket_max, Provenance::RightCensored));
    }
    if rho_hi < rho_lo - FAMILY_MONOTONE_SLACK {
        return Err(not_increasing(tol, rho_lo, bracket_max, rho_hi));
    }
    if rho_lo > 0.0 {
        return Ok(MetricValue::new(0.0, Provenance::Truncated));
    }
    let (mut lo, mut hi) = (tol, bracket_max);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let Some(rho_mid) = eval(mid) else {
            return Ok(MetricValue::undefined());
        };
        if rho_mid < rho_lo - FAMILY_MONOTONE_SLACK {
            return Err(not_increasing(lo, rho_lo, mid, rho_mid));
        }
        if rho_mid > rho_hi + FAMILY_MONOTONE_SLACK {
            return Err(not_increasing(mid, rho_mid, hi, rho_hi));
        }
        if rho_mid <= 0.0 {
            lo = mid;
            rho_lo = rho_mid;
        } else {
            hi = mid;
            rho_hi = rho_mid;
        }
    }
    Ok(MetricValue::new(lo, Provenance::Bisection))
}

/// Membership in the upper level set `A_x = {X : r(X) >= x}`.
pub fn acceptance_member<P>(position: &P, level: f64, r: &RankingMetric<P>) -> bool {
    r.evaluate(position).value >= level
}

use Property::*;

impl RankingMetric<ScenarioDist> {
    pub fn glr() -> Self {
        Self::new(
            "glr",
            vec![Monotone, CashQuasiconcave, Quasiconcave, ScaleInvariant],
            glr,
        )
    }

    /// Omega is cash-quasiconcave but not quasiconcave. The zero mode sends
    /// loss-free positions to 0, which breaks monotonicity.
    pub fn omega(mode: OmegaMode) -> Self {
        let (name, props) = match mode {
            OmegaMode::Zero => ("omega:zero", vec![CashQuasiconcave, ScaleInvariant]),
            OmegaMode::Infinity => ("omega", vec![Monotone, CashQuasiconcave, ScaleInvariant]),
        };
        Self::new(name, props, move |d| omega(d, mode))
    }

    pub fn raroc(rho: RiskMeasure) -> Self {
        let mut props = vec![Monotone, CashQuasiconcave];
        // coherent choices only
        if matches!(rho, RiskMeasure::CvarHistorical(_)) {
            props.extend([Quasiconcave, ScaleInvariant]);
        }
        Self::new(format!("raroc({rho:?})"), props, move |d| raroc(d, &rho))
    }

    pub fn lambda_var(lambda: LambdaFn) -> Self {
        let mut props = vec![Monotone, CashQuasiconcave];
        if lambda.is_nonincreasing() {
            props.push(CashSubadditive { min_shift: 0.0 });
        }
        Self::new("r_lambda_var", props, move |d| r_lambda_var(d, &lambda))
    }

    pub fn certainty_equiv(u: UtilityFn) -> Self {
        let mut props = vec![Monotone, CashQuasiconcave, Quasiconcave];
        if u == UtilityFn::Identity {
            props.push(CashAdditiveOnSupport);
        }
        Self::new("r_certainty_equiv", props, move |d| {
            r_certainty_equiv(d, &u)
        })
    }

    /// `sup{0, -rho}` for a built-in risk measure.
    pub fn shift(rho: RiskMeasure) -> Self {
        let mut props = vec![Monotone, CashQuasiconcave];
        if rho.is_cash_additive() {
            props.push(CashAdditiveOnSupport);
        }
        if rho.is_cash_subadditive() {
            props.push(CashSubadditive { min_shift: 0.0 });
        }
        Self::new(format!("shift({rho:?})"), props, move |d| r_shift(d, &rho))
    }

    /// Metric generated by a risk family through level bisection. Errors from a
    /// non-monotone family surface as `Undefined` values.
    pub fn from_family(fam: RiskFamily, bracket_max: f64, tol: f64) -> Self {
        Self::new(
            format!("family({})", fam.name()),
            vec![Monotone],
            move |d| {
                r_from_family(d, &fam, bracket_max, tol)
                    .unwrap_or_else(|_| MetricValue::undefined())
            },
        )
    }

    pub fn constant(value: f64) -> Self {
        Self::new(
            format!("constant({value})"),
            vec![Monotone, CashQuasiconcave, Quasiconcave],
            move |_| MetricValue::new(value, Provenance::Constant),
        )
    }
}
