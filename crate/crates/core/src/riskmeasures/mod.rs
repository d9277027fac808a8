//! Risk functionals `rho` that generate ranking metrics.
//!
//! Sign convention: `rho(X) <= 0` means the position is acceptable, and every
//! functional here is decreasing in the position.

mod curves;
mod family;
mod lambda;
mod student_t;

pub use curves::{LossFn, PiecewiseLinear, UtilityFn};
pub use family::{ExpectileSchedule, RiskFamily};
pub use lambda::{lambda_quantile, lambda_var, LambdaFn, LambdaQuantile};
pub use student_t::{cvar_student_t, fit_student_t, student_t_cvar, StudentTFit, TCvar};

use crate::scenarios::ScenarioDist;

const EXPECTILE_TOL: f64 = 1e-10;

/// `VaR_alpha(X) = -quantile(X, alpha)` with the left-continuous quantile.
pub fn var(d: &ScenarioDist, alpha: f64) -> f64 {
    -d.quantile(alpha)
}

/// Historical CVaR: minus the average of the lower `alpha` tail, taking the
/// boundary atom fractionally.
pub fn cvar_historical(d: &ScenarioDist, alpha: f64) -> f64 {
    let mut tail = 0.0;
    let mut prev = 0.0;
    for (&x, &cum) in d.outcomes().iter().zip(d.cumulative()) {
        let mass = cum.min(alpha) - prev;
        if mass > 0.0 {
            tail += mass * x;
        }
        if cum >= alpha {
            break;
        }
        prev = cum;
    }
    -tail / alpha
}

/// `g(y) = p E[(X - y)^+] - (1 - p) E[(X - y)^-]`, strictly decreasing in `y`.
fn expectile_gap(d: &ScenarioDist, p: f64, y: f64) -> f64 {
    d.weighted_sum(|x| {
        let z = x - y;
        if z > 0.0 {
            p * z
        } else {
            (1.0 - p) * z
        }
    })
}

/// The `p`-expectile of `X`, found by bisection on `[min, max]`.
pub fn expectile(d: &ScenarioDist, p: f64) -> f64 {
    let (mut lo, mut hi) = (d.min(), d.max());
    while hi - lo > EXPECTILE_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if expectile_gap(d, p, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `EVaR^p(X) = -expectile_p(X)`.
pub fn evar_expectile(d: &ScenarioDist, p: f64) -> f64 {
    -expectile(d, p)
}

/// `E[f(-X)]`.
pub fn expected_loss(d: &ScenarioDist, f: &LossFn) -> f64 {
    d.weighted_sum(|x| f.eval(-x))
}

/// Certainty equivalent `u^{-1}(E[u(X)])`.
pub fn certainty_equivalent(d: &ScenarioDist, u: &UtilityFn) -> f64 {
    let eu = d.weighted_sum(|x| u.eval(x));
    u.inverse(eu, (d.min(), d.max()))
}

/// `-u^{-1}(E[u(X)])`.
pub fn certainty_equiv_rho(d: &ScenarioDist, u: &UtilityFn) -> f64 {
    -certainty_equivalent(d, u)
}

/// A named built-in risk functional.
#[derive(Debug, Clone, PartialEq)]
pub enum RiskMeasure {
    /// `-E[X]`.
    NegExpectation,
    Var(f64),
    CvarHistorical(f64),
    CvarStudentT(f64),
    Expectile(f64),
    LambdaVar(LambdaFn),
    ExpectedLoss(LossFn),
    CertaintyEquivalent(UtilityFn),
}

impl RiskMeasure {
    /// `None` when the functional is undefined on `d` (Lambda-quantile with no
    /// qualifying outcome, or a failed parametric fit).
    pub fn evaluate(&self, d: &ScenarioDist) -> Option<f64> {
        match self {
            RiskMeasure::NegExpectation => Some(-d.expectation()),
            RiskMeasure::Var(a) => Some(var(d, *a)),
            RiskMeasure::CvarHistorical(a) => Some(cvar_historical(d, *a)),
            RiskMeasure::CvarStudentT(a) => cvar_student_t(d, *a).ok().map(|t| t.value),
            RiskMeasure::Expectile(p) => Some(evar_expectile(d, *p)),
            RiskMeasure::LambdaVar(l) => lambda_var(d, l).value(),
            RiskMeasure::ExpectedLoss(f) => Some(expected_loss(d, f)),
            RiskMeasure::CertaintyEquivalent(u) => Some(certainty_equiv_rho(d, u)),
        }
    }

    /// `rho(X + c) = rho(X) - c` holds exactly.
    pub fn is_cash_additive(&self) -> bool {
        match self {
            RiskMeasure::LambdaVar(l) => l.constant_level().is_some(),
            RiskMeasure::ExpectedLoss(f) => matches!(f, LossFn::Identity),
            RiskMeasure::CertaintyEquivalent(u) => matches!(u, UtilityFn::Identity),
            _ => true,
        }
    }

    /// `rho(X + c) >= rho(X) - c` for `c >= 0`.
    pub fn is_cash_subadditive(&self) -> bool {
        match self {
            RiskMeasure::LambdaVar(l) => l.is_nonincreasing(),
            other => other.is_cash_additive(),
        }
    }
}
