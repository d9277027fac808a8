//! String keys addressing metrics, e.g. `glr`, `raroc:cvar:0.05`,
//! `lvar:two_step:0.55:0.65`, `ce:plinear:0.75q:0.1`, `family:shift:cvar:0.05`, `h2`.
//!
//! ```text
//! key      := "glr" | "omega" [":" ("zero" | "infinity")]
//!           | "raroc:" risk | "shift:" risk
//!           | "lvar:const:" level | "lvar:two_step:" below ":" above [":" threshold]
//!           | "ce:identity" | "ce:plinear:" theta ":" m
//!           | "family:shift:" risk | "family:raroc:" risk | "family:expectile:" offset
//!           | "h" | "h2" | "halpha:" alpha | "w"
//! risk     := ("var" | "cvar" | "tcvar" | "evar") ":" level | "mean"
//! theta    := number | number "q"        (a trailing q means a quantile of the position)
//! ```
//!
//! A two-step key without a threshold takes it from pooled data at the midpoint
//! level `(below + above) / 2`.

use super::{OmegaMode, RankingMetric, DEFAULT_BRACKET_MAX, DEFAULT_FAMILY_TOL};
use crate::bibliometric::PerfCurveFamily;
use crate::error::{Error, Result};
use crate::riskmeasures::{ExpectileSchedule, LambdaFn, RiskFamily, RiskMeasure, UtilityFn};
use crate::scenarios::ScenarioDist;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RiskSpec {
    Mean,
    Var(f64),
    Cvar(f64),
    TCvar(f64),
    Evar(f64),
}

impl RiskSpec {
    pub fn measure(&self) -> RiskMeasure {
        match *self {
            RiskSpec::Mean => RiskMeasure::NegExpectation,
            RiskSpec::Var(a) => RiskMeasure::Var(a),
            RiskSpec::Cvar(a) => RiskMeasure::CvarHistorical(a),
            RiskSpec::TCvar(a) => RiskMeasure::CvarStudentT(a),
            RiskSpec::Evar(p) => RiskMeasure::Expectile(p),
        }
    }
}

/// Threshold of the piecewise-linear utility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CeTheta {
    Absolute(f64),
    /// Quantile of the evaluated position at this level.
    Quantile(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MetricSpec {
    Glr,
    Omega(OmegaMode),
    Raroc(RiskSpec),
    Shift(RiskSpec),
    LambdaConst(f64),
    LambdaTwoStep {
        below: f64,
        above: f64,
        threshold: Option<f64>,
    },
    CeIdentity,
    CePiecewise {
        theta: CeTheta,
        m: f64,
    },
    FamilyShift(RiskSpec),
    FamilyRaroc(RiskSpec),
    FamilyExpectile(f64),
    Bibliometric(PerfCurveFamily),
}

fn key_err(key: &str, reason: impl Into<String>) -> Error {
    Error::MetricKey {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn number(key: &str, token: &str) -> Result<f64> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| key_err(key, format!("`{token}` is not a number")))
}

fn unit_level(key: &str, token: &str) -> Result<f64> {
    let v = number(key, token)?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(key_err(key, format!("level `{token}` must lie in (0, 1)")))
    }
}

fn parse_risk(key: &str, parts: &[&str]) -> Result<RiskSpec> {
    match parts {
        ["mean"] => Ok(RiskSpec::Mean),
        ["var", a] => Ok(RiskSpec::Var(unit_level(key, a)?)),
        ["cvar", a] => Ok(RiskSpec::Cvar(unit_level(key, a)?)),
        ["tcvar", a] => Ok(RiskSpec::TCvar(unit_level(key, a)?)),
        ["evar", p] => Ok(RiskSpec::Evar(unit_level(key, p)?)),
        [] => Err(key_err(key, "missing risk measure")),
        [other, ..] => Err(key_err(key, format!("unknown risk measure `{other}`"))),
    }
}

/// Parses a metric key under the grammar in the module docs.
pub fn parse_metric_key(key: &str) -> Result<MetricSpec> {
    let parts: Vec<&str> = key.trim().split(':').collect();
    let spec = match parts.as_slice() {
        ["glr"] => MetricSpec::Glr,
        ["omega"] | ["omega", "infinity"] => MetricSpec::Omega(OmegaMode::Infinity),
        ["omega", "zero"] => MetricSpec::Omega(OmegaMode::Zero),
        ["raroc", rest @ ..] => MetricSpec::Raroc(parse_risk(key, rest)?),
        ["shift", rest @ ..] => MetricSpec::Shift(parse_risk(key, rest)?),
        ["lvar", "const", l] => {
            let v = number(key, l)?;
            if !(v > 0.0 && v <= 1.0) {
                return Err(key_err(key, "constant level must lie in (0, 1]"));
            }
            MetricSpec::LambdaConst(v)
        }
        ["lvar", "two_step", below, above] => MetricSpec::LambdaTwoStep {
            below: unit_level(key, below)?,
            above: unit_level(key, above)?,
            threshold: None,
        },
        ["lvar", "two_step", below, above, t] => MetricSpec::LambdaTwoStep {
            below: unit_level(key, below)?,
            above: unit_level(key, above)?,
            threshold: Some(number(key, t)?),
        },
        ["ce", "identity"] => MetricSpec::CeIdentity,
        ["ce", "plinear", theta, m] => {
            let theta = match theta.strip_suffix('q') {
                Some(level) => CeTheta::Quantile(unit_level(key, level)?),
                None => CeTheta::Absolute(number(key, theta)?),
            };
            let m = number(key, m)?;
            if m < 0.0 {
                return Err(key_err(key, "penalty m must be >= 0"));
            }
            MetricSpec::CePiecewise { theta, m }
        }
        ["family", "shift", rest @ ..] => MetricSpec::FamilyShift(parse_risk(key, rest)?),
        ["family", "raroc", rest @ ..] => MetricSpec::FamilyRaroc(parse_risk(key, rest)?),
        ["family", "expectile", offset] => {
            let o = number(key, offset)?;
            if o < 1.0 {
                return Err(key_err(key, "expectile offset must be >= 1"));
            }
            MetricSpec::FamilyExpectile(o)
        }
        ["h"] => MetricSpec::Bibliometric(PerfCurveFamily::H),
        ["h2"] => MetricSpec::Bibliometric(PerfCurveFamily::H2),
        ["halpha", a] => {
            let a = number(key, a)?;
            MetricSpec::Bibliometric(
                PerfCurveFamily::h_alpha(a).map_err(|e| key_err(key, e.to_string()))?,
            )
        }
        ["w"] => MetricSpec::Bibliometric(PerfCurveFamily::W),
        _ => return Err(key_err(key, "does not match the metric key grammar")),
    };
    Ok(spec)
}

impl MetricSpec {
    pub fn is_bibliometric(&self) -> bool {
        matches!(self, MetricSpec::Bibliometric(_))
    }

    /// Two-step keys without an explicit threshold need pooled data.
    pub fn needs_pooled_data(&self) -> bool {
        matches!(
            self,
            MetricSpec::LambdaTwoStep {
                threshold: None,
                ..
            }
        )
    }

    /// The same key with historical CVaR inside RAROC replaced by the Student-t fit.
    pub fn with_parametric_cvar(&self) -> Self {
        match self {
            MetricSpec::Raroc(RiskSpec::Cvar(a)) => MetricSpec::Raroc(RiskSpec::TCvar(*a)),
            MetricSpec::FamilyRaroc(RiskSpec::Cvar(a)) => {
                MetricSpec::FamilyRaroc(RiskSpec::TCvar(*a))
            }
            other => other.clone(),
        }
    }

    /// Builds the distribution metric named `name`.
    ///
    /// `pooled` supplies the threshold of two-step keys given without one.
    pub fn to_dist_metric(
        &self,
        name: &str,
        pooled: Option<&ScenarioDist>,
    ) -> Result<RankingMetric<ScenarioDist>> {
        let metric = match self {
            MetricSpec::Glr => RankingMetric::glr(),
            MetricSpec::Omega(mode) => RankingMetric::omega(*mode),
            MetricSpec::Raroc(r) => RankingMetric::raroc(r.measure()),
            MetricSpec::Shift(r) => RankingMetric::shift(r.measure()),
            MetricSpec::LambdaConst(l) => RankingMetric::lambda_var(LambdaFn::constant(*l)?),
            MetricSpec::LambdaTwoStep {
                below,
                above,
                threshold,
            } => {
                let t = match (threshold, pooled) {
                    (Some(t), _) => *t,
                    (None, Some(p)) => p.quantile(0.5 * (below + above)),
                    (None, None) => {
                        return Err(key_err(name, "two-step threshold needs pooled returns"))
                    }
                };
                RankingMetric::lambda_var(LambdaFn::two_step(*below, *above, t)?)
            }
            MetricSpec::CeIdentity => RankingMetric::certainty_equiv(UtilityFn::Identity),
            MetricSpec::CePiecewise {
                theta: CeTheta::Absolute(t),
                m,
            } => RankingMetric::certainty_equiv(UtilityFn::piecewise_linear(*t, *m)?),
            MetricSpec::CePiecewise {
                theta: CeTheta::Quantile(q),
                m,
            } => {
                let (q, m) = (*q, *m);
                RankingMetric::new(name, vec![], move |d: &ScenarioDist| {
                    let u = UtilityFn::PiecewiseLinear {
                        theta: d.quantile(q),
                        m,
                    };
                    super::r_certainty_equiv(d, &u)
                })
            }
            MetricSpec::FamilyShift(r) => RankingMetric::from_family(
                RiskFamily::shift(r.measure()),
                DEFAULT_BRACKET_MAX,
                DEFAULT_FAMILY_TOL,
            ),
            MetricSpec::FamilyRaroc(r) => RankingMetric::from_family(
                RiskFamily::raroc(r.measure()),
                DEFAULT_BRACKET_MAX,
                DEFAULT_FAMILY_TOL,
            ),
            MetricSpec::FamilyExpectile(offset) => RankingMetric::from_family(
                RiskFamily::expectile(ExpectileSchedule { offset: *offset }),
                DEFAULT_BRACKET_MAX,
                DEFAULT_FAMILY_TOL,
            ),
            MetricSpec::Bibliometric(_) => {
                return Err(key_err(
                    name,
                    "bibliometric indices rank asset profiles, not distributions",
                ))
            }
        };
        Ok(metric.renamed(name))
    }
}

impl<P> RankingMetric<P> {
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}
