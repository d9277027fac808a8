use crate::error::{Error, Result};
use crate::scenarios::ScenarioDist;

/// Level function `Lambda: R -> (0, 1]` used by Lambda-quantiles.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaFn {
    kind: LambdaKind,
}

#[derive(Debug, Clone, PartialEq)]
enum LambdaKind {
    Constant(f64),
    /// `below` on `y < threshold`, `above` on `y >= threshold`.
    TwoStep {
        below: f64,
        above: f64,
        threshold: f64,
    },
    /// `values[0]` left of the first breakpoint, `values[i]` on `[b_i, b_{i+1})`.
    StepTable {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
}

fn check_level(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("{v} is not in (0, 1]")))
    }
}

impl LambdaFn {
    pub fn constant(level: f64) -> Result<Self> {
        check_level("lambda", level)?;
        Ok(Self {
            kind: LambdaKind::Constant(level),
        })
    }

    /// Two-valued step: `below` left of `threshold`, `above` from `threshold` on.
    ///
    /// Both values must lie strictly inside `(0, 1)`. No ordering is imposed, so this
    /// covers both increasing and decreasing steps.
    pub fn two_step(below: f64, above: f64, threshold: f64) -> Result<Self> {
        for (name, v) in [("lambda_below", below), ("lambda_above", above)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::param(name, format!("{v} is not in (0, 1)")));
            }
        }
        if !threshold.is_finite() {
            return Err(Error::param("threshold", "must be finite"));
        }
        Ok(Self {
            kind: LambdaKind::TwoStep {
                below,
                above,
                threshold,
            },
        })
    }

    /// General right-continuous step function. `values.len()` must equal
    /// `breakpoints.len() + 1`.
    pub fn step_table(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::param(
                "values",
                format!(
                    "expected {} values for {} breakpoints, got {}",
                    breakpoints.len() + 1,
                    breakpoints.len(),
                    values.len()
                ),
            ));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1]))
            || breakpoints.iter().any(|b| !b.is_finite())
        {
            return Err(Error::param(
                "breakpoints",
                "must be finite and strictly increasing",
            ));
        }
        for &v in &values {
            check_level("values", v)?;
        }
        Ok(Self {
            kind: LambdaKind::StepTable {
                breakpoints,
                values,
            },
        })
    }

    pub fn eval(&self, y: f64) -> f64 {
        match &self.kind {
            LambdaKind::Constant(l) => *l,
            LambdaKind::TwoStep {
                below,
                above,
                threshold,
            } => {
                if y < *threshold {
                    *below
                } else {
                    *above
                }
            }
            LambdaKind::StepTable {
                breakpoints,
                values,
            } => values[breakpoints.partition_point(|&b| b <= y)],
        }
    }

    /// True when `Lambda` never increases as `y` grows.
    pub fn is_nonincreasing(&self) -> bool {
        match &self.kind {
            LambdaKind::Constant(_) => true,
            LambdaKind::TwoStep { below, above, .. } => above <= below,
            LambdaKind::StepTable { values, .. } => values.windows(2).all(|w| w[1] <= w[0]),
        }
    }

    /// Points where `Lambda` jumps, ascending.
    pub fn breakpoints(&self) -> &[f64] {
        match &self.kind {
            LambdaKind::Constant(_) => &[],
            LambdaKind::TwoStep { threshold, .. } => std::slice::from_ref(threshold),
            LambdaKind::StepTable { breakpoints, .. } => breakpoints,
        }
    }

    pub fn constant_level(&self) -> Option<f64> {
        match self.kind {
            LambdaKind::Constant(l) => Some(l),
            _ => None,
        }
    }
}

/// Outcome of a Lambda-quantile scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaQuantile {
    Attained(f64),
    /// No outcome has `P(X <= y) > Lambda(y)`.
    Undefined,
}

impl LambdaQuantile {
    pub fn value(self) -> Option<f64> {
        match self {
            LambdaQuantile::Attained(v) => Some(v),
            LambdaQuantile::Undefined => None,
        }
    }
}

/// `q_Lambda(X) = inf{y : P(X <= y) > Lambda(y)}`.
///
/// The CDF and `Lambda` are both right-continuous step functions, so the set is a
/// union of intervals `[a, b)` whose left ends are outcomes or jumps of `Lambda`.
/// Scanning those candidates ascending is exact.
pub fn lambda_quantile(d: &ScenarioDist, lambda: &LambdaFn) -> LambdaQuantile {
    let mut candidates: Vec<f64> = d.atoms().map(|(y, _)| y).collect();
    candidates.extend(
        lambda
            .breakpoints()
            .iter()
            .filter(|&&b| b > d.min() && b <= d.max()),
    );
    candidates.sort_by(f64::total_cmp);
    candidates
        .into_iter()
        .find(|&y| d.empirical_cdf(y) > lambda.eval(y))
        .map_or(LambdaQuantile::Undefined, LambdaQuantile::Attained)
}

/// `LambdaVaR(X) = -q_Lambda(X)`.
pub fn lambda_var(d: &ScenarioDist, lambda: &LambdaFn) -> LambdaQuantile {
    match lambda_quantile(d, lambda) {
        LambdaQuantile::Attained(q) => LambdaQuantile::Attained(-q),
        LambdaQuantile::Undefined => LambdaQuantile::Undefined,
    }
}
