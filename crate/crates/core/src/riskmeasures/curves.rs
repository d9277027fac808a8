//! Utility functions for certainty equivalents and convex loss curves for
//! expected-loss risk measures.

use crate::error::{Error, Result};

const SLOPE_TOL: f64 = 1e-12;
const INVERSE_TOL: f64 = 1e-10;

/// Piecewise-linear curve through knots, extrapolated linearly with the end slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::param("knots", "at least two knots required"));
        }
        if knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::param("knots", "knots must be finite"));
        }
        if knots.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(Error::param(
                "knots",
                "abscissae must be strictly increasing",
            ));
        }
        let (xs, ys) = knots.into_iter().unzip();
        Ok(Self { xs, ys })
    }

    fn slopes(&self) -> Vec<f64> {
        self.xs
            .windows(2)
            .zip(self.ys.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        // segment index, clamped so the end segments extrapolate
        let i = self.xs.partition_point(|&k| k <= x).clamp(1, n - 1) - 1;
        let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.ys[i] + t * (self.ys[i + 1] - self.ys[i])
    }
}

/// Strictly increasing concave utility.
#[derive(Debug, Clone, PartialEq)]
pub enum UtilityFn {
    Identity,
    /// `u(y) = y` above `theta`, `theta + (1 + m)(y - theta)` at or below it.
    PiecewiseLinear {
        theta: f64,
        m: f64,
    },
    Table(PiecewiseLinear),
}

impl UtilityFn {
    pub fn piecewise_linear(theta: f64, m: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::param("theta", "must be finite"));
        }
        if !(m >= 0.0) || !m.is_finite() {
            return Err(Error::param(
                "m",
                format!("penalty slope increment {m} must be >= 0"),
            ));
        }
        Ok(UtilityFn::PiecewiseLinear { theta, m })
    }

    /// Utility interpolating the knots; slopes must be positive and nonincreasing.
    pub fn table(knots: Vec<(f64, f64)>) -> Result<Self> {
        let curve = PiecewiseLinear::new(knots)?;
        let slopes = curve.slopes();
        if slopes.iter().any(|&s| !(s > 0.0)) {
            return Err(Error::param("knots", "utility must be strictly increasing"));
        }
        if slopes.windows(2).any(|w| w[1] > w[0] + SLOPE_TOL) {
            return Err(Error::param("knots", "utility must be concave"));
        }
        Ok(UtilityFn::Table(curve))
    }

    pub fn eval(&self, y: f64) -> f64 {
        match self {
            UtilityFn::Identity => y,
            UtilityFn::PiecewiseLinear { theta, m } => {
                if y > *theta {
                    y
                } else {
                    theta + (1.0 + m) * (y - theta)
                }
            }
            UtilityFn::Table(c) => c.eval(y),
        }
    }

    /// `u^{-1}(v)`. `bracket` must contain the preimage; it is only used by
    /// tabulated utilities, which invert by bisection.
    pub fn inverse(&self, v: f64, bracket: (f64, f64)) -> f64 {
        match self {
            UtilityFn::Identity => v,
            UtilityFn::PiecewiseLinear { theta, m } => {
                if v > *theta {
                    v
                } else {
                    theta + (v - theta) / (1.0 + m)
                }
            }
            UtilityFn::Table(c) => {
                let (mut lo, mut hi) = bracket;
                while c.eval(lo) > v {
                    lo -= (hi - lo).max(1.0);
                }
                while c.eval(hi) < v {
                    hi += (hi - lo).max(1.0);
                }
                while hi - lo > INVERSE_TOL {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if c.eval(mid) < v {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }
}

/// Increasing convex loss curve `f` used in `E[f(-X)]`.
#[derive(Debug, Clone, PartialEq)]
pub enum LossFn {
    Identity,
    /// Put payoff `(y + strike)^+`.
    Put {
        strike: f64,
    },
    /// `f(y) + shift`.
    Shifted {
        base: Box<LossFn>,
        shift: f64,
    },
    Table(PiecewiseLinear),
}

impl LossFn {
    /// Loss curve interpolating the knots; slopes must be nonnegative and nondecreasing.
    pub fn table(knots: Vec<(f64, f64)>) -> Result<Self> {
        let curve = PiecewiseLinear::new(knots)?;
        let slopes = curve.slopes();
        if slopes.iter().any(|&s| s < 0.0) {
            return Err(Error::param("knots", "loss curve must be nondecreasing"));
        }
        if slopes.windows(2).any(|w| w[1] < w[0] - SLOPE_TOL) {
            return Err(Error::param("knots", "loss curve must be convex"));
        }
        Ok(LossFn::Table(curve))
    }

    pub fn shifted(self, shift: f64) -> Self {
        LossFn::Shifted {
            base: Box::new(self),
            shift,
        }
    }

    pub fn eval(&self, y: f64) -> f64 {
        match self {
            LossFn::Identity => y,
            LossFn::Put { strike } => (y + strike).max(0.0),
            LossFn::Shifted { base, shift } => base.eval(y) + shift,
            LossFn::Table(c) => c.eval(y),
        }
    }
}
