//! Bibliometric ranking metrics over ranked asset profiles.
//!
//! A profile is the descending vector of (rescaled) asset performances of one
//! portfolio. A level `x` is attained when the profile dominates the performance
//! curve `f_x` at every rank; the index is the largest attained integer level.
//!
//! | index     | `f_x(p)`                       |
//! |-----------|--------------------------------|
//! | h         | `x 1_{(0,x]}(p)`               |
//! | h²        | `x² 1_{(0,x]}(p)`              |
//! | h_alpha   | `alpha x 1_{(0,x]}(p)`         |
//! | w         | `(x + 1 - p) 1_{(0,x]}(p)`     |

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rankmetrics::{MetricValue, Property, Provenance, RankingMetric};

// guards floor() against ratios like 3.9999999999999996
const DISCRETIZE_EPS: f64 = 1e-9;

/// Nonnegative descending performance vector. Ranks beyond `n_assets()` take the
/// `tail` value, which is 0 unless the profile was cash-shifted.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedProfile {
    values: Vec<f64>,
    tail: f64,
}

impl RankedProfile {
    /// Sorts `values` descending; every entry must be finite and nonnegative.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::param("values", "profile needs at least one asset"));
        }
        if let Some(v) = values.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::param(
                "values",
                format!("entry {v} is not a nonnegative number"),
            ));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values, tail: 0.0 })
    }

    pub fn from_counts(values: &[u64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| v as f64).collect())
    }

    /// The constant profile `k` at every rank.
    pub fn constant(k: f64) -> Self {
        Self {
            values: vec![k],
            tail: k,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n_assets(&self) -> usize {
        self.values.len()
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// `X(p)` for rank `p >= 1`.
    pub fn value_at(&self, rank: usize) -> f64 {
        debug_assert!(rank >= 1);
        self.values.get(rank - 1).copied().unwrap_or(self.tail)
    }

    pub fn top(&self) -> f64 {
        self.values[0]
    }

    /// `X + k` at every rank, including ranks beyond the asset count.
    pub fn shifted(&self, k: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v + k).collect(),
            tail: self.tail + k,
        }
    }

    /// Rankwise `lambda X + (1 - lambda) Y`; stays descending.
    pub fn mix(&self, other: &Self, lambda: f64) -> Self {
        let n = self.n_assets().max(other.n_assets());
        Self {
            values: (1..=n)
                .map(|p| lambda * self.value_at(p) + (1.0 - lambda) * other.value_at(p))
                .collect(),
            tail: lambda * self.tail + (1.0 - lambda) * other.tail,
        }
    }

    pub fn mix_with_constant(&self, lambda: f64, k: f64) -> Self {
        self.mix(&Self::constant(k), lambda)
    }

    /// Adds nonnegative increments to the entries and re-sorts, which dominates
    /// the original profile rank by rank.
    pub fn raised(&self, increments: &[f64]) -> Self {
        let mut values: Vec<f64> = self
            .values
            .iter()
            .zip(increments.iter().chain(std::iter::repeat(&0.0)))
            .map(|(v, e)| v + e.max(0.0))
            .collect();
        values.sort_by(|a, b| b.total_cmp(a));
        Self {
            values,
            tail: self.tail,
        }
    }
}

/// Performance-curve knots `(level, rank) -> value`, zero at unlisted ranks.
///
/// A level between two listed levels uses the curve of the next listed level
/// above it; levels above the largest listed one are never attained.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomCurves {
    curves: BTreeMap<u64, BTreeMap<usize, f64>>,
}

impl CustomCurves {
    pub fn new(knots: impl IntoIterator<Item = (u64, usize, f64)>) -> Result<Self> {
        let mut curves: BTreeMap<u64, BTreeMap<usize, f64>> = BTreeMap::new();
        for (level, rank, value) in knots {
            if level == 0 || rank == 0 {
                return Err(Error::param("knots", "levels and ranks start at 1"));
            }
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::param(
                    "knots",
                    format!("curve value {value} must be >= 0"),
                ));
            }
            if curves
                .entry(level)
                .or_default()
                .insert(rank, value)
                .is_some()
            {
                return Err(Error::param(
                    "knots",
                    format!("duplicate knot at level {level}, rank {rank}"),
                ));
            }
        }
        if curves.is_empty() {
            return Err(Error::param("knots", "no knots"));
        }
        let c = Self { curves };
        c.check_increasing()?;
        Ok(c)
    }

    /// Parses `level, rank, value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut knots = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = |what: &str| {
                Error::param("knots", format!("line {}: {what}: `{line}`", lineno + 1))
            };
            let [level, rank, value] = fields.as_slice() else {
                return Err(bad("expected `level, rank, value`"));
            };
            knots.push((
                level.parse().map_err(|_| bad("bad level"))?,
                rank.parse().map_err(|_| bad("bad rank"))?,
                value.parse().map_err(|_| bad("bad value"))?,
            ));
        }
        Self::new(knots)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Ingest {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    // consecutive listed levels must dominate each other at every listed rank
    fn check_increasing(&self) -> Result<()> {
        let ranks: Vec<usize> = self
            .curves
            .values()
            .flat_map(|c| c.keys().copied())
            .collect();
        let levels: Vec<u64> = self.curves.keys().copied().collect();
        for w in levels.windows(2) {
            for &p in &ranks {
                let (lo, hi) = (self.at_listed(w[0], p), self.at_listed(w[1], p));
                if hi < lo {
                    return Err(Error::param(
                        "knots",
                        format!(
                            "curve decreases from level {} to {} at rank {p}",
                            w[0], w[1]
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    fn at_listed(&self, level: u64, rank: usize) -> f64 {
        self.curves[&level].get(&rank).copied().unwrap_or(0.0)
    }

    pub fn max_level(&self) -> u64 {
        *self.curves.keys().next_back().expect("nonempty")
    }

    fn curve_for(&self, level: f64) -> Option<&BTreeMap<usize, f64>> {
        let l = level.ceil().max(1.0) as u64;
        self.curves.range(l..).next().map(|(_, c)| c)
    }
}

/// Family of performance curves `f_x(p)`.
#[derive(Debug, Clone, PartialEq)]
pub enum PerfCurveFamily {
    H,
    H2,
    HAlpha(f64),
    W,
    Custom(CustomCurves),
}

impl PerfCurveFamily {
    pub fn h_alpha(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(PerfCurveFamily::HAlpha(alpha))
        } else {
            Err(Error::param("alpha", format!("{alpha} must be positive")))
        }
    }

    pub fn name(&self) -> String {
        match self {
            PerfCurveFamily::H => "h".into(),
            PerfCurveFamily::H2 => "h2".into(),
            PerfCurveFamily::HAlpha(a) => format!("halpha:{a}"),
            PerfCurveFamily::W => "w".into(),
            PerfCurveFamily::Custom(_) => "custom".into(),
        }
    }

    /// Largest level that could be attained when the top entry is `top` and
    /// ranks beyond `n_assets` hold `tail`.
    fn level_bound(&self, top: f64, n_assets: usize, tail: f64) -> u64 {
        let from_top = match self {
            PerfCurveFamily::H | PerfCurveFamily::W => top,
            PerfCurveFamily::H2 => top.sqrt(),
            PerfCurveFamily::HAlpha(a) => top / a,
            PerfCurveFamily::Custom(c) => return c.max_level(),
        };
        let from_top = from_top.floor().max(0.0) as u64;
        // every built-in curve is positive on (0, x], so a zero tail caps x at N
        if tail > 0.0 {
            from_top
        } else {
            from_top.min(n_assets as u64)
        }
    }

    /// Whether `profile` dominates `f_x` at every rank.
    pub fn attains(&self, profile: &RankedProfile, level: u64) -> bool {
        let x = level as f64;
        match self {
            PerfCurveFamily::Custom(c) => match c.curve_for(x) {
                Some(curve) => curve.iter().all(|(&p, &v)| profile.value_at(p) >= v),
                None => false,
            },
            _ => (1..=level as usize).all(|p| profile.value_at(p) >= curve_eval(self, x, p as f64)),
        }
    }
}

/// `f_x(p)`; zero outside `(0, x]` for the built-in families.
pub fn curve_eval(fam: &PerfCurveFamily, x: f64, p: f64) -> f64 {
    if !(p > 0.0) {
        return 0.0;
    }
    let inside = p <= x;
    match fam {
        PerfCurveFamily::H if inside => x,
        PerfCurveFamily::H2 if inside => x * x,
        PerfCurveFamily::HAlpha(a) if inside => a * x,
        PerfCurveFamily::W if inside => x + 1.0 - p,
        PerfCurveFamily::Custom(c) => {
            let rank = p.ceil() as usize;
            if (rank as f64) != p {
                return 0.0;
            }
            c.curve_for(x).map_or(f64::INFINITY, |curve| {
                curve.get(&rank).copied().unwrap_or(0.0)
            })
        }
        _ => 0.0,
    }
}

/// Largest integer level attained by `profile`, or 0.
///
/// The attained levels form a down-set because curves increase in `x`, so the
/// scan stops at the first failure.
pub fn srm_rank(profile: &RankedProfile, fam: &PerfCurveFamily) -> u64 {
    let bound = fam.level_bound(
        profile.top().max(profile.tail()),
        profile.n_assets(),
        profile.tail(),
    );
    (1..=bound)
        .take_while(|&x| fam.attains(profile, x))
        .last()
        .unwrap_or(0)
}

/// Rescaled, discretized profiles per portfolio.
///
/// `expected[j][p]` is the expected return of asset `p` in portfolio `j`, and
/// `weights[j][p]` its weight. Weighted expectations are floored at zero and
/// divided by the smallest strictly positive one across all portfolios.
pub fn build_profile(expected: &[Vec<f64>], weights: &[Vec<f64>]) -> Result<Vec<RankedProfile>> {
    let weighted = weighted_positive(expected, weights)?;
    let benchmark = weighted
        .iter()
        .flatten()
        .copied()
        .filter(|&v| v > 0.0)
        .fold(f64::INFINITY, f64::min);
    if !benchmark.is_finite() {
        return Err(Error::BenchmarkUndefined);
    }
    weighted
        .into_iter()
        .map(|row| discretize(&row, benchmark))
        .collect()
}

/// As [`build_profile`] for a single portfolio against a fixed benchmark.
pub fn build_profile_with_benchmark(
    expected: &[f64],
    weights: &[f64],
    benchmark: f64,
) -> Result<RankedProfile> {
    if !(benchmark > 0.0) {
        return Err(Error::BenchmarkUndefined);
    }
    let weighted = weighted_positive(&[expected.to_vec()], &[weights.to_vec()])?;
    discretize(&weighted[0], benchmark)
}

fn weighted_positive(expected: &[Vec<f64>], weights: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if expected.len() != weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} portfolios but {} weight vectors",
            expected.len(),
            weights.len()
        )));
    }
    expected
        .iter()
        .zip(weights)
        .enumerate()
        .map(|(j, (e, w))| {
            if e.len() != w.len() || e.is_empty() {
                return Err(Error::DimensionMismatch(format!(
                    "portfolio {j}: {} expected returns, {} weights",
                    e.len(),
                    w.len()
                )));
            }
            Ok(e.iter().zip(w).map(|(e, w)| (e * w).max(0.0)).collect())
        })
        .collect()
}

fn discretize(row: &[f64], benchmark: f64) -> Result<RankedProfile> {
    RankedProfile::new(
        row.iter()
            .map(|v| (v / benchmark + DISCRETIZE_EPS).floor())
            .collect(),
    )
}

impl RankingMetric<RankedProfile> {
    /// Index metric for a curve family with the cash-subadditivity regime it
    /// satisfies on integer profiles and integer shifts.
    pub fn bibliometric(fam: PerfCurveFamily) -> Self {
        use Property::*;
        let mut props = vec![Monotone, CashQuasiconcave, Quasiconcave];
        match fam {
            PerfCurveFamily::H | PerfCurveFamily::W => {
                props.push(CashSubadditive { min_shift: 0.0 })
            }
            PerfCurveFamily::H2 => props.push(CashSubadditive { min_shift: 1.0 }),
            PerfCurveFamily::HAlpha(a) if a > 1.0 => props.push(CashSubadditive { min_shift: 0.0 }),
            _ => {}
        }
        Self::new(fam.name(), props, move |p| {
            MetricValue::new(srm_rank(p, &fam) as f64, Provenance::Level)
        })
    }
}
