//! Metric-maximizing portfolios on the unit simplex.
//!
//! Each start runs Nelder–Mead on free coordinates `z` with weights
//! `w = softmax(z, 0)`, so every iterate is feasible. The single-asset portfolios
//! are added as extra candidates, and candidates within the tie band of the best
//! value are averaged.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use crate::bibliometric::{build_profile_with_benchmark, srm_rank, PerfCurveFamily};
use crate::error::{Error, Result};
use crate::rankmetrics::{MetricValue, Provenance, RankingMetric};
use crate::scenarios::ScenarioDist;

const WEIGHT_SUM_TOL: f64 = 1e-10;
const MAX_RETRIES: usize = 5;

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioWeights(Vec<f64>);

impl PortfolioWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::param("weights", "no assets"));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::param("weights", "weights must be nonnegative"));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::param(
                "weights",
                format!("weights sum to {sum}, not 1"),
            ));
        }
        Ok(Self(weights))
    }

    pub fn equal(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn vertex(n: usize, i: usize) -> Self {
        let mut w = vec![0.0; n];
        w[i] = 1.0;
        Self(w)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn normalized(mut w: Vec<f64>) -> Self {
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= s);
        Self(w)
    }
}

/// Rowwise weighted sums of a `[time x asset]` matrix as an equal-weight
/// distribution.
pub fn portfolio_returns(asset_returns: &[Vec<f64>], w: &PortfolioWeights) -> Result<ScenarioDist> {
    if asset_returns.is_empty() {
        return Err(Error::DimensionMismatch("return matrix has no rows".into()));
    }
    let outcomes = asset_returns
        .iter()
        .enumerate()
        .map(|(t, row)| {
            if row.len() != w.len() {
                return Err(Error::DimensionMismatch(format!(
                    "row {t} has {} assets, weights have {}",
                    row.len(),
                    w.len()
                )));
            }
            Ok(row.iter().zip(w.as_slice()).map(|(r, w)| r * w).sum())
        })
        .collect::<Result<Vec<f64>>>()?;
    ScenarioDist::equal_weight(&outcomes)
}

/// Uniform point on the simplex from normalized exponential draws.
pub fn random_simplex(n: usize, seed: u64) -> PortfolioWeights {
    random_simplex_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_simplex_with(n: usize, rng: &mut ChaCha8Rng) -> PortfolioWeights {
    assert!(n >= 1, "simplex needs at least one asset");
    let draws: Vec<f64> = (0..n)
        .map(|_| Distribution::<f64>::sample(&Exp1, rng) + f64::MIN_POSITIVE)
        .collect();
    PortfolioWeights::normalized(draws)
}

/// Function of portfolio weights to maximize.
pub trait Objective: Sync {
    fn n_assets(&self) -> usize;
    fn evaluate(&self, w: &PortfolioWeights) -> MetricValue;
}

/// A distribution metric of the portfolio return series.
pub struct DistObjective<'a> {
    asset_returns: &'a [Vec<f64>],
    metric: &'a RankingMetric<ScenarioDist>,
}

impl<'a> DistObjective<'a> {
    pub fn new(
        asset_returns: &'a [Vec<f64>],
        metric: &'a RankingMetric<ScenarioDist>,
    ) -> Result<Self> {
        let n = asset_returns.first().map_or(0, Vec::len);
        if n == 0 || asset_returns.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "return matrix must be rectangular and nonempty".into(),
            ));
        }
        Ok(Self {
            asset_returns,
            metric,
        })
    }
}

impl Objective for DistObjective<'_> {
    fn n_assets(&self) -> usize {
        self.asset_returns[0].len()
    }

    fn evaluate(&self, w: &PortfolioWeights) -> MetricValue {
        let d =
            portfolio_returns(self.asset_returns, w).expect("dimensions checked at construction");
        self.metric.evaluate(&d)
    }
}

/// Bibliometric index of the weighted expected-return profile against a fixed
/// benchmark.
pub struct ProfileObjective {
    expected: Vec<f64>,
    family: PerfCurveFamily,
    benchmark: f64,
}

impl ProfileObjective {
    /// The benchmark is the smallest positive weighted expectation of the
    /// equal-weight portfolio, so equal weights reproduce the ranking pipeline.
    pub fn new(asset_returns: &[Vec<f64>], family: PerfCurveFamily) -> Result<Self> {
        let n = asset_returns.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "return matrix has no assets".into(),
            ));
        }
        let t = asset_returns.len() as f64;
        let expected: Vec<f64> = (0..n)
            .map(|j| asset_returns.iter().map(|r| r[j]).sum::<f64>() / t)
            .collect();
        let benchmark = expected
            .iter()
            .map(|e| e / n as f64)
            .filter(|&v| v > 0.0)
            .fold(f64::INFINITY, f64::min);
        if !benchmark.is_finite() {
            return Err(Error::BenchmarkUndefined);
        }
        Ok(Self {
            expected,
            family,
            benchmark,
        })
    }

    pub fn benchmark(&self) -> f64 {
        self.benchmark
    }
}

impl Objective for ProfileObjective {
    fn n_assets(&self) -> usize {
        self.expected.len()
    }

    fn evaluate(&self, w: &PortfolioWeights) -> MetricValue {
        let profile = build_profile_with_benchmark(&self.expected, w.as_slice(), self.benchmark)
            .expect("benchmark and dimensions checked at construction");
        MetricValue::new(srm_rank(&profile, &self.family) as f64, Provenance::Level)
    }
}

/// Search settings shared by every metric in a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptConfig {
    pub n_starts: usize,
    pub seed: u64,
    /// Relative width of the tie band `tol * (1 + |best|)`.
    pub tol: f64,
    pub max_iter: usize,
    pub diameter_tol: f64,
    pub initial_step: f64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self {
            n_starts: 1000,
            seed: 1,
            tol: 1e-6,
            max_iter: 2000,
            diameter_tol: 1e-8,
            initial_step: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    pub best_weights: PortfolioWeights,
    /// Re-evaluated at `best_weights`.
    pub best_value: MetricValue,
    pub n_starts: usize,
    pub n_converged: usize,
    /// Starts abandoned after repeated undefined values.
    pub n_dropped: usize,
    pub ties_averaged: bool,
    pub config: OptConfig,
}

/// Objective value to minimize; undefined values rank below everything.
fn cost(v: MetricValue) -> f64 {
    if v.is_undefined() {
        f64::INFINITY
    } else {
        -v.value
    }
}

fn softmax(z: &[f64]) -> PortfolioWeights {
    let m = z.iter().fold(0.0_f64, |m, &v| m.max(v));
    let mut w: Vec<f64> = z.iter().map(|v| (v - m).exp()).collect();
    w.push((-m).exp());
    let w = PortfolioWeights::normalized(w);
    debug_assert!(w.0.iter().all(|v| *v >= 0.0));
    debug_assert!((w.0.iter().sum::<f64>() - 1.0).abs() <= WEIGHT_SUM_TOL);
    w
}

fn to_free(w: &PortfolioWeights) -> Vec<f64> {
    let last = w.0.last().expect("nonempty").ln();
    w.0[..w.len() - 1].iter().map(|v| v.ln() - last).collect()
}

struct LocalOptimum {
    z: Vec<f64>,
    cost: f64,
    converged: bool,
}

fn nelder_mead(f: impl Fn(&[f64]) -> f64, z0: Vec<f64>, cfg: &OptConfig) -> LocalOptimum {
    let dim = z0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((z0.clone(), f(&z0)));
    for i in 0..dim {
        let mut z = z0.clone();
        z[i] += cfg.initial_step;
        let c = f(&z);
        simplex.push((z, c));
    }
    let order = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    let along = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(a, b)| a + t * (b - a)).collect()
    };
    let mut converged = false;
    for _ in 0..cfg.max_iter {
        order(&mut simplex);
        let best = simplex[0].0.clone();
        let diameter = simplex[1..]
            .iter()
            .map(|(z, _)| {
                z.iter()
                    .zip(&best)
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max);
        if diameter < cfg.diameter_tol {
            converged = true;
            break;
        }
        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|(z, _)| z[j]).sum::<f64>() / dim as f64)
            .collect();
        let (worst, c_worst) = simplex[dim].clone();
        let c_best = simplex[0].1;
        let c_second = simplex[dim - 1].1;

        let reflected = along(&centroid, &worst, -1.0);
        let c_ref = f(&reflected);
        if c_ref < c_best {
            let expanded = along(&centroid, &worst, -2.0);
            let c_exp = f(&expanded);
            simplex[dim] = if c_exp < c_ref {
                (expanded, c_exp)
            } else {
                (reflected, c_ref)
            };
            continue;
        }
        if c_ref < c_second {
            simplex[dim] = (reflected, c_ref);
            continue;
        }
        let (contracted, c_con) = if c_ref < c_worst {
            let z = along(&centroid, &reflected, 0.5);
            let c = f(&z);
            (z, c)
        } else {
            let z = along(&centroid, &worst, 0.5);
            let c = f(&z);
            (z, c)
        };
        if c_con < c_worst.min(c_ref) {
            simplex[dim] = (contracted, c_con);
            continue;
        }
        for entry in simplex.iter_mut().skip(1) {
            let z = along(&best, &entry.0, 0.5);
            let c = f(&z);
            *entry = (z, c);
        }
    }
    order(&mut simplex);
    let (z, cost) = simplex.swap_remove(0);
    LocalOptimum { z, cost, converged }
}

enum StartOutcome {
    Found(PortfolioWeights, MetricValue, bool),
    Dropped,
}

fn run_start(obj: &dyn Objective, start: usize, cfg: &OptConfig) -> StartOutcome {
    let n = obj.n_assets();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(start as u64);
    for _ in 0..=MAX_RETRIES {
        let w0 = random_simplex_with(n, &mut rng);
        if obj.evaluate(&w0).is_undefined() {
            continue;
        }
        let local = nelder_mead(|z| cost(obj.evaluate(&softmax(z))), to_free(&w0), cfg);
        let w = softmax(&local.z);
        let v = obj.evaluate(&w);
        debug_assert_eq!(cost(v), local.cost);
        return StartOutcome::Found(w, v, local.converged);
    }
    StartOutcome::Dropped
}

/// Maximizes `metric` of the portfolio return series over the simplex.
pub fn maximize_metric(
    asset_returns: &[Vec<f64>],
    metric: &RankingMetric<ScenarioDist>,
    n_starts: usize,
    seed: u64,
    tol: f64,
) -> Result<OptResult> {
    let obj = DistObjective::new(asset_returns, metric)?;
    maximize_objective(
        &obj,
        OptConfig {
            n_starts,
            seed,
            tol,
            ..OptConfig::default()
        },
    )
}

pub fn maximize_objective(obj: &dyn Objective, cfg: OptConfig) -> Result<OptResult> {
    if cfg.n_starts < 1 {
        return Err(Error::param("n_starts", "at least one start is required"));
    }
    if !(cfg.tol >= 0.0) {
        return Err(Error::param("tol", "must be nonnegative"));
    }
    let n = obj.n_assets();
    if n == 1 {
        let w = PortfolioWeights::vertex(1, 0);
        return Ok(OptResult {
            best_value: obj.evaluate(&w),
            best_weights: w,
            n_starts: cfg.n_starts,
            n_converged: cfg.n_starts,
            n_dropped: 0,
            ties_averaged: false,
            config: cfg,
        });
    }

    let outcomes: Vec<StartOutcome> = (0..cfg.n_starts)
        .into_par_iter()
        .map(|s| run_start(obj, s, &cfg))
        .collect();
    let n_dropped = outcomes
        .iter()
        .filter(|o| matches!(o, StartOutcome::Dropped))
        .count();
    let n_converged = outcomes
        .iter()
        .filter(|o| matches!(o, StartOutcome::Found(_, _, true)))
        .count();

    // starts in index order, then vertices in asset order
    let vertices: Vec<(PortfolioWeights, MetricValue)> = (0..n)
        .map(|i| {
            let w = PortfolioWeights::vertex(n, i);
            let v = obj.evaluate(&w);
            (w, v)
        })
        .collect();
    let vertex_best = vertices
        .iter()
        .map(|(_, v)| cost(*v))
        .fold(f64::INFINITY, f64::min);
    let candidates: Vec<(PortfolioWeights, MetricValue)> = outcomes
        .into_iter()
        .filter_map(|o| match o {
            StartOutcome::Found(w, v, _) => Some((w, v)),
            StartOutcome::Dropped => None,
        })
        .chain(vertices)
        .filter(|(_, v)| !v.is_undefined())
        .collect();
    let Some(best_idx) = (0..candidates.len()).min_by(|&a, &b| {
        cost(candidates[a].1)
            .total_cmp(&cost(candidates[b].1))
            .then(a.cmp(&b))
    }) else {
        return Err(Error::param(
            "metric",
            "undefined at every start and every vertex",
        ));
    };
    let best = candidates[best_idx].1.value;
    let in_band = |v: f64| {
        if best.is_infinite() {
            v.is_infinite()
        } else {
            v >= best - cfg.tol * (1.0 + best.abs())
        }
    };
    let ties: Vec<&PortfolioWeights> = candidates
        .iter()
        .filter(|(_, v)| in_band(v.value))
        .map(|(w, _)| w)
        .collect();

    let single = |ties_averaged| OptResult {
        best_weights: candidates[best_idx].0.clone(),
        best_value: candidates[best_idx].1,
        n_starts: cfg.n_starts,
        n_converged,
        n_dropped,
        ties_averaged,
        config: cfg,
    };
    if ties.len() < 2 {
        return Ok(single(false));
    }
    let mut avg = vec![0.0; n];
    for w in &ties {
        for (a, v) in avg.iter_mut().zip(w.as_slice()) {
            *a += v / ties.len() as f64;
        }
    }
    let avg = PortfolioWeights::normalized(avg);
    let avg_value = obj.evaluate(&avg);
    // the average must stay in the band and never fall below a vertex
    if !avg_value.is_undefined() && in_band(avg_value.value) && cost(avg_value) <= vertex_best {
        Ok(OptResult {
            best_weights: avg,
            best_value: avg_value,
            n_starts: cfg.n_starts,
            n_converged,
            n_dropped,
            ties_averaged: true,
            config: cfg,
        })
    } else {
        Ok(single(false))
    }
}

/// Best value over a regular grid on the simplex with step `1 / steps`.
pub fn grid_search(obj: &dyn Objective, steps: usize) -> (PortfolioWeights, MetricValue) {
    fn compositions(n: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=total {
            prefix.push(k);
            compositions(n - 1, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut points = Vec::new();
    compositions(obj.n_assets(), steps, &mut Vec::new(), &mut points);
    points
        .into_iter()
        .map(|c| {
            let w = PortfolioWeights(c.into_iter().map(|k| k as f64 / steps as f64).collect());
            let v = obj.evaluate(&w);
            (w, v)
        })
        .min_by(|a, b| cost(a.1).total_cmp(&cost(b.1)))
        .expect("grid is nonempty")
}
