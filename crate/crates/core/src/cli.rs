//! Command-line front end.
//!
//! Exit status: 0 success, 1 invalid input or configuration, 2 a must-hold
//! property suite failed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::axiomlab::{
    builtin_dist_metrics, builtin_profile_metrics, check_quasiconcavity, harness_self_test,
    run_declared_suites, DistSampler, ProfileSampler, PropertyReport,
};
use crate::error::{Error, Result};
use crate::optimize::{maximize_objective, DistObjective, OptConfig, OptResult, ProfileObjective};
use crate::pipelines::{
    fmt_sig, load_groups, load_losses, load_returns, load_zones, parse_keys, rank_portfolios,
    rank_zones, CLIMATE_CE_KEY,
};
use crate::rankmetrics::{MetricSpec, OmegaMode, RankingMetric};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_SUITE_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ranking-metrics",
    version,
    about = "Rank, verify and optimize ranking metrics"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Leaderboard of equal-weight portfolios under each metric.
    Rank(RankArgs),
    /// Leaderboard of climate zones from a country loss panel.
    Climate(ClimateArgs),
    /// Metric-maximizing weights over the assets of a return panel.
    Optimize(OptimizeArgs),
    /// Randomized axiom suites for every built-in metric.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// Returns CSV: `date,TICKER1,...`.
    #[arg(long)]
    pub input: PathBuf,
    /// Portfolio groups CSV: `portfolio,ticker`.
    #[arg(long)]
    pub groups: PathBuf,
    /// Comma-separated metric keys.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "glr,omega,raroc:cvar:0.05"
    )]
    pub metrics: Vec<String>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClimateArgs {
    /// Losses CSV: `country,YEAR1,...`.
    #[arg(long)]
    pub input: PathBuf,
    /// Zone map CSV: `country,zone`.
    #[arg(long)]
    pub zones: PathBuf,
    /// Extra metric keys; the certainty equivalent is always included.
    #[arg(long, value_delimiter = ',')]
    pub metrics: Vec<String>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Returns CSV: `date,TICKER1,...`.
    #[arg(long)]
    pub input: PathBuf,
    /// Metric key to maximize; repeat for several.
    #[arg(long, required = true)]
    pub metric: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    pub starts: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Relative width of the tie band.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Keep historical CVaR inside RAROC instead of the Student-t fit.
    #[arg(long)]
    pub historical_cvar: bool,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

/// Parses `args` (program name first), runs, and maps errors to exit codes.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    match run(&cfg, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn run(cfg: &RunConfig, log: &mut dyn Write) -> Result<i32> {
    match &cfg.command {
        Command::Rank(a) => rank(a, log),
        Command::Climate(a) => climate(a, log),
        Command::Optimize(a) => optimize(a, log),
        Command::Verify(a) => verify(a, log),
    }
}

fn report_paths(log: &mut dyn Write, paths: &[PathBuf]) -> Result<()> {
    for p in paths {
        writeln!(log, "wrote {}", p.display())?;
    }
    Ok(())
}

fn rank(a: &RankArgs, log: &mut dyn Write) -> Result<i32> {
    let metrics = parse_keys(&a.metrics)?;
    let (panel, ingest) = load_returns(&a.input)?;
    let groups = load_groups(&a.groups)?;
    writeln!(
        log,
        "{} dates, {} tickers, {} portfolios ({} rows dropped)",
        panel.dates.len(),
        panel.tickers.len(),
        groups.len(),
        ingest.rows_dropped
    )?;
    let board = rank_portfolios(&panel, &groups, &metrics)?;
    report_paths(log, &board.write_all(&a.out)?)?;
    Ok(EXIT_OK)
}

fn climate(a: &ClimateArgs, log: &mut dyn Write) -> Result<i32> {
    let mut keys = vec![CLIMATE_CE_KEY.to_string()];
    keys.extend(
        a.metrics
            .iter()
            .filter(|k| k.trim() != CLIMATE_CE_KEY)
            .cloned(),
    );
    let metrics = parse_keys(&keys)?;
    if let Some((k, _)) = metrics.iter().find(|(_, m)| m.is_bibliometric()) {
        return Err(Error::MetricKey {
            key: k.clone(),
            reason: "bibliometric indices need asset profiles, not zone series".into(),
        });
    }
    let (losses, ingest) = load_losses(&a.input)?;
    let zones = load_zones(&a.zones)?;
    let (board, series) = rank_zones(&losses, &zones, &metrics)?;
    writeln!(
        log,
        "{} countries, {} years, {} zones ({} rows dropped)",
        losses.countries.len(),
        losses.years.len(),
        series.len(),
        ingest.rows_dropped
    )?;
    let mut paths = board.write_all(&a.out)?;
    let zp = a.out.join("zone_series.csv");
    let mut f = fs::File::create(&zp)?;
    writeln!(f, "zone,{}", losses.years.join(","))?;
    for s in &series {
        let vals: Vec<String> = s.series.iter().map(|v| fmt_sig(*v)).collect();
        writeln!(f, "{},{}", s.zone, vals.join(","))?;
    }
    paths.push(zp);
    report_paths(log, &paths)?;
    Ok(EXIT_OK)
}

fn optimize(a: &OptimizeArgs, log: &mut dyn Write) -> Result<i32> {
    if !(a.tol > 0.0) {
        return Err(Error::param("tol", "must be positive"));
    }
    if a.starts == 0 {
        return Err(Error::param("starts", "must be at least 1"));
    }
    let metrics = parse_keys(&a.metric)?;
    let (panel, _) = load_returns(&a.input)?;
    let cfg = OptConfig {
        n_starts: a.starts,
        seed: a.seed,
        tol: a.tol,
        ..OptConfig::default()
    };
    let pooled = crate::ScenarioDist::equal_weight(&panel.returns.concat())?;
    let mut results = Vec::new();
    for (key, spec) in &metrics {
        let res = match spec {
            MetricSpec::Bibliometric(fam) => {
                maximize_objective(&ProfileObjective::new(&panel.returns, fam.clone())?, cfg)?
            }
            _ => {
                let spec = if a.historical_cvar {
                    spec.clone()
                } else {
                    spec.with_parametric_cvar()
                };
                let metric = spec.to_dist_metric(key, Some(&pooled))?;
                maximize_objective(&DistObjective::new(&panel.returns, &metric)?, cfg)?
            }
        };
        writeln!(
            log,
            "{key}: value {} after {} starts",
            fmt_sig(res.best_value.value),
            res.n_starts
        )?;
        results.push((key.clone(), res));
    }
    let paths = write_opt_results(&a.out, &panel.tickers, &results, a.historical_cvar)?;
    report_paths(log, &paths)?;
    Ok(EXIT_OK)
}

/// `optimize_weights.csv` (metric, ticker, weight) and `optimize_summary.csv`.
pub fn write_opt_results(
    dir: &Path,
    tickers: &[String],
    results: &[(String, OptResult)],
    historical_cvar: bool,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let wp = dir.join("optimize_weights.csv");
    let mut w = fs::File::create(&wp)?;
    writeln!(w, "metric,ticker,weight")?;
    for (key, res) in results {
        for (t, v) in tickers.iter().zip(res.best_weights.as_slice()) {
            writeln!(w, "{key},{t},{}", fmt_sig(*v))?;
        }
    }
    let sp = dir.join("optimize_summary.csv");
    let mut s = fs::File::create(&sp)?;
    writeln!(
        s,
        "metric,value,provenance,n_starts,n_converged,n_dropped,ties_averaged,seed,tol,max_iter,diameter_tol,raroc_cvar,returns"
    )?;
    for (key, r) in results {
        writeln!(
            s,
            "{key},{},{:?},{},{},{},{},{},{},{},{},{},simple",
            fmt_sig(r.best_value.value),
            r.best_value.provenance,
            r.n_starts,
            r.n_converged,
            r.n_dropped,
            r.ties_averaged,
            r.config.seed,
            fmt_sig(r.config.tol),
            r.config.max_iter,
            fmt_sig(r.config.diameter_tol),
            if historical_cvar {
                "historical"
            } else {
                "student_t"
            },
        )?;
    }
    Ok(vec![wp, sp])
}

/// Declared-property suites for the built-ins, the Omega counterexample search
/// and the harness self-test, all at one seed.
pub fn verify_reports(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let dist = DistSampler::new(seed);
    let mut reports: Vec<PropertyReport> = builtin_dist_metrics()
        .iter()
        .flat_map(|r| run_declared_suites(r, &dist, trials))
        .collect();
    let profiles = ProfileSampler::new(seed);
    reports.extend(
        builtin_profile_metrics()
            .iter()
            .flat_map(|r| run_declared_suites(r, &profiles, trials)),
    );
    reports.push(check_quasiconcavity(
        &RankingMetric::omega(OmegaMode::Infinity),
        &dist,
        trials,
    ));
    reports.push(harness_self_test(seed, trials));
    reports
}

fn verify(a: &VerifyArgs, log: &mut dyn Write) -> Result<i32> {
    if a.trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    let reports = verify_reports(a.seed, a.trials);
    fs::create_dir_all(&a.out)?;
    let path = a.out.join("verify.csv");
    let mut f = fs::File::create(&path)?;
    writeln!(f, "{}", PropertyReport::CSV_HEADER)?;
    for r in &reports {
        writeln!(f, "{}", r.csv_row())?;
        writeln!(log, "{r}")?;
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(log, "{} suites, {failed} failed", reports.len())?;
    report_paths(log, &[path])?;
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_SUITE_FAILED
    })
}
