// Maximizing metrics over portfolio weights.

use ranking_metrics::bibliometric::PerfCurveFamily;
use ranking_metrics::optimize::{maximize_metric, maximize_objective, OptConfig, ProfileObjective};
use ranking_metrics::pipelines::load_returns;
use ranking_metrics::riskmeasures::{LambdaFn, RiskMeasure};
use ranking_metrics::RankingMetric;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let (two, _) = load_returns(format!("{data}/two_asset.csv").as_ref())?;
    let lvar = RankingMetric::lambda_var(LambdaFn::constant(0.5)?);
    let res = maximize_metric(&two.returns, &lvar, 50, 1, 1e-6)?;
    println!(
        "lvar:const:0.5 -> {:?} value {}",
        res.best_weights.as_slice(),
        res.best_value.value
    );

    let (panel, _) = load_returns(format!("{data}/returns_demo.csv").as_ref())?;
    let raroc = RankingMetric::raroc(RiskMeasure::CvarStudentT(0.05));
    let res = maximize_metric(&panel.returns, &raroc, 20, 7, 1e-6)?;
    println!(
        "raroc:tcvar:0.05 -> value {:.6}, {} of {} starts converged",
        res.best_value.value, res.n_converged, res.n_starts
    );

    let h = ProfileObjective::new(&panel.returns, PerfCurveFamily::H)?;
    let res = maximize_objective(
        &h,
        OptConfig {
            n_starts: 20,
            seed: 7,
            ..OptConfig::default()
        },
    )?;
    println!(
        "h -> {} (ties averaged: {})",
        res.best_value.value, res.ties_averaged
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
