// Lambda-quantiles with constant and two-step level functions.

use ranking_metrics::rankmetrics::r_lambda_var;
use ranking_metrics::riskmeasures::{lambda_quantile, LambdaFn};
use ranking_metrics::ScenarioDist;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let d = ScenarioDist::equal_weight(&[-2.0, -1.0, -1.0, 0.5, 2.0, 3.0])?;
    for lambda in [
        LambdaFn::constant(0.5)?,
        LambdaFn::two_step(0.55, 0.65, 0.0)?,
        LambdaFn::two_step(0.65, 0.55, 0.0)?,
    ] {
        println!(
            "{:?}: q = {:?}, metric = {}",
            lambda,
            lambda_quantile(&d, &lambda).value(),
            r_lambda_var(&d, &lambda).value
        );
    }
    // no outcome clears a unit level
    println!(
        "Lambda = 1: {:?}",
        lambda_quantile(&d, &LambdaFn::constant(1.0)?)
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
