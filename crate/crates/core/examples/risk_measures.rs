// Historical and parametric tail risk, expectiles, expected loss and certainty
// equivalents.

use ranking_metrics::riskmeasures::{
    certainty_equivalent, cvar_historical, cvar_student_t, evar_expectile, expected_loss, var,
    LossFn, UtilityFn,
};
use ranking_metrics::ScenarioDist;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let returns: Vec<f64> = (0..40)
        .map(|i| ((i * 37) % 23) as f64 / 100.0 - 0.1)
        .collect();
    let d = ScenarioDist::equal_weight(&returns)?;

    println!("VaR 5%   {:.5}", var(&d, 0.05));
    println!("CVaR 5%  {:.5}", cvar_historical(&d, 0.05));
    let t = cvar_student_t(&d, 0.05)?;
    println!(
        "t-CVaR 5% {:.5} (nu = {:.2}, fallback = {})",
        t.value, t.fit.nu, t.fit.kurtosis_fallback
    );
    println!("EVaR 25% {:.5}", evar_expectile(&d, 0.25));
    println!(
        "put loss {:.5}",
        expected_loss(&d, &LossFn::Put { strike: 0.0 })
    );

    let u = UtilityFn::piecewise_linear(0.05, 0.1)?;
    println!("CE       {:.5}", certainty_equivalent(&d, &u));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
