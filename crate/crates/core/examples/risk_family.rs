// Metrics generated by level-indexed risk families, `sup{x : rho_x(X) <= 0}`.

use ranking_metrics::rankmetrics::{
    omega, r_from_family, raroc, OmegaMode, DEFAULT_BRACKET_MAX, DEFAULT_FAMILY_TOL,
};
use ranking_metrics::riskmeasures::{ExpectileSchedule, LossFn, RiskFamily, RiskMeasure};
use ranking_metrics::ScenarioDist;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let d = ScenarioDist::equal_weight(&[-1.0, -0.5, 0.4, 1.0, 2.0])?;
    let solve = |fam: &RiskFamily| r_from_family(&d, fam, DEFAULT_BRACKET_MAX, DEFAULT_FAMILY_TOL);

    let shift = RiskFamily::shift(RiskMeasure::CvarHistorical(0.2));
    println!("shift family: {:?}", solve(&shift)?);

    let rho = RiskMeasure::CvarHistorical(0.2);
    println!(
        "raroc family: {:.8} vs direct {:.8}",
        solve(&RiskFamily::raroc(rho.clone()))?.value,
        raroc(&d, &rho).value
    );

    let ex = RiskFamily::expectile(ExpectileSchedule { offset: 1.0 });
    println!(
        "expectile family: {:.8} vs Omega {:.8}",
        solve(&ex)?.value,
        omega(&d, OmegaMode::Infinity).value
    );

    // largest strike whose expected shortfall below it stays within 0.5
    let puts = RiskFamily::expected_loss(|x| LossFn::Put { strike: x }.shifted(-0.5));
    println!("put family: {:?}", solve(&puts)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
