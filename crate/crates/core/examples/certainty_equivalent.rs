// Certainty-equivalent metric with a kinked utility.

use ranking_metrics::rankmetrics::r_certainty_equiv;
use ranking_metrics::riskmeasures::UtilityFn;
use ranking_metrics::ScenarioDist;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let d = ScenarioDist::equal_weight(&[4.0, 2.0, 0.0, -2.0])?;
    let theta = d.quantile(0.75);
    let u = UtilityFn::piecewise_linear(theta, 0.1)?;
    let v = r_certainty_equiv(&d, &u);
    println!(
        "theta = {theta}, E[u] = {}, metric = {:.6}",
        d.weighted_sum(|x| u.eval(x)),
        v.value
    );

    let u = UtilityFn::table(vec![(-5.0, -10.0), (0.0, 0.0), (5.0, 2.0)])?;
    println!("table utility: {:.6}", r_certainty_equiv(&d, &u).value);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
