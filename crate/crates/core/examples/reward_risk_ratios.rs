// Gain-loss ratio, Omega and RAROC, including their infinite branches.

use ranking_metrics::rankmetrics::{glr, omega, raroc, OmegaMode};
use ranking_metrics::riskmeasures::RiskMeasure;
use ranking_metrics::ScenarioDist;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [vec![-1.0, 3.0], vec![0.5, 2.0], vec![-3.0, 1.0]];
    for xs in &cases {
        let d = ScenarioDist::equal_weight(xs)?;
        let g = glr(&d);
        let o = omega(&d, OmegaMode::Infinity);
        let r = raroc(&d, &RiskMeasure::CvarHistorical(0.5));
        println!(
            "{xs:?}: GLR {} ({:?}), Omega {} ({:?}), RAROC {} ({:?})",
            g.value, g.provenance, o.value, o.provenance, r.value, r.provenance
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
