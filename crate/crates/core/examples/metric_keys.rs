// Metric keys as used on the command line.

use ranking_metrics::rankmetrics::parse_metric_key;
use ranking_metrics::ScenarioDist;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let d = ScenarioDist::equal_weight(&[-0.03, -0.01, 0.0, 0.02, 0.04, 0.05])?;
    for key in [
        "glr",
        "omega:zero",
        "raroc:cvar:0.2",
        "shift:evar:0.25",
        "lvar:two_step:0.55:0.65:0",
        "ce:plinear:0.75q:0.1",
        "family:expectile:2",
    ] {
        let metric = parse_metric_key(key)?.to_dist_metric(key, None)?;
        println!("{key:>28} = {:.6}", metric.evaluate(&d).value);
    }
    match parse_metric_key("raroc:cvar:1.5") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
