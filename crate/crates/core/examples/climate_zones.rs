// Climate-loss zones: centering, zone sums and the certainty-equivalent ranking.

use ranking_metrics::pipelines::{
    aggregate_zones, climate_ce, load_losses, load_zones, mean_center_losses, CLIMATE_PENALTY,
    CLIMATE_THETA_LEVEL,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let (losses, _) = load_losses(format!("{data}/climate_losses.csv").as_ref())?;
    let zones = load_zones(format!("{data}/climate_zones.csv").as_ref())?;
    for z in aggregate_zones(&mean_center_losses(&losses), &zones)? {
        let ce = climate_ce(&z.dist(), CLIMATE_THETA_LEVEL, CLIMATE_PENALTY)?;
        println!("{}: series {:?}, CE {:.9}", z.zone, z.series, ce.value);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
