// Randomized axiom checks with reproducible counterexamples.

use ranking_metrics::axiomlab::{
    check_quasiconcavity, harness_self_test, run_declared_suites, DistSampler, ProfileSampler,
};
use ranking_metrics::bibliometric::PerfCurveFamily;
use ranking_metrics::rankmetrics::OmegaMode;
use ranking_metrics::RankingMetric;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let trials = 2_000;
    for rep in run_declared_suites(&RankingMetric::glr(), &DistSampler::new(1), trials) {
        println!("{rep}");
    }
    for rep in run_declared_suites(
        &RankingMetric::bibliometric(PerfCurveFamily::H2),
        &ProfileSampler::new(1),
        trials,
    ) {
        println!("{rep}");
    }
    // Omega is not quasiconcave; the search reports a counterexample or gives up
    println!(
        "{}",
        check_quasiconcavity(
            &RankingMetric::omega(OmegaMode::Infinity),
            &DistSampler::new(1),
            20_000
        )
    );
    println!("{}", harness_self_test(1, 500));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
