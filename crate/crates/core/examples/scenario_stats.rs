// Empirical distributions: moments, parts, CDF and quantiles.

use ranking_metrics::ScenarioDist;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let d = ScenarioDist::equal_weight(&[-2.0, -1.0, 1.0, 2.0, 4.0])?;
    println!("E[X] = {}", d.expectation());
    println!(
        "E[X+] = {}, E[X-] = {}",
        d.pos_part_expectation(),
        d.neg_part_expectation()
    );
    println!("P(X <= 1) = {}", d.empirical_cdf(1.0));
    println!("q(0.4) = {}", d.quantile(0.4));

    // weighted scenarios, and a mixture with cash
    let w = ScenarioDist::new(vec![-1.0, 0.5, 3.0], vec![0.2, 0.5, 0.3])?;
    let mixed = w.mix_with_constant(0.5, 1.0);
    println!(
        "weighted mean {} -> mixed with cash {}",
        w.expectation(),
        mixed.expectation()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
