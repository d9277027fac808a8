//! Every example must run to completion.

#[allow(dead_code)]
mod scenario_stats {
    include!("../examples/scenario_stats.rs");
}

#[allow(dead_code)]
mod risk_measures {
    include!("../examples/risk_measures.rs");
}

#[allow(dead_code)]
mod lambda_var {
    include!("../examples/lambda_var.rs");
}

#[allow(dead_code)]
mod reward_risk_ratios {
    include!("../examples/reward_risk_ratios.rs");
}

#[allow(dead_code)]
mod certainty_equivalent {
    include!("../examples/certainty_equivalent.rs");
}

#[allow(dead_code)]
mod risk_family {
    include!("../examples/risk_family.rs");
}

#[allow(dead_code)]
mod bibliometric_indices {
    include!("../examples/bibliometric_indices.rs");
}

#[allow(dead_code)]
mod metric_keys {
    include!("../examples/metric_keys.rs");
}

#[allow(dead_code)]
mod axiom_suites {
    include!("../examples/axiom_suites.rs");
}

#[allow(dead_code)]
mod optimize_portfolio {
    include!("../examples/optimize_portfolio.rs");
}

#[allow(dead_code)]
mod rank_portfolios {
    include!("../examples/rank_portfolios.rs");
}

#[allow(dead_code)]
mod climate_zones {
    include!("../examples/climate_zones.rs");
}

#[test]
fn scenario_stats_runs() {
    scenario_stats::run_example().unwrap();
}

#[test]
fn risk_measures_runs() {
    risk_measures::run_example().unwrap();
}

#[test]
fn lambda_var_runs() {
    lambda_var::run_example().unwrap();
}

#[test]
fn reward_risk_ratios_runs() {
    reward_risk_ratios::run_example().unwrap();
}

#[test]
fn certainty_equivalent_runs() {
    certainty_equivalent::run_example().unwrap();
}

#[test]
fn risk_family_runs() {
    risk_family::run_example().unwrap();
}

#[test]
fn bibliometric_indices_runs() {
    bibliometric_indices::run_example().unwrap();
}

#[test]
fn metric_keys_runs() {
    metric_keys::run_example().unwrap();
}

#[test]
fn axiom_suites_runs() {
    axiom_suites::run_example().unwrap();
}

#[test]
fn optimize_portfolio_runs() {
    optimize_portfolio::run_example().unwrap();
}

#[test]
fn rank_portfolios_runs() {
    rank_portfolios::run_example().unwrap();
}

#[test]
fn climate_zones_runs() {
    climate_zones::run_example().unwrap();
}
