// Portfolio leaderboard from CSV returns and group definitions.

use ranking_metrics::pipelines::{load_groups, load_returns, parse_keys, rank_portfolios};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let (panel, report) = load_returns(format!("{data}/returns_demo.csv").as_ref())?;
    let groups = load_groups(format!("{data}/groups_demo.csv").as_ref())?;
    println!(
        "{} dates x {} tickers, {} rows dropped",
        panel.dates.len(),
        panel.tickers.len(),
        report.rows_dropped
    );

    let keys: Vec<String> = [
        "glr",
        "omega",
        "raroc:cvar:0.05",
        "lvar:two_step:0.55:0.65",
        "ce:plinear:0.75q:0.1",
        "h",
        "w",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let board = rank_portfolios(&panel, &groups, &parse_keys(&keys)?)?;
    board.write_csv(std::io::stdout())?;
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
