// Acceptance criteria 1-10. Runs without the libtest harness so every criterion
// prints exactly one PASS/FAIL line; the process fails if any line is FAIL.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng;

use ranking_metrics::axiomlab::{
    builtin_dist_metrics, builtin_profile_metrics, check_cash_quasiconcavity,
    check_cash_subadditivity, check_monotonicity, check_quasiconcavity, trial_rng, DistSampler,
    Pairing, Position, ProbScheme, ProfileSampler, PropertyReport, Sampler, Verdict,
};
use ranking_metrics::bibliometric::{srm_rank, PerfCurveFamily, RankedProfile};
use ranking_metrics::cli::{main_with_args, EXIT_OK};
use ranking_metrics::optimize::{
    grid_search, maximize_metric, maximize_objective, DistObjective, Objective, OptConfig,
    PortfolioWeights, ProfileObjective,
};
use ranking_metrics::pipelines::{
    aggregate_zones, climate_ce, load_losses, load_returns, load_zones, mean_center_losses,
    CLIMATE_CE_KEY, CLIMATE_PENALTY, CLIMATE_THETA_LEVEL,
};
use ranking_metrics::rankmetrics::{
    ge_with_slack, glr, omega, parse_metric_key, r_from_family, raroc, OmegaMode, Provenance,
};
use ranking_metrics::riskmeasures::{
    certainty_equiv_rho, cvar_historical, evar_expectile, lambda_quantile, LambdaFn,
    LambdaQuantile, RiskFamily, RiskMeasure, UtilityFn,
};
use ranking_metrics::{RankingMetric, ScenarioDist};

const TRIALS: usize = 10_000;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn failures(reports: &[PropertyReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect()
}

type Outcome = Result<String, String>;

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for seed in 1..=3 {
        for scheme in [ProbScheme::Equal, ProbScheme::RandomSimplex] {
            let s = DistSampler::new(seed).with_scheme(scheme);
            for r in builtin_dist_metrics() {
                reports.push(check_monotonicity(&r, &s, TRIALS));
                reports.push(check_cash_quasiconcavity(&r, &s, TRIALS));
            }
        }
        let s = ProfileSampler::new(seed);
        for r in builtin_profile_metrics() {
            reports.push(check_monotonicity(&r, &s, TRIALS));
            reports.push(check_cash_quasiconcavity(&r, &s, TRIALS));
        }
    }
    let elapsed = start.elapsed();
    // omega:zero is not monotone and declares so; its monotonicity report is a search
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !(r.metric == "omega:zero" && r.property == "monotonicity"))
        .filter(|r| r.violations > 0)
        .map(|r| r.to_string())
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    if elapsed.as_secs_f64() > 120.0 {
        return Err(format!("suites took {elapsed:?}"));
    }
    Ok(format!(
        "{} suites, seeds 1-3, {TRIALS} trials each, {:.1}s",
        reports.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let s = DistSampler::new(2).with_scheme(ProbScheme::RandomSimplex);
    let (mut checked, mut trial, mut worst) = (0usize, 0usize, 0.0f64);
    while checked < TRIALS {
        let mut rng = trial_rng(s.seed, trial);
        trial += 1;
        let d = s.sample(&mut rng);
        if !(d.expectation() > 0.0 && d.neg_part_expectation() > 0.0) {
            continue;
        }
        checked += 1;
        let o = omega(&d, OmegaMode::Infinity).value;
        // one ulp of a ratio near 1e4 already exceeds 1e-12, so the bound scales with it
        let err = (o - glr(&d).value - 1.0).abs() / o.max(1.0);
        worst = worst.max(err);
        if !(err <= 1e-12) {
            return Err(format!(
                "Omega - GLR = {} on {}",
                o - glr(&d).value,
                d.describe()
            ));
        }
    }
    Ok(format!(
        "{checked} dists, max |Omega - GLR - 1| / max(1, Omega) = {worst:.1e}"
    ))
}

fn criterion_3() -> Outcome {
    let s = DistSampler::new(3);
    let u1 = UtilityFn::piecewise_linear(0.0, 0.1).unwrap();
    let u2 = UtilityFn::piecewise_linear(1.0, 0.5).unwrap();
    // each risk measure next to a direct evaluation of it
    let cases: Vec<(RiskMeasure, Box<dyn Fn(&ScenarioDist) -> f64>)> = vec![
        (
            RiskMeasure::CvarHistorical(0.05),
            Box::new(|d| cvar_historical(d, 0.05)),
        ),
        (
            RiskMeasure::CvarHistorical(0.3),
            Box::new(|d| cvar_historical(d, 0.3)),
        ),
        (
            RiskMeasure::Expectile(0.25),
            Box::new(|d| evar_expectile(d, 0.25)),
        ),
        (
            RiskMeasure::Expectile(0.1),
            Box::new(|d| evar_expectile(d, 0.1)),
        ),
        (
            RiskMeasure::CertaintyEquivalent(u1.clone()),
            Box::new(move |d| certainty_equiv_rho(d, &u1)),
        ),
        (
            RiskMeasure::CertaintyEquivalent(u2.clone()),
            Box::new(move |d| certainty_equiv_rho(d, &u2)),
        ),
    ];
    let (mut shift_worst, mut raroc_worst, mut raroc_checked) = (0.0f64, 0.0f64, 0usize);
    for trial in 0..TRIALS {
        let d = s.sample(&mut trial_rng(s.seed, trial));
        for (rho, direct) in &cases {
            let oracle = (-direct(&d)).max(0.0);
            let got = r_from_family(&d, &RiskFamily::shift(rho.clone()), 1e6, 1e-10)
                .map_err(|e| e.to_string())?;
            let err = (got.value - oracle).abs();
            shift_worst = shift_worst.max(err);
            if err > 1e-8 {
                return Err(format!(
                    "shift family {rho:?}: {} vs {oracle} on {}",
                    got.value,
                    d.describe()
                ));
            }
        }
        let cvar = RiskMeasure::CvarHistorical(0.05);
        let risk = cvar.evaluate(&d).unwrap();
        if !(-d.expectation() <= risk) {
            continue;
        }
        let direct = raroc(&d, &cvar);
        let fam = r_from_family(&d, &RiskFamily::raroc(cvar.clone()), 1e6, 1e-10)
            .map_err(|e| e.to_string())?;
        if direct.is_infinite() {
            if fam.provenance != Provenance::RightCensored {
                return Err(format!(
                    "RAROC infinite but family gave {fam:?} on {}",
                    d.describe()
                ));
            }
            continue;
        }
        raroc_checked += 1;
        let err = (fam.value - direct.value).abs();
        raroc_worst = raroc_worst.max(err / (1.0 + direct.value.abs()));
        if err > 1e-6 * (1.0 + direct.value.abs()) {
            return Err(format!(
                "RAROC family {} vs {} on {}",
                fam.value,
                direct.value,
                d.describe()
            ));
        }
    }
    Ok(format!(
        "shift families within {shift_worst:.1e}; RAROC family on {raroc_checked} dists within {raroc_worst:.1e} relative"
    ))
}

fn criterion_4() -> Outcome {
    let s = DistSampler::new(4).with_scheme(ProbScheme::RandomSimplex);
    for trial in 0..1000 {
        let d = s.sample(&mut trial_rng(s.seed, trial));
        let e = evar_expectile(&d, 0.5);
        if (e + d.expectation()).abs() > 1e-9 {
            return Err(format!("EVaR(0.5) = {e}, mean {}", d.expectation()));
        }
    }
    let d = ScenarioDist::equal_weight(&[0.0, 1.0]).map_err(|e| e.to_string())?;
    let e = evar_expectile(&d, 0.25);
    if (e + 0.25).abs() > 1e-9 {
        return Err(format!("EVaR(0.25) on {{0,1}} = {e}"));
    }
    Ok(format!(
        "EVaR(0.5) = -mean on 1000 dists; {{0,1}} at 0.25 gives {e}"
    ))
}

fn strict_quantile(xs: &[f64], alpha: f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    // F(v[i]) = (i + 1) / n on a tie-free sample
    let i = (0..n).find(|&i| (i + 1) as f64 / n as f64 > alpha).unwrap();
    v[i]
}

fn criterion_5() -> Outcome {
    for trial in 0..TRIALS {
        let mut rng = trial_rng(5, trial);
        let n = rng.gen_range(1..=40);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let alpha: f64 = rng.gen_range(0.001..0.999);
        let d = ScenarioDist::equal_weight(&xs).map_err(|e| e.to_string())?;
        let got = lambda_quantile(&d, &LambdaFn::constant(alpha).unwrap());
        let want = strict_quantile(&xs, alpha);
        if got != LambdaQuantile::Attained(want) {
            return Err(format!("alpha {alpha} on {xs:?}: {got:?} vs {want}"));
        }
    }
    let mut reports = Vec::new();
    for (below, above) in [(0.65, 0.55), (0.9, 0.1), (0.5, 0.3)] {
        let r = RankingMetric::lambda_var(LambdaFn::two_step(below, above, 0.0).unwrap());
        for seed in 1..=3 {
            reports.push(check_cash_subadditivity(
                &r,
                &DistSampler::new(seed),
                TRIALS,
                false,
            ));
        }
    }
    let bad = failures(&reports);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    Ok(format!(
        "constant levels exact on {TRIALS} samples; {} decreasing-step suites clean",
        reports.len()
    ))
}

fn brute_force_level(sorted_desc: &[f64], fam: &PerfCurveFamily) -> u64 {
    let value = |p: usize| sorted_desc.get(p - 1).copied().unwrap_or(0.0);
    let target = |x: f64, p: usize| match fam {
        PerfCurveFamily::H => x,
        PerfCurveFamily::H2 => x * x,
        PerfCurveFamily::HAlpha(a) => a * x,
        PerfCurveFamily::W => x + 1.0 - p as f64,
        PerfCurveFamily::Custom(_) => unreachable!(),
    };
    let mut best = 0;
    // every level up to two past the asset count, without assuming a down-set
    for level in 1..=sorted_desc.len() + 2 {
        if (1..=level).all(|p| value(p) >= target(level as f64, p)) {
            best = level as u64;
        }
    }
    best
}

fn criterion_6() -> Outcome {
    let fams = [
        PerfCurveFamily::H,
        PerfCurveFamily::H2,
        PerfCurveFamily::HAlpha(0.5),
        PerfCurveFamily::HAlpha(1.5),
        PerfCurveFamily::W,
    ];
    for trial in 0..TRIALS {
        let mut rng = trial_rng(6, trial);
        let n = rng.gen_range(1..=50);
        let counts: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=100)).collect();
        let p = RankedProfile::from_counts(&counts).map_err(|e| e.to_string())?;
        let mut sorted: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        sorted.sort_by(|a, b| b.total_cmp(a));
        for fam in &fams {
            let (got, want) = (srm_rank(&p, fam), brute_force_level(&sorted, fam));
            if got != want {
                return Err(format!("{} on {counts:?}: {got} vs {want}", fam.name()));
            }
        }
    }
    let p = RankedProfile::from_counts(&[5, 4, 3, 2, 1]).map_err(|e| e.to_string())?;
    let fixture: Vec<u64> = [
        PerfCurveFamily::H,
        PerfCurveFamily::H2,
        PerfCurveFamily::HAlpha(0.5),
        PerfCurveFamily::W,
    ]
    .iter()
    .map(|f| srm_rank(&p, f))
    .collect();
    if fixture != [3, 2, 4, 5] {
        return Err(format!("(5,4,3,2,1) gave {fixture:?}"));
    }
    Ok(format!(
        "{TRIALS} profiles x {} families exact; (5,4,3,2,1) -> {fixture:?}",
        fams.len()
    ))
}

fn criterion_7() -> Outcome {
    let fams = [
        PerfCurveFamily::H,
        PerfCurveFamily::HAlpha(1.5),
        PerfCurveFamily::HAlpha(2.0),
        PerfCurveFamily::H2,
        PerfCurveFamily::W,
    ];
    let mut regimes = Vec::new();
    let mut reports = Vec::new();
    for fam in fams {
        let r = RankingMetric::bibliometric(fam);
        let Some(from) = r.cash_subadditive_from() else {
            return Err(format!("{} does not declare cash-subadditivity", r.name()));
        };
        regimes.push(format!("{} k>={from}", r.name()));
        reports.push(check_cash_subadditivity(
            &r,
            &ProfileSampler::new(7),
            TRIALS,
            false,
        ));
    }
    let bad = failures(&reports);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    Ok(format!(
        "zero violations in {TRIALS} trials each: {}",
        regimes.join(", ")
    ))
}

/// Comonotone pair found by the seed-1 search, rounded to the printed digits.
fn stored_omega_pair() -> (ScenarioDist, ScenarioDist, f64) {
    let x = [
        -4.900871848455936,
        -2.6876022094639236,
        0.8003863647549894,
        1.7562165597902748,
        2.342568870871057,
    ];
    let y = [
        -2.2800819160108294,
        -1.6548426732089134,
        -1.6378604843223017,
        -1.4420698494932211,
        4.383188052268933,
    ];
    (
        ScenarioDist::equal_weight(&x).unwrap(),
        ScenarioDist::equal_weight(&y).unwrap(),
        0.45059756573093246,
    )
}

fn criterion_8() -> Outcome {
    let r = RankingMetric::omega(OmegaMode::Infinity);
    let om = |d: &ScenarioDist| omega(d, OmegaMode::Infinity).value;
    let s = DistSampler::new(1).with_pairing(Pairing::Comonotone);
    let search = check_quasiconcavity(&r, &s, 100_000);
    let Some(worst) = search.worst.clone() else {
        // the fixture checks below are skipped, and the line says so
        return Ok(format!(
            "INCONCLUSIVE: no counterexample in {} trials, fixture skipped",
            search.trials
        ));
    };
    if search.verdict != Verdict::Violated {
        return Err(format!("unexpected verdict {}", search.verdict));
    }
    let again = check_quasiconcavity(&r, &s, 100_000);
    if again.worst.as_ref() != Some(&worst) || again.violations != search.violations {
        return Err("search is not reproducible".into());
    }

    let (x, y, lambda) = stored_omega_pair();
    let m = x.mix_comonotone(&y, lambda).map_err(|e| e.to_string())?;
    let (ox, oy, omix) = (om(&x), om(&y), om(&m));
    if !(omix < ox.min(oy) - 1e-3) {
        return Err(format!("stored pair no longer violates: {ox} {oy} {omix}"));
    }
    // two states, mixed statewise: the gains cancel exactly
    let a = ScenarioDist::equal_weight(&[-5.0, 4.5]).unwrap();
    let b = ScenarioDist::equal_weight(&[3.0, -3.0]).unwrap();
    let ab = a.mix(&b, 0.4);
    if !(om(&ab) < 1e-12 && om(&a) == 0.9 && om(&b) == 1.0) {
        return Err(format!(
            "statewise fixture: {} {} {}",
            om(&a),
            om(&b),
            om(&ab)
        ));
    }
    Ok(format!(
        "{} violations in {} trials, worst at trial {} (reproduced); stored pair {ox:.4}, {oy:.4} -> {omix:.4}",
        search.violations, search.trials, worst.trial
    ))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let mut argv = vec!["ranking-metrics"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_with_args(argv, &mut out, &mut err);
    if code != EXIT_OK {
        return Err(format!(
            "{args:?} exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let want = 2.0 + (0.85 - 2.0) / 1.1;
    let (losses, _) = load_losses(&data("climate_losses.csv")).map_err(|e| e.to_string())?;
    let zones = load_zones(&data("climate_zones.csv")).map_err(|e| e.to_string())?;
    let series =
        aggregate_zones(&mean_center_losses(&losses), &zones).map_err(|e| e.to_string())?;
    let n = series
        .iter()
        .find(|z| z.zone == "N")
        .ok_or("zone N missing")?;
    let ce =
        climate_ce(&n.dist(), CLIMATE_THETA_LEVEL, CLIMATE_PENALTY).map_err(|e| e.to_string())?;
    if (ce.value - want).abs() > 1e-9 {
        return Err(format!("library CE {} vs {want}", ce.value));
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().to_str().unwrap();
    run_cli(&[
        "climate",
        "--input",
        data("climate_losses.csv").to_str().unwrap(),
        "--zones",
        data("climate_zones.csv").to_str().unwrap(),
        "--out",
        out,
    ])?;
    let board =
        fs::read_to_string(dir.path().join("leaderboard.csv")).map_err(|e| e.to_string())?;
    let row = board
        .lines()
        .find(|l| l.starts_with(&format!("N,{CLIMATE_CE_KEY},")))
        .ok_or_else(|| format!("no CE row for N in\n{board}"))?;
    let printed: f64 = row
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .map_err(|e| format!("{e}"))?;
    if (printed - want).abs() > 1e-9 {
        return Err(format!("CLI CE {printed} vs {want}"));
    }
    Ok(format!(
        "library {:.12}, CLI {printed}, expected {want:.12}",
        ce.value
    ))
}

fn vertex_dominance(obj: &dyn Objective, best: f64, label: &str) -> Result<(), String> {
    for i in 0..obj.n_assets() {
        let v = obj
            .evaluate(&PortfolioWeights::vertex(obj.n_assets(), i))
            .value;
        if !v.is_nan() && !ge_with_slack(best, v, 1e-9) {
            return Err(format!(
                "{label}: vertex {i} gives {v} above optimum {best}"
            ));
        }
    }
    Ok(())
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn criterion_10() -> Outcome {
    let (two, _) = load_returns(&data("two_asset.csv")).map_err(|e| e.to_string())?;
    let lvar = RankingMetric::lambda_var(LambdaFn::constant(0.5).unwrap());
    let res = maximize_metric(&two.returns, &lvar, 1000, 1, 1e-6).map_err(|e| e.to_string())?;
    let w = res.best_weights.as_slice();
    if (w[0] - 0.0).abs() > 1e-3
        || (w[1] - 1.0).abs() > 1e-3
        || (res.best_value.value - 0.05).abs() > 1e-6
    {
        return Err(format!("weights {w:?}, value {}", res.best_value.value));
    }
    let obj = DistObjective::new(&two.returns, &lvar).map_err(|e| e.to_string())?;
    let (gw, gv) = grid_search(&obj, 1000);
    if (gv.value - 0.05).abs() > 1e-6 || !ge_with_slack(res.best_value.value, gv.value, 1e-9) {
        return Err(format!("grid oracle {:?} -> {}", gw.as_slice(), gv.value));
    }

    let (demo, _) = load_returns(&data("returns_demo.csv")).map_err(|e| e.to_string())?;
    let keys = [
        "glr",
        "omega",
        "raroc:cvar:0.05",
        "lvar:const:0.5",
        "lvar:two_step:0.55:0.65:0",
        "ce:plinear:0.05:0.1",
        "shift:cvar:0.05",
    ];
    let mut checked = 0;
    for (panel, extra) in [
        (&two.returns, None),
        (&demo.returns, Some("raroc:tcvar:0.05")),
    ] {
        // the Student-t fit needs more than two observations
        for key in keys.into_iter().chain(extra) {
            let m = parse_metric_key(key)
                .and_then(|s| s.to_dist_metric(key, None))
                .map_err(|e| e.to_string())?;
            let r = maximize_metric(panel, &m, 40, 3, 1e-6).map_err(|e| e.to_string())?;
            vertex_dominance(
                &DistObjective::new(panel, &m).map_err(|e| e.to_string())?,
                r.best_value.value,
                key,
            )?;
            checked += 1;
        }
        for fam in [PerfCurveFamily::H, PerfCurveFamily::W] {
            let obj = ProfileObjective::new(panel, fam.clone()).map_err(|e| e.to_string())?;
            let r = maximize_objective(
                &obj,
                OptConfig {
                    n_starts: 40,
                    seed: 3,
                    ..OptConfig::default()
                },
            )
            .map_err(|e| e.to_string())?;
            vertex_dominance(&obj, r.best_value.value, &fam.name())?;
            checked += 1;
        }
    }

    let dirs: Vec<tempfile::TempDir> = (0..2).map(|_| tempfile::tempdir().unwrap()).collect();
    for d in &dirs {
        run_cli(&[
            "optimize",
            "--input",
            data("returns_demo.csv").to_str().unwrap(),
            "--metric",
            "omega",
            "--metric",
            "raroc:cvar:0.05",
            "--metric",
            "h",
            "--starts",
            "50",
            "--seed",
            "11",
            "--out",
            d.path().to_str().unwrap(),
        ])?;
    }
    let (a, b) = (dir_bytes(dirs[0].path()), dir_bytes(dirs[1].path()));
    if a.is_empty() || a != b {
        return Err("optimize output differs between identical runs".into());
    }
    Ok(format!(
        "weights ({:.2e}, {:.6}) value {}; vertex dominance on {checked} metric/instance pairs; {} output files byte-identical",
        w[0],
        w[1],
        res.best_value.value,
        a.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axiom suites", criterion_1),
        ("Omega - GLR identity", criterion_2),
        ("representation engine", criterion_3),
        ("expectile checks", criterion_4),
        ("Lambda quantile", criterion_5),
        ("bibliometric oracle", criterion_6),
        ("bibliometric cash-subadditivity", criterion_7),
        ("Omega falsification", criterion_8),
        ("climate pipeline", criterion_9),
        ("optimizer", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
