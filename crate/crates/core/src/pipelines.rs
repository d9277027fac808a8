//! CSV ingestion and the two ranking studies: portfolios of assets and
//! climate-loss zones.
//!
//! Layouts (first line is always a header):
//!
//! ```text
//! returns  date,TICKER1,TICKER2,...     decimal simple returns, one row per date
//! losses   country,YEAR1,YEAR2,...      nonnegative losses, one row per country
//! zones    country,zone
//! groups   portfolio,ticker             equal weights within a portfolio
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::bibliometric::{build_profile, srm_rank};
use crate::error::{Error, Result};
use crate::rankmetrics::{r_certainty_equiv, MetricSpec, MetricValue, Provenance};
use crate::riskmeasures::UtilityFn;
use crate::scenarios::ScenarioDist;

pub const CLIMATE_THETA_LEVEL: f64 = 0.75;
pub const CLIMATE_PENALTY: f64 = 0.1;
/// Metric key equivalent to [`climate_ce`] with default parameters.
pub const CLIMATE_CE_KEY: &str = "ce:plinear:0.75q:0.1";

/// Twelve significant digits, shortest form.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
        format!("{}", rounded + 0.0)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct IngestReport {
    pub rows_dropped: usize,
    /// Columns with no values at all.
    pub columns_excluded: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReturnPanel {
    pub dates: Vec<String>,
    pub tickers: Vec<String>,
    /// `[date x ticker]`.
    pub returns: Vec<Vec<f64>>,
}

impl ReturnPanel {
    pub fn column(&self, ticker: &str) -> Option<Vec<f64>> {
        let j = self.tickers.iter().position(|t| t == ticker)?;
        Some(self.returns.iter().map(|r| r[j]).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LossPanel {
    pub countries: Vec<String>,
    pub years: Vec<String>,
    /// `[country x year]`.
    pub losses: Vec<Vec<f64>>,
}

/// Centered scores `Y = -(L - mean)`, same shape as the loss panel.
#[derive(Debug, Clone, PartialEq)]
pub struct ResiliencePanel {
    pub countries: Vec<String>,
    pub years: Vec<String>,
    pub scores: Vec<Vec<f64>>,
}

/// Country to zone, with zones in order of first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoneMap {
    zone_of: HashMap<String, String>,
    zones: Vec<String>,
}

impl ZoneMap {
    pub fn new(pairs: impl IntoIterator<Item = (String, String)>) -> Result<Self> {
        let mut zone_of = HashMap::new();
        let mut zones = Vec::new();
        for (country, zone) in pairs {
            if zone.is_empty() {
                return Err(Error::param(
                    "zones",
                    format!("country `{country}` has an empty zone"),
                ));
            }
            if !zones.contains(&zone) {
                zones.push(zone.clone());
            }
            if zone_of.insert(country.clone(), zone).is_some() {
                return Err(Error::param(
                    "zones",
                    format!("country `{country}` is mapped twice"),
                ));
            }
        }
        Ok(Self { zone_of, zones })
    }

    pub fn zone(&self, country: &str) -> Option<&str> {
        self.zone_of.get(country).map(String::as_str)
    }

    pub fn zones(&self) -> &[String] {
        &self.zones
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioGroup {
    pub name: String,
    pub tickers: Vec<String>,
}

fn ingest_err(origin: &str, message: impl Into<String>) -> Error {
    Error::Ingest {
        path: origin.to_string(),
        message: message.into(),
    }
}

fn read_path(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| ingest_err(&path.display().to_string(), e.to_string()))
}

/// Header plus records, all trimmed.
fn read_table(text: &str, origin: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| ingest_err(origin, format!("malformed header: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        // header is line 1
        let rec = rec.map_err(|e| ingest_err(origin, format!("row {}: {e}", i + 2)))?;
        rows.push(rec.iter().map(str::to_string).collect());
    }
    Ok((header, rows))
}

fn check_unique(labels: &[String], what: &str, origin: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if l.is_empty() {
            return Err(ingest_err(origin, format!("empty {what} in header")));
        }
        if !seen.insert(l) {
            return Err(ingest_err(origin, format!("duplicate {what} `{l}`")));
        }
    }
    Ok(())
}

/// Parses a labelled numeric matrix. Rows with a blank cell are dropped and
/// counted; columns blank in every row are excluded first.
fn read_matrix(
    text: &str,
    origin: &str,
    first_column: &str,
    column_kind: &str,
) -> Result<(Vec<String>, Vec<String>, Vec<Vec<f64>>, IngestReport)> {
    let (header, rows) = read_table(text, origin)?;
    if header.first().map(String::as_str) != Some(first_column) || header.len() < 2 {
        return Err(ingest_err(
            origin,
            format!("malformed header: expected `{first_column},{column_kind}...`"),
        ));
    }
    let columns = header[1..].to_vec();
    check_unique(&columns, column_kind, origin)?;
    let keep: Vec<bool> = (0..columns.len())
        .map(|j| rows.iter().any(|r| !r[j + 1].is_empty()))
        .collect();
    let mut report = IngestReport {
        columns_excluded: columns
            .iter()
            .zip(&keep)
            .filter(|(_, k)| !**k)
            .map(|(c, _)| c.clone())
            .collect(),
        ..IngestReport::default()
    };
    let mut labels = Vec::new();
    let mut matrix = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&String> = row[1..]
            .iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|(c, _)| c)
            .collect();
        if cells.iter().any(|c| c.is_empty()) {
            report.rows_dropped += 1;
            continue;
        }
        let values = cells
            .iter()
            .zip(
                columns
                    .iter()
                    .zip(&keep)
                    .filter(|(_, k)| **k)
                    .map(|(c, _)| c),
            )
            .map(|(cell, col)| {
                cell.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        ingest_err(
                            origin,
                            format!("row {}, column `{col}`: `{cell}` is not a number", i + 2),
                        )
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        labels.push(row[0].clone());
        matrix.push(values);
    }
    let kept: Vec<String> = columns
        .into_iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(c, _)| c)
        .collect();
    if matrix.is_empty() || kept.is_empty() {
        return Err(ingest_err(origin, "no complete rows"));
    }
    Ok((labels, kept, matrix, report))
}

pub fn parse_returns(text: &str, origin: &str) -> Result<(ReturnPanel, IngestReport)> {
    let (dates, tickers, returns, report) = read_matrix(text, origin, "date", "ticker")?;
    Ok((
        ReturnPanel {
            dates,
            tickers,
            returns,
        },
        report,
    ))
}

pub fn load_returns(path: &Path) -> Result<(ReturnPanel, IngestReport)> {
    parse_returns(&read_path(path)?, &path.display().to_string())
}

pub fn parse_losses(text: &str, origin: &str) -> Result<(LossPanel, IngestReport)> {
    let (countries, years, losses, report) = read_matrix(text, origin, "country", "year")?;
    check_unique(&countries, "country", origin)?;
    for (c, row) in countries.iter().zip(&losses) {
        if let Some((j, v)) = row.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(ingest_err(
                origin,
                format!("country `{c}`, year `{}`: negative loss {v}", years[j]),
            ));
        }
    }
    Ok((
        LossPanel {
            countries,
            years,
            losses,
        },
        report,
    ))
}

pub fn load_losses(path: &Path) -> Result<(LossPanel, IngestReport)> {
    parse_losses(&read_path(path)?, &path.display().to_string())
}

fn read_pairs(text: &str, origin: &str) -> Result<Vec<(String, String)>> {
    let (header, rows) = read_table(text, origin)?;
    if header.len() != 2 {
        return Err(ingest_err(origin, "malformed header: expected two columns"));
    }
    Ok(rows
        .into_iter()
        .map(|r| (r[0].clone(), r[1].clone()))
        .collect())
}

pub fn parse_zones(text: &str, origin: &str) -> Result<ZoneMap> {
    ZoneMap::new(read_pairs(text, origin)?).map_err(|e| ingest_err(origin, e.to_string()))
}

pub fn load_zones(path: &Path) -> Result<ZoneMap> {
    parse_zones(&read_path(path)?, &path.display().to_string())
}

/// Groups in order of first appearance.
pub fn parse_groups(text: &str, origin: &str) -> Result<Vec<PortfolioGroup>> {
    let mut groups: Vec<PortfolioGroup> = Vec::new();
    for (name, ticker) in read_pairs(text, origin)? {
        match groups.iter_mut().find(|g| g.name == name) {
            Some(g) if g.tickers.contains(&ticker) => {
                return Err(ingest_err(
                    origin,
                    format!("ticker `{ticker}` listed twice in `{name}`"),
                ))
            }
            Some(g) => g.tickers.push(ticker),
            None => groups.push(PortfolioGroup {
                name,
                tickers: vec![ticker],
            }),
        }
    }
    Ok(groups)
}

pub fn load_groups(path: &Path) -> Result<Vec<PortfolioGroup>> {
    parse_groups(&read_path(path)?, &path.display().to_string())
}

/// `Y[c][t] = -(L[c][t] - mean)` with the grand mean over all cells.
pub fn mean_center_losses(p: &LossPanel) -> ResiliencePanel {
    let cells = (p.countries.len() * p.years.len()) as f64;
    let mean = p.losses.iter().flatten().sum::<f64>() / cells;
    ResiliencePanel {
        countries: p.countries.clone(),
        years: p.years.clone(),
        scores: p
            .losses
            .iter()
            .map(|row| row.iter().map(|l| -(l - mean)).collect())
            .collect(),
    }
}

/// Yearly zone series, the columnwise sum of the zone's countries.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoneSeries {
    pub zone: String,
    pub series: Vec<f64>,
}

impl ZoneSeries {
    pub fn dist(&self) -> ScenarioDist {
        ScenarioDist::equal_weight(&self.series).expect("zone series is nonempty and finite")
    }
}

/// Zones in map order; zones without countries in the panel are omitted.
pub fn aggregate_zones(p: &ResiliencePanel, zm: &ZoneMap) -> Result<Vec<ZoneSeries>> {
    aggregate_zones_weighted(p, zm, None)
}

/// Like [`aggregate_zones`] with each country's row scaled by its weight.
/// Countries missing from `weights` count once.
pub fn aggregate_zones_weighted(
    p: &ResiliencePanel,
    zm: &ZoneMap,
    weights: Option<&BTreeMap<String, f64>>,
) -> Result<Vec<ZoneSeries>> {
    let mut sums: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for (c, row) in p.countries.iter().zip(&p.scores) {
        let zone = zm
            .zone(c)
            .ok_or_else(|| Error::param("zones", format!("country `{c}` has no zone")))?;
        let w = weights.and_then(|m| m.get(c)).copied().unwrap_or(1.0);
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::param(
                "weights",
                format!("country `{c}` has weight {w}"),
            ));
        }
        let acc = sums.entry(zone).or_insert_with(|| vec![0.0; p.years.len()]);
        acc.iter_mut().zip(row).for_each(|(a, y)| *a += w * y);
    }
    Ok(zm
        .zones()
        .iter()
        .filter_map(|z| {
            sums.remove(z.as_str()).map(|series| ZoneSeries {
                zone: z.clone(),
                series,
            })
        })
        .collect())
}

/// Certainty-equivalent metric with `theta` at the `theta_level` quantile of the
/// zone distribution and slope `m` above it.
pub fn climate_ce(d: &ScenarioDist, theta_level: f64, m: f64) -> Result<MetricValue> {
    let u = UtilityFn::piecewise_linear(d.quantile(theta_level), m)?;
    Ok(r_certainty_equiv(d, &u))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeaderRow {
    pub entity: String,
    pub metric: String,
    pub value: MetricValue,
    /// Dense rank: 1 is best, ties share a rank.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Leaderboard {
    pub rows: Vec<LeaderRow>,
}

impl Leaderboard {
    /// Builds rows for one metric and assigns dense ranks.
    fn push_metric(&mut self, metric: &str, values: Vec<(String, MetricValue)>) {
        let mut distinct: Vec<f64> = values.iter().map(|(_, v)| v.value).collect();
        distinct.sort_by(|a, b| b.total_cmp(a));
        distinct.dedup();
        for (entity, value) in values {
            let rank = distinct
                .iter()
                .position(|d| *d == value.value)
                .expect("value is listed")
                + 1;
            self.rows.push(LeaderRow {
                entity,
                metric: metric.to_string(),
                value,
                rank,
            });
        }
    }

    pub fn metrics(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.metric.as_str()) {
                out.push(&r.metric);
            }
        }
        out
    }

    pub fn get(&self, entity: &str, metric: &str) -> Option<&LeaderRow> {
        self.rows
            .iter()
            .find(|r| r.entity == entity && r.metric == metric)
    }

    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "entity,metric,value,rank")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{}",
                r.entity,
                r.metric,
                fmt_sig(r.value.value),
                r.rank
            )?;
        }
        Ok(())
    }

    /// Entities of one metric sorted by descending value, then name.
    pub fn write_plot_csv(&self, metric: &str, mut out: impl Write) -> Result<()> {
        let mut rows: Vec<&LeaderRow> = self.rows.iter().filter(|r| r.metric == metric).collect();
        rows.sort_by(|a, b| {
            b.value
                .value
                .total_cmp(&a.value.value)
                .then(a.entity.cmp(&b.entity))
        });
        writeln!(out, "entity,value")?;
        for r in rows {
            writeln!(out, "{},{}", r.entity, fmt_sig(r.value.value))?;
        }
        Ok(())
    }

    /// `leaderboard.csv` plus `plot_<metric>.csv` per metric; returns the paths.
    pub fn write_all(&self, dir: &Path) -> Result<Vec<std::path::PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut paths = vec![dir.join("leaderboard.csv")];
        self.write_csv(fs::File::create(&paths[0])?)?;
        for m in self.metrics() {
            let p = dir.join(format!("plot_{}.csv", file_safe(m)));
            self.write_plot_csv(m, fs::File::create(&p)?)?;
            paths.push(p);
        }
        Ok(paths)
    }
}

pub fn file_safe(key: &str) -> String {
    key.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Parsed metric keys, each kept with its original spelling.
pub fn parse_keys(keys: &[String]) -> Result<Vec<(String, MetricSpec)>> {
    keys.iter()
        .map(|k| {
            Ok((
                k.trim().to_string(),
                crate::rankmetrics::parse_metric_key(k)?,
            ))
        })
        .collect()
}

fn group_columns(panel: &ReturnPanel, g: &PortfolioGroup) -> Result<Vec<usize>> {
    if g.tickers.is_empty() {
        return Err(Error::param(
            "groups",
            format!("portfolio `{}` is empty", g.name),
        ));
    }
    g.tickers
        .iter()
        .map(|t| {
            panel.tickers.iter().position(|p| p == t).ok_or_else(|| {
                Error::param(
                    "groups",
                    format!("portfolio `{}` references unknown ticker `{t}`", g.name),
                )
            })
        })
        .collect()
}

/// Equal-weight return series of each group.
pub fn group_returns(panel: &ReturnPanel, groups: &[PortfolioGroup]) -> Result<Vec<Vec<f64>>> {
    groups
        .iter()
        .map(|g| {
            let cols = group_columns(panel, g)?;
            let w = 1.0 / cols.len() as f64;
            Ok(panel
                .returns
                .iter()
                .map(|r| cols.iter().map(|&j| w * r[j]).sum())
                .collect())
        })
        .collect()
}

/// Values of every metric for every portfolio, with dense ranks per metric.
///
/// Two-step keys without a threshold use the pooled returns of all portfolios;
/// bibliometric keys rank the rescaled expected-return profiles.
pub fn rank_portfolios(
    panel: &ReturnPanel,
    groups: &[PortfolioGroup],
    metrics: &[(String, MetricSpec)],
) -> Result<Leaderboard> {
    let series = group_returns(panel, groups)?;
    let dists: Vec<ScenarioDist> = series
        .iter()
        .map(|s| ScenarioDist::equal_weight(s))
        .collect::<Result<_>>()?;
    let pooled = if metrics.iter().any(|(_, m)| m.needs_pooled_data()) {
        Some(ScenarioDist::equal_weight(&series.concat())?)
    } else {
        None
    };
    let profiles = if metrics.iter().any(|(_, m)| m.is_bibliometric()) {
        let t = panel.returns.len() as f64;
        let mut expected = Vec::new();
        let mut weights = Vec::new();
        for g in groups {
            let cols = group_columns(panel, g)?;
            expected.push(
                cols.iter()
                    .map(|&j| panel.returns.iter().map(|r| r[j]).sum::<f64>() / t)
                    .collect::<Vec<f64>>(),
            );
            weights.push(vec![1.0 / cols.len() as f64; cols.len()]);
        }
        Some(build_profile(&expected, &weights)?)
    } else {
        None
    };

    let mut board = Leaderboard::default();
    for (key, spec) in metrics {
        let values: Vec<MetricValue> = match spec {
            MetricSpec::Bibliometric(fam) => profiles
                .as_ref()
                .expect("built above")
                .par_iter()
                .map(|p| MetricValue::new(srm_rank(p, fam) as f64, Provenance::Level))
                .collect(),
            _ => {
                let metric = spec.to_dist_metric(key, pooled.as_ref())?;
                dists.par_iter().map(|d| metric.evaluate(d)).collect()
            }
        };
        board.push_metric(
            key,
            groups.iter().map(|g| g.name.clone()).zip(values).collect(),
        );
    }
    Ok(board)
}

/// Zone leaderboard from a loss panel. Bibliometric keys are rejected.
pub fn rank_zones(
    losses: &LossPanel,
    zones: &ZoneMap,
    metrics: &[(String, MetricSpec)],
) -> Result<(Leaderboard, Vec<ZoneSeries>)> {
    let series = aggregate_zones(&mean_center_losses(losses), zones)?;
    let dists: Vec<ScenarioDist> = series.iter().map(ZoneSeries::dist).collect();
    let pooled = ScenarioDist::equal_weight(
        &series
            .iter()
            .flat_map(|s| s.series.clone())
            .collect::<Vec<_>>(),
    )?;
    let mut board = Leaderboard::default();
    for (key, spec) in metrics {
        let metric = spec.to_dist_metric(key, Some(&pooled))?;
        let values = dists
            .par_iter()
            .map(|d| metric.evaluate(d))
            .collect::<Vec<_>>();
        board.push_metric(
            key,
            series.iter().map(|s| s.zone.clone()).zip(values).collect(),
        );
    }
    Ok((board, series))
}
