//! Ranking metrics over finite return distributions.
//!
//! A ranking metric maps a position to a performance level in `[0, inf]` and is
//! monotone and cash-quasiconcave. This crate provides:
//!
//! - [`scenarios`]: finite empirical distributions and their statistics;
//! - [`riskmeasures`]: VaR, CVaR, expectiles, Lambda-quantiles, expected-loss and
//!   certainty-equivalent risk functionals, plus level-indexed risk families;
//! - [`rankmetrics`]: GLR, Omega, RAROC, Lambda-quantile and certainty-equivalent
//!   metrics, the `sup{x : rho_x <= 0}` engine and acceptance sets;
//! - [`bibliometric`]: h, h², h_alpha and w indices over ranked asset profiles;
//! - [`axiomlab`]: randomized checks of monotonicity, (cash-)quasiconcavity and
//!   cash-subadditivity;
//! - [`optimize`]: multistart Nelder–Mead maximization over the unit simplex;
//! - [`pipelines`]: CSV ingestion, portfolio leaderboards and climate-loss zones;
//! - [`cli`]: the `rank`, `climate`, `optimize` and `verify` commands.

pub mod axiomlab;
pub mod bibliometric;
pub mod cli;
pub mod error;
pub mod optimize;
pub mod pipelines;
pub mod rankmetrics;
pub mod riskmeasures;
pub mod scenarios;

pub use error::{Error, Result};

pub use rankmetrics::{MetricValue, RankingMetric};
pub use scenarios::ScenarioDist;
