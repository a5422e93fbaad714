//! Ranking objects from noisy pairwise comparisons.
//!
//! Objects carry latent qualities; a comparison prefers the better object
//! with probability given by a link function of the quality difference
//! (Gaussian-CDF or logistic). This crate reconstructs the qualities from
//! comparison tallies on a graph and ranks the objects:
//!
//! - [`models`]: the preference links, their inverses and derivatives,
//!   and comparison sampling.
//! - [`graphs`]: comparison-graph families (complete, star, random
//!   regular, hub, wheel) and the row-stochastic system matrices.
//! - [`estimators`]: least-squares, inverse-variance weighted
//!   least-squares, and Newton maximum-likelihood estimation.
//! - [`analysis`]: the absorbing-random-walk view of the solver, used as
//!   an independent correctness oracle and a graph diagnostic.
//! - [`metrics`]: threshold ranking error, Kendall tau distance, and
//!   shift-aligned mean square error.
//! - [`experiments`]: a reproducible Monte-Carlo harness, including the
//!   two-stage adaptive comparison-allocation scheme.
//! - [`io`]: CSV formats and the match-score ingestion path.
//!
//! Each major capability has a runnable example under `examples/`; the
//! `pairrank` binary exposes the same machinery as subcommands.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod graphs;
pub mod io;
pub mod metrics;
pub mod models;
mod normal;

pub use error::{Error, Result};
