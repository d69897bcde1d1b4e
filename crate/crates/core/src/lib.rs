//! Stochastic planning engine for mobile, plug-and-play multi-energy
//! micro-grids: hourly load-following dispatch, monthly cost accounting,
//! GBM scenario generation, GA sizing of rigid baselines, an actor-critic
//! capacity-expansion learner, and flexibility valuation.

pub mod config;
pub mod error;
pub mod scenario;
