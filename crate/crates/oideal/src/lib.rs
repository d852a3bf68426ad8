//! Scenario runner and command line front end for order ideal computations.

pub mod build;
pub mod chern;
pub mod corpus;
pub mod io;
pub mod run;
pub mod scenario;

pub use run::{run_all, run_scenario, select, Outcome, Report};
pub use scenario::Scenario;
