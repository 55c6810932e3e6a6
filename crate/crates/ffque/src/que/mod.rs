//! Level-aspect equidistribution harness: test weights, the Eisenstein inner
//! product as an exact finite sum, the predicted leading term, sweeps over
//! levels, configuration and the verification battery.

pub mod config;
pub mod suite;
pub mod sweep;
pub mod weight;

pub use config::Config;
pub use suite::{run_verification_suite, CheckResult, SuiteReport};
pub use sweep::{
    check_t, compute_i, first_irreducible, linear_fit, predicted_leading, que_sweep, target_slope, IValues,
    LevelRecord, Prediction, QueRun,
};
pub use weight::TestWeight;
