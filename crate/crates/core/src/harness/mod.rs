//! Experiment configuration, tail curves, exact singularity frequencies,
//! invariant suites, calibration and plotting.

pub mod calibration;
mod config;
pub mod oracle;
mod plot;
mod report;
mod singularity;
mod suite;
mod tails;

pub use config::{ExperimentConfig, ModelKind};
pub use plot::{emit_plot, emit_plot_file};
pub use report::union_bound_report;
pub use singularity::{exact_singularity_frequency, ExactFrequency, ENUMERATION_CAP};
pub use suite::{run_invariant_suite, suite_names, CheckResult, SuiteReport, SuiteResult};
pub use tails::{
    calibrate_tail_constant, parse_tail_csv, run_tail_experiment, standard_error, TailCell, TailCurve, CSV_HEADER,
};
