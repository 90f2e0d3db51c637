//! Monte-Carlo trial runner, acceptance estimates, scaling fits and the CSV
//! record format.

mod record;
mod stats;
mod trials;

pub use record::{read_csv, records_to_csv, write_csv, ExperimentRecord, CSV_HEADER};
pub use stats::{
    estimate_acceptance, fit_line, fit_slope, median, median_queries_by_eps, wilson, AcceptanceEstimate,
    LineFit,
};
pub use trials::{run_trials, Instance, TrialConfig};
