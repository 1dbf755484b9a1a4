//! Experiment runner: multi-run campaigns, learning-curve files and
//! statistical comparison of ablations.

mod experiment;
mod record;
mod stats;

pub use experiment::{
    evolve, final_values_in, run_experiment, run_file_name, run_single, Ablation,
    ExperimentConfig, ExperimentSummary, RunOutcome, Task, ABLATION_TRIALS, DEFAULT_RUNS,
    DEFAULT_TRIALS,
};
pub use record::{average_csv, average_curve, plot_script, AverageRow, RunRecord, RunRow, RUN_HEADER};
pub use stats::{best_of_window, mann_whitney_u, Alternative, Comparison, EXACT_LIMIT, SIGNIFICANCE};
