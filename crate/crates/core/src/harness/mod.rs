//! Experiments, sweeps and their CSV and SVG outputs.

pub mod csv;
mod experiment;
pub mod svg;
mod sweep;

pub use experiment::{policy_for, run_experiment, run_experiment_with, ExperimentResult, SlotMetrics};
pub use sweep::{mean_std, run_compare, run_sweep, Metrics, PointSummary, SweepCell, SweepTable};
