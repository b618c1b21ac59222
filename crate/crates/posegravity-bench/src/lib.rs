//! Synthetic benchmark harness for the `posegravity` solver: deterministic
//! scene generation, noise models, metric aggregation, and solver-vs-oracle
//! equivalence checks. The `posegravity` binary in this package exposes the
//! `solve`, `bench`, and `oracle-check` subcommands on top of it.

pub mod experiment;
pub mod io;
pub mod oracle_check;
pub mod rng;
pub mod scene;

pub use experiment::{
    median, percentile, run_experiment, run_trial, run_trials, summarize, BenchSummary, TrialRecord,
};
pub use oracle_check::{oracle_check, OracleCheckCell, OracleCheckReport};
pub use rng::{subseed, SplitMix64};
pub use scene::{
    perturb_detections, perturb_gravity, sample_ground_truth, sample_scene, sample_unit_vector,
    BenchError, Configuration, Scene, SceneConfig, SceneLine, ScenePoint,
};
