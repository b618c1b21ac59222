//! Trial runner and metric aggregation.
//!
//! Each trial gets its own counter-derived RNG stream, so a record depends
//! only on `(seed, trial_index)` and the stream layout — never on worker
//! scheduling. Per-trial wall time covers the solve call only.

use std::time::Instant;

use posegravity::{
    estimate_pose, rotation_angle_error_deg, translation_error, SolutionCase, SolverOptions,
};

use crate::rng::{subseed, SplitMix64};
use crate::scene::{perturb_detections, perturb_gravity, sample_scene, BenchError, SceneConfig};

/// Outcome of a single trial.
#[derive(Debug, Clone, Copy)]
pub struct TrialRecord {
    pub trial: u64,
    /// Errors of the returned solution closest to ground truth in rotation;
    /// `None` when the solver returned no solution.
    pub rot_err_deg: Option<f64>,
    pub trans_err: Option<f64>,
    pub n_solutions: usize,
    pub case: Option<SolutionCase>,
    /// True when the minimal path had to recover a non-exact solution.
    pub recovered: bool,
    pub runtime_ns: u64,
}

/// Aggregated experiment result.
#[derive(Debug, Clone)]
pub struct BenchSummary {
    pub config: SceneConfig,
    pub trials_with_solution: u64,
    pub median_rot_err_deg: f64,
    pub median_trans_err: f64,
    pub median_runtime_us: f64,
}

/// Run every trial of `cfg` and collect records in trial order.
pub fn run_trials(cfg: &SceneConfig) -> Result<Vec<TrialRecord>, BenchError> {
    cfg.validate()?;
    let opts = SolverOptions::default();
    let mut records = Vec::with_capacity(cfg.trials as usize);
    for trial in 0..cfg.trials {
        records.push(run_trial(cfg, trial, &opts)?);
    }
    Ok(records)
}

/// Run one trial: sample, perturb, solve, time, score.
pub fn run_trial(
    cfg: &SceneConfig,
    trial: u64,
    opts: &SolverOptions,
) -> Result<TrialRecord, BenchError> {
    let mut rng = SplitMix64::new(subseed(cfg.seed, trial));
    let scene = sample_scene(cfg, &mut rng)?;
    let gravity = perturb_gravity(&scene.gravity, cfg.gravity_noise_deg, &mut rng);
    let (points, lines) = perturb_detections(&scene, cfg, &mut rng);

    let start = Instant::now();
    let result = estimate_pose(&points, &lines, &gravity, opts);
    let runtime_ns = start.elapsed().as_nanos() as u64;

    let record = match result {
        Ok(set) => {
            // Multi-solution trials score the solution with the lowest
            // rotation error; ground-truth-aware selection is benchmark-only.
            let gt = &scene.ground_truth;
            let best = set
                .solutions
                .iter()
                .map(|s| {
                    (
                        rotation_angle_error_deg(&gt.rotation, &s.pose.rotation),
                        translation_error(gt.translation, s.pose.translation),
                    )
                })
                .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
                .unwrap();
            TrialRecord {
                trial,
                rot_err_deg: Some(best.0),
                trans_err: Some(best.1),
                n_solutions: set.solutions.len(),
                case: Some(set.case),
                recovered: set.case == SolutionCase::MinimalRecovered,
                runtime_ns,
            }
        }
        Err(_) => TrialRecord {
            trial,
            rot_err_deg: None,
            trans_err: None,
            n_solutions: 0,
            case: None,
            recovered: false,
            runtime_ns,
        },
    };
    Ok(record)
}

/// Medians over the trials that produced a solution. With
/// `count_recovered = false`, recovered minimal solutions count as failures —
/// the "without recovery" solver variant re-scored on identical trials.
pub fn summarize(
    cfg: &SceneConfig,
    records: &[TrialRecord],
    count_recovered: bool,
) -> BenchSummary {
    let solved = |r: &&TrialRecord| r.n_solutions > 0 && (count_recovered || !r.recovered);
    let mut rot: Vec<f64> = records
        .iter()
        .filter(solved)
        .filter_map(|r| r.rot_err_deg)
        .collect();
    let mut trans: Vec<f64> = records
        .iter()
        .filter(solved)
        .filter_map(|r| r.trans_err)
        .collect();
    let mut runtime: Vec<f64> = records
        .iter()
        .map(|r| r.runtime_ns as f64 / 1000.0)
        .collect();
    BenchSummary {
        config: cfg.clone(),
        trials_with_solution: rot.len() as u64,
        median_rot_err_deg: median(&mut rot),
        median_trans_err: median(&mut trans),
        median_runtime_us: median(&mut runtime),
    }
}

/// Convenience wrapper: run and summarize.
pub fn run_experiment(
    cfg: &SceneConfig,
    count_recovered: bool,
) -> Result<(BenchSummary, Vec<TrialRecord>), BenchError> {
    let records = run_trials(cfg)?;
    Ok((summarize(cfg, &records, count_recovered), records))
}

/// Statistical median; NaN for an empty slice.
pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Percentile by nearest-rank; NaN for an empty slice.
pub fn percentile(values: &mut [f64], p: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let rank = ((p / 100.0) * values.len() as f64).ceil() as usize;
    values[rank.clamp(1, values.len()) - 1]
}
