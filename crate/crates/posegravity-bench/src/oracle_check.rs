//! Solver-vs-oracle equivalence runner.
//!
//! For every configuration and noise level, random mixed point/line problems
//! are solved by both the closed-form solver and the brute-force grid oracle;
//! the solver's best loss must never exceed the oracle's beyond a rounding
//! allowance, and the grid safety net must stay inactive.

use posegravity::objective::build_objective;
use posegravity::{
    estimate_pose, gravity_alignment_rotation, oracle, transform_to_gravity_frame, SolverOptions,
};

use crate::rng::{subseed, SplitMix64};
use crate::scene::{perturb_detections, sample_scene, BenchError, Configuration, SceneConfig};

/// Loss gap allowance: `1e-8 · (1 + max|Ω|)`.
const LOSS_GAP_SCALE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct OracleCheckCell {
    pub configuration: Configuration,
    pub epsilon_noise: f64,
    pub trials: u64,
    pub violations: u64,
    pub grid_fallbacks: u64,
    pub unsolved: u64,
    pub worst_gap: f64,
}

#[derive(Debug, Clone)]
pub struct OracleCheckReport {
    pub cells: Vec<OracleCheckCell>,
}

impl OracleCheckReport {
    pub fn violations(&self) -> u64 {
        self.cells.iter().map(|c| c.violations).sum()
    }

    pub fn grid_fallbacks(&self) -> u64 {
        self.cells.iter().map(|c| c.grid_fallbacks).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0 && self.grid_fallbacks() == 0
    }
}

/// Run `trials_per_cell` problems for each configuration × ε ∈ {0, 0.01}.
pub fn oracle_check(trials_per_cell: u64, seed: u64) -> Result<OracleCheckReport, BenchError> {
    let mut cells = Vec::new();
    let mut cell_index = 0u64;
    for configuration in [
        Configuration::ImagePlane,
        Configuration::Spherical,
        Configuration::Planar,
    ] {
        for epsilon in [0.0, 0.01] {
            cells.push(check_cell(
                configuration,
                epsilon,
                trials_per_cell,
                subseed(seed, cell_index),
            )?);
            cell_index += 1;
        }
    }
    Ok(OracleCheckReport { cells })
}

fn check_cell(
    configuration: Configuration,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<OracleCheckCell, BenchError> {
    let opts = SolverOptions::default();
    let mut cell = OracleCheckCell {
        configuration,
        epsilon_noise: epsilon,
        trials,
        violations: 0,
        grid_fallbacks: 0,
        unsolved: 0,
        worst_gap: f64::NEG_INFINITY,
    };

    for trial in 0..trials {
        let mut rng = SplitMix64::new(subseed(seed, trial));
        // Mixed feature counts, resampled until solvable.
        let (n, m) = loop {
            let n = (rng.next_u64() % 5) as usize;
            let m = (rng.next_u64() % 5) as usize;
            if n >= 2 || m >= 3 || (n >= 1 && m >= 1) {
                break (n, m);
            }
        };
        let mut cfg = SceneConfig::new(configuration, n, m);
        cfg.epsilon_noise = epsilon;

        let scene = sample_scene(&cfg, &mut rng)?;
        let (points, lines) = perturb_detections(&scene, &cfg, &mut rng);

        let set = match estimate_pose(&points, &lines, &scene.gravity, &opts) {
            Ok(s) => s,
            Err(_) => {
                // Randomly drawn duplicates can be degenerate; they are not
                // oracle violations.
                cell.unsolved += 1;
                continue;
            }
        };
        if set.used_grid_fallback {
            cell.grid_fallbacks += 1;
        }

        let r_g = gravity_alignment_rotation(&scene.gravity);
        let (points_g, lines_g) = transform_to_gravity_frame(&points, &lines, &r_g);
        let objective = build_objective(&points_g, &lines_g, &opts)?;
        let oracle_best = oracle::grid_search(
            &objective.omega,
            oracle::DEFAULT_SAMPLES,
            oracle::DEFAULT_REFINE_ITERS,
        )
        .loss;

        let solver_best = set.solutions[0].loss;
        let gap = solver_best - oracle_best;
        cell.worst_gap = cell.worst_gap.max(gap);
        if gap > LOSS_GAP_SCALE * (1.0 + objective.omega.max_abs()) {
            cell.violations += 1;
        }
    }
    Ok(cell)
}
