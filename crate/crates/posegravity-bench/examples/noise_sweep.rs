//! Sweep gravity-measurement noise against detection noise and print the
//! benchmark CSV rows, one cell per line.
//!
//! Run with: cargo run --release --example noise_sweep

use posegravity_bench::io::{csv_row, CSV_HEADER};
use posegravity_bench::{run_experiment, Configuration, SceneConfig};

fn main() {
    println!("{CSV_HEADER}");
    for config in [
        Configuration::ImagePlane,
        Configuration::Spherical,
        Configuration::Planar,
    ] {
        for eps in [1e-3, 0.01] {
            for grav_deg in [0.1, 0.5, 2.0] {
                let mut cfg = SceneConfig::new(config, 3, 0);
                cfg.trials = 10_000;
                cfg.seed = 4242;
                cfg.epsilon_noise = eps;
                cfg.gravity_noise_deg = grav_deg;
                let (summary, _) = run_experiment(&cfg, true).expect("benchmark failed");
                println!("{}", csv_row(&summary));
            }
        }
    }
}
