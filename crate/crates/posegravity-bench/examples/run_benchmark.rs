//! Run the two-point minimal benchmark at several detection-noise levels,
//! with and without recovery of non-intersecting minimal solutions.
//!
//! Run with: cargo run --release --example run_benchmark

use posegravity_bench::{run_trials, summarize, Configuration, SceneConfig};

fn main() {
    let trials = 100_000;
    println!("ImagePlane, 2 points, {trials} trials per row");
    println!(
        "{:<8} {:<12} {:>12} {:>12} {:>12}",
        "eps", "variant", "solved", "rot median", "trans median"
    );
    for eps in [1e-3, 0.01, 0.1] {
        let mut cfg = SceneConfig::new(Configuration::ImagePlane, 2, 0);
        cfg.trials = trials;
        cfg.seed = 1;
        cfg.epsilon_noise = eps;
        let records = run_trials(&cfg).expect("benchmark failed");
        for (label, count_recovered) in [("with rec.", true), ("no rec.", false)] {
            let s = summarize(&cfg, &records, count_recovered);
            println!(
                "{:<8} {:<12} {:>12} {:>12.6} {:>12.5}",
                eps, label, s.trials_with_solution, s.median_rot_err_deg, s.median_trans_err
            );
        }
    }
}
