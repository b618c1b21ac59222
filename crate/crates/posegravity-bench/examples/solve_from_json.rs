//! Round-trip the JSON interfaces: build a problem document, solve it, and
//! print the solutions document — the same schema the `posegravity solve`
//! subcommand reads and writes.
//!
//! Run with: cargo run --example solve_from_json

use posegravity::{estimate_pose, SolverOptions};
use posegravity_bench::io::{ProblemFile, SolutionsFile};

fn main() {
    let problem_json = r#"{
        "gravity": [0.0, 1.0, 0.0],
        "points": [
            {"image": [0.0, 0.0, 1.0],  "world": [0.0, 0.0, 2.0]},
            {"image": [0.25, 0.1, 1.0], "world": [1.0, 0.4, 4.0]},
            {"image": [-0.3, 0.2, 1.0], "world": [-2.1, 1.4, 7.0]}
        ],
        "lines": []
    }"#;

    let problem: ProblemFile = serde_json::from_str(problem_json).expect("valid problem JSON");
    let (points, lines, gravity) = problem.to_inputs();

    let set = estimate_pose(&points, &lines, &gravity, &SolverOptions::default())
        .expect("solvable problem");

    let solutions = SolutionsFile::from(&set);
    println!("{}", serde_json::to_string_pretty(&solutions).unwrap());
}
