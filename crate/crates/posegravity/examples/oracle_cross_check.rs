//! Cross-check the closed-form solver against the brute-force oracle.
//!
//! The oracle sweeps the single remaining rotation angle densely and refines
//! the best sample; the solver intersects conics. On any problem the two
//! must land on the same minimum loss.
//!
//! Run with: cargo run --example oracle_cross_check

use posegravity::objective::build_objective;
use posegravity::{
    estimate_pose, gravity_alignment_rotation, oracle, rotation_about_y,
    transform_to_gravity_frame, GravityPrior, PointCorrespondence, Pose, SolverOptions, Vec3,
};

fn main() {
    let angle = 2.1_f64;
    let ground_truth = Pose::new(
        rotation_about_y(angle.cos(), angle.sin()),
        Vec3::new(0.7, -0.5, 0.2),
    );
    let gravity = GravityPrior::new(ground_truth.rotation.matrix().col(1));

    // A noisy five-point problem (hand-jittered bearings).
    let worlds = [
        Vec3::new(1.0, 0.5, 6.0),
        Vec3::new(-2.0, 1.0, 8.0),
        Vec3::new(0.3, -1.5, 5.0),
        Vec3::new(2.5, 0.1, 11.0),
        Vec3::new(-0.6, -0.9, 4.0),
    ];
    let jitter = [
        (0.003, -0.001),
        (-0.002, 0.004),
        (0.001, 0.002),
        (-0.004, -0.003),
        (0.002, -0.002),
    ];
    let points: Vec<PointCorrespondence> = worlds
        .iter()
        .zip(jitter)
        .map(|(&d, (jx, jy))| {
            let cam = ground_truth.transform(d);
            let bearing = cam * (1.0 / cam.z) + Vec3::new(jx, jy, 0.0);
            PointCorrespondence::new(bearing, d)
        })
        .collect();

    let opts = SolverOptions::default();
    let set = estimate_pose(&points, &[], &gravity, &opts).unwrap();
    let solver_best = set.solutions[0].loss;

    // Same objective, brute force.
    let r_g = gravity_alignment_rotation(&gravity);
    let (points_g, _) = transform_to_gravity_frame(&points, &[], &r_g);
    let omega = build_objective(&points_g, &[], &opts).unwrap().omega;
    let grid = oracle::grid_search(
        &omega,
        oracle::DEFAULT_SAMPLES,
        oracle::DEFAULT_REFINE_ITERS,
    );

    println!("solver best loss: {solver_best:.12e}");
    println!(
        "oracle best loss: {:.12e}  (theta = {:.6} rad)",
        grid.loss, grid.theta
    );
    println!("gap: {:.3e}", solver_best - grid.loss);
    assert!(solver_best <= grid.loss + 1e-8 * (1.0 + omega.max_abs()));

    // The full-residual route (no translation elimination) agrees with the
    // conic value at the solver's minimizer.
    let best = &set.solutions[0];
    let direct = oracle::full_pose_residual(
        &Pose::new(
            rotation_about_y(best.r.x, best.r.y),
            r_g.apply(best.pose.translation),
        ),
        &points_g,
        &[],
        opts.delta,
    );
    println!("full-residual route at the minimizer: {direct:.12e}");
}
