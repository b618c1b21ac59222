//! Minimal configuration: two points plus gravity determine the pose.
//!
//! With exact data the rank-1 loss line crosses the unit circle and the
//! solver returns up to two exact solutions. Under heavy noise the line can
//! miss the circle entirely; the solver then recovers the loss-minimizing
//! feasible solution and tags the result `MinimalRecovered`.
//!
//! Run with: cargo run --example minimal_two_points

use posegravity::{
    estimate_pose, rotation_about_y, rotation_angle_error_deg, GravityPrior, PointCorrespondence,
    Pose, SolutionCase, SolverOptions, Vec3,
};

fn project(pose: &Pose, world: Vec3) -> PointCorrespondence {
    let cam = pose.transform(world);
    PointCorrespondence::new(cam * (1.0 / cam.z), world)
}

fn main() {
    let angle = -40.0_f64.to_radians();
    let ground_truth = Pose::new(
        rotation_about_y(angle.cos(), angle.sin()),
        Vec3::new(-0.3, 0.1, 0.5),
    );
    let gravity = GravityPrior::new(ground_truth.rotation.matrix().col(1));
    let opts = SolverOptions::default();

    // Exact minimal problem.
    let points = vec![
        project(&ground_truth, Vec3::new(1.2, 0.4, 7.0)),
        project(&ground_truth, Vec3::new(-0.8, 1.1, 4.0)),
    ];
    let set = estimate_pose(&points, &[], &gravity, &opts).unwrap();
    println!(
        "exact data → case {:?}, {} solution(s)",
        set.case,
        set.solutions.len()
    );
    for s in &set.solutions {
        println!(
            "  loss {:.3e}, rotation error {:.3e}°",
            s.loss,
            rotation_angle_error_deg(&ground_truth.rotation, &s.pose.rotation)
        );
    }
    assert_eq!(set.case, SolutionCase::Minimal);

    // Corrupt one bearing badly; here the loss line misses the circle and
    // the nearest circle point is still the best feasible answer.
    let mut noisy = points.clone();
    noisy[1].image = noisy[1].image + Vec3::new(-0.5, -0.3, 0.0);
    let set = estimate_pose(&noisy, &[], &gravity, &opts).unwrap();
    println!(
        "corrupted data → case {:?}, {} solution(s), loss {:.3e}",
        set.case,
        set.solutions.len(),
        set.solutions[0].loss
    );
    if set.case == SolutionCase::MinimalRecovered {
        println!("  the loss line missed the circle; returned the closest feasible rotation");
    }
    for s in &set.solutions {
        println!(
            "  rotation error {:.2}° (noisy by construction)",
            rotation_angle_error_deg(&ground_truth.rotation, &s.pose.rotation)
        );
    }
}
