//! Planar configuration: field boundary lines on the ground plane.
//!
//! When every 3D feature lies on a plane orthogonal to the gravity axis
//! (markings on a court or street), the loss conic loses its last row and
//! column and the solver switches to a closed-form 2x2 eigenvector path that
//! always returns an antipodal pair of solutions.
//!
//! Run with: cargo run --example planar_ground_lines

use posegravity::{
    estimate_pose, rotation_about_y, rotation_angle_error_deg, translation_error, GravityPrior,
    LineCorrespondence, Pose, SolutionCase, SolverOptions, Vec3,
};

fn main() {
    // A camera looking at a 15 x 28 rectangle on the ground (y = 0),
    // rotated 110° about the vertical and raised above the plane.
    let angle = 110.0_f64.to_radians();
    let ground_truth = Pose::new(
        rotation_about_y(angle.cos(), angle.sin()),
        Vec3::new(1.5, 6.0, 20.0),
    );
    let gravity = GravityPrior::new(ground_truth.rotation.matrix().col(1));

    // Rectangle boundary segments, each as (point on line, second point).
    let corners = [
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(15.0, 0.0, 0.0),
        Vec3::new(15.0, 0.0, 28.0),
        Vec3::new(0.0, 0.0, 28.0),
    ];
    let lines: Vec<LineCorrespondence> = (0..4)
        .map(|i| {
            let a = corners[i];
            let b = corners[(i + 1) % 4];
            // 2D line: normal of the plane spanned by the two projected
            // endpoints (the image of the 3D line).
            let pa = ground_truth.transform(a);
            let pb = ground_truth.transform(b);
            LineCorrespondence::new(pa.cross(pb), a, b - a)
        })
        .collect();

    let set = estimate_pose(&[], &lines, &gravity, &SolverOptions::default())
        .expect("four boundary lines are solvable");
    assert_eq!(set.case, SolutionCase::Planar);
    println!(
        "case: {:?} ({} solutions, always an antipodal pair)",
        set.case,
        set.solutions.len()
    );

    for (i, s) in set.solutions.iter().enumerate() {
        println!(
            "solution {i}: r = ({:+.4}, {:+.4}), rotation error {:.3e}°, translation error {:.3e}",
            s.r.x,
            s.r.y,
            rotation_angle_error_deg(&ground_truth.rotation, &s.pose.rotation),
            translation_error(ground_truth.translation, s.pose.translation),
        );
    }

    // Downstream logic disambiguates the pair (e.g. cheirality of a known
    // point, or a coarse compass heading). Here the ground truth tells us.
    let best = set
        .solutions
        .iter()
        .min_by(|a, b| {
            rotation_angle_error_deg(&ground_truth.rotation, &a.pose.rotation)
                .partial_cmp(&rotation_angle_error_deg(
                    &ground_truth.rotation,
                    &b.pose.rotation,
                ))
                .unwrap()
        })
        .unwrap();
    println!(
        "best solution recovers the camera at T = {:?}",
        best.pose.translation.as_array()
    );
}
