//! Absolute camera pose from mixed point and line correspondences when one
//! axis of the camera's rotation is known — typically the vertical direction
//! from an IMU gravity measurement.
//!
//! The axis prior leaves a single rotation degree of freedom. After rotating
//! all observations into a gravity-aligned frame, the least-squares pose
//! objective reduces to a quadratic form (a conic) over the cosine/sine of
//! the remaining angle, constrained to the unit circle. The minimizers are
//! found by intersecting a degenerate member of a conic pencil with the
//! circle; minimal configurations (two points, or a point and a line) and
//! planar scenes (all 3D features on a plane orthogonal to the axis) get
//! shorter closed-form paths.
//!
//! The entry point is [`estimate_pose`]:
//!
//! ```
//! use posegravity::{estimate_pose, GravityPrior, PointCorrespondence, SolverOptions, Vec3};
//!
//! // Three points observed by a camera at the identity pose.
//! let points = vec![
//!     PointCorrespondence::new(Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, 2.0)),
//!     PointCorrespondence::new(Vec3::new(0.25, 0.1, 1.0), Vec3::new(1.0, 0.4, 4.0)),
//!     PointCorrespondence::new(Vec3::new(-0.3, 0.2, 1.0), Vec3::new(-2.1, 1.4, 7.0)),
//! ];
//! let gravity = GravityPrior::new(Vec3::new(0.0, 1.0, 0.0));
//! let set = estimate_pose(&points, &[], &gravity, &SolverOptions::default()).unwrap();
//! assert!(set.solutions[0].loss < 1e-9);
//! ```
//!
//! [`oracle`] holds an intentionally slow brute-force verifier used by the
//! test suites to cross-check the closed-form paths.

pub mod conic;
pub mod features;
pub mod geometry;
pub mod math;
pub mod objective;
pub mod oracle;
pub mod solver;

mod error;

pub use conic::{CirclePoint, Conic, Line2H};
pub use error::{ConicError, SolveError};
pub use features::{LineCorrespondence, PointCorrespondence};
pub use geometry::{
    compose_pose, gravity_alignment_rotation, rotation_about_y, rotation_angle_error_deg,
    transform_to_gravity_frame, translation_error, GravityPrior, Pose, Rotation3,
};
pub use math::{Mat3, Vec3};
pub use objective::{build_objective, Objective, ProblemClass, SolverOptions};
pub use solver::{
    estimate_pose, estimate_pose_with_alignment, Solution, SolutionCase, SolutionSet,
};
