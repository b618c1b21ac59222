//! Brute-force verification oracle.
//!
//! Dense angle search with golden-section refinement over the single
//! remaining rotation degree of freedom, plus a direct evaluation of the full
//! squared-residual sum without the translation elimination. Used to
//! cross-check the closed-form paths; speed is a non-goal.

use crate::conic::{CirclePoint, Conic};
use crate::error::SolveError;
use crate::features::{LineCorrespondence, PointCorrespondence};
use crate::geometry::{
    compose_pose, gravity_alignment_rotation, transform_to_gravity_frame, GravityPrior, Pose,
};
use crate::math::Vec3;
use crate::objective::{build_objective, point_weight_matrix, SolverOptions};

/// Grid density: a degree-2 trigonometric polynomial in θ has at most four
/// extrema, so a few thousand samples isolate every basin.
pub const DEFAULT_SAMPLES: usize = 4096;
/// Golden-section iterations; shrinks the bracket to ~1e-12 of its width.
pub const DEFAULT_REFINE_ITERS: usize = 60;

/// Result of a brute-force search over the circle.
#[derive(Debug, Clone, Copy)]
pub struct OracleResult {
    pub theta: f64,
    pub r: CirclePoint,
    pub loss: f64,
    /// Recovered pose; present only when the search ran on a full problem
    /// rather than a bare loss conic.
    pub pose: Option<Pose>,
}

/// Loss conic evaluated at `r = (cos θ, sin θ, 1)`.
pub fn loss_at(omega: &Conic, theta: f64) -> f64 {
    omega.quadform(theta.cos(), theta.sin())
}

/// Dense uniform sweep of the circle followed by golden-section refinement
/// around the best sample.
pub fn grid_search(omega: &Conic, samples: usize, refine_iters: usize) -> OracleResult {
    assert!(samples >= 256, "grid too coarse to isolate minima");
    let two_pi = 2.0 * std::f64::consts::PI;
    let step = two_pi / samples as f64;

    let mut best_k = 0;
    let mut best_loss = f64::INFINITY;
    for k in 0..samples {
        let loss = loss_at(omega, k as f64 * step);
        if loss < best_loss {
            best_loss = loss;
            best_k = k;
        }
    }

    // Golden-section on the bracket one grid step either side of the best.
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let center = best_k as f64 * step;
    let mut lo = center - step;
    let mut hi = center + step;
    let mut m1 = hi - inv_phi * (hi - lo);
    let mut m2 = lo + inv_phi * (hi - lo);
    let mut f1 = loss_at(omega, m1);
    let mut f2 = loss_at(omega, m2);
    for _ in 0..refine_iters {
        if f1 <= f2 {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - inv_phi * (hi - lo);
            f1 = loss_at(omega, m1);
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + inv_phi * (hi - lo);
            f2 = loss_at(omega, m2);
        }
    }
    let theta = 0.5 * (lo + hi);
    let theta = theta.rem_euclid(two_pi);
    let loss = loss_at(omega, theta);
    // The refined loss can only improve on the grid sample; keep whichever
    // is smaller in case the bracket straddled a basin edge.
    let (theta, loss) = if loss <= best_loss {
        (theta, loss)
    } else {
        (best_k as f64 * step, best_loss)
    };
    OracleResult {
        theta,
        r: CirclePoint::from_angle(theta),
        loss,
        pose: None,
    }
}

/// Full brute-force solve of a problem instance: build the objective, sweep
/// the circle, and recover the pose of the best angle.
pub fn solve_by_grid(
    points: &[PointCorrespondence],
    lines: &[LineCorrespondence],
    gravity: &GravityPrior,
    options: &SolverOptions,
    samples: usize,
    refine_iters: usize,
) -> Result<OracleResult, SolveError> {
    let r_g = gravity_alignment_rotation(gravity);
    let (points_g, lines_g) = transform_to_gravity_frame(points, lines, &r_g);
    let objective = build_objective(&points_g, &lines_g, options)?;
    let mut result = grid_search(&objective.omega, samples, refine_iters);
    let t_tilde = objective.s_matrix * Vec3::new(result.r.x, result.r.y, 1.0);
    result.pose = Some(compose_pose((result.r.x, result.r.y), t_tilde, &r_g));
    Ok(result)
}

/// Direct squared-residual sum of a pose against correspondences, with no
/// translation elimination: point cross-product residuals, point-on-line
/// residuals, and `delta`-scaled line-direction residuals.
///
/// Evaluated in whatever frame the caller supplies; with gravity-frame
/// features and a pose `(R̃(x, y), S r)` it equals `rᵀ Ω r`.
pub fn full_pose_residual(
    pose: &Pose,
    points: &[PointCorrespondence],
    lines: &[LineCorrespondence],
    delta: f64,
) -> f64 {
    let mut total = 0.0;
    for p in points {
        let w = pose.transform(p.world);
        // ‖[p]ₓ w‖² through the PSD weight to match the objective exactly.
        total += w.dot(point_weight_matrix(p.image) * w);
    }
    for l in lines {
        let w = pose.transform(l.world_point);
        let on_line = l.normal.dot(w);
        total += on_line * on_line;
        let dir = l.normal.dot(pose.rotation.apply(l.world_direction));
        total += delta * delta * dir * dir;
    }
    total
}
