//! Top-level pose estimation: dispatch between the planar, minimal, and
//! general solution paths, select the global minimizers (keeping ties), and
//! recover poses.

use crate::conic::{
    closest_circle_point, decompose_conic, derivative_conic, intersect_unit_circle,
    pencil_coefficients, pencil_member, solve_depressed_cubic, CirclePoint, Conic, DecomposedConic,
    Line2H,
};
use crate::error::SolveError;
use crate::features::{LineCorrespondence, PointCorrespondence};
use crate::geometry::{
    compose_pose, gravity_alignment_rotation, transform_to_gravity_frame, GravityPrior, Pose,
    Rotation3,
};
use crate::math::Vec3;
use crate::objective::{build_objective, Objective, ProblemClass, SolverOptions};

/// A loss line whose x-y part is this small relative to the full line has no
/// direction information left in the plane.
const LINE_IN_PLANE_TOL: f64 = 1e-12;
/// Derivative conic treated as zero (rotationally symmetric loss) below this
/// times `max|Ω|`.
const SYMMETRIC_LOSS_TOL: f64 = 1e-14;
/// Distinct stationary points closer than this collapse to one.
const POINT_DEDUP_TOL: f64 = 1e-9;
/// Grid density of the safety-net fallback search.
const FALLBACK_GRID_SAMPLES: usize = 1024;

/// Which solution path produced a [`SolutionSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionCase {
    General,
    Minimal,
    /// Minimal path whose loss line missed the circle; the returned pose is
    /// the nearest feasible minimizer rather than an exact zero.
    MinimalRecovered,
    Planar,
}

/// One recovered pose with its rotation parameter and loss value.
#[derive(Debug, Clone, Copy)]
pub struct Solution {
    pub pose: Pose,
    pub r: CirclePoint,
    pub loss: f64,
}

/// One or two global minimizers, ordered by ascending loss then ascending
/// angle.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub solutions: Vec<Solution>,
    pub case: SolutionCase,
    /// True when the closed-form path produced no usable stationary point and
    /// the dense-grid safety net answered instead. Expected to stay false;
    /// benchmarks count activations.
    pub used_grid_fallback: bool,
}

/// Closed-form planar solution: the antipodal pair `(r₀, -r₀)` where `r₀` is
/// the unit eigenvector of the smallest eigenvalue of the upper-left 2x2
/// block of `Ω`.
pub fn solve_planar(omega: &Conic) -> (CirclePoint, CirclePoint) {
    let d = omega.c00 - omega.c11;
    let kx = -2.0 * omega.c01;
    let ky = d + (d * d + 4.0 * omega.c01 * omega.c01).sqrt();
    let norm = (kx * kx + ky * ky).sqrt();
    let scale = omega.c00.abs().max(omega.c11.abs()).max(omega.c01.abs());
    let r0 = if norm <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
        // Ω₀₁ = 0 with Ω₀₀ ≤ Ω₁₁ collapses k to zero; the eigenvector is an
        // axis direction.
        if omega.c00 <= omega.c11 {
            CirclePoint { x: 1.0, y: 0.0 }
        } else {
            CirclePoint { x: 0.0, y: 1.0 }
        }
    } else {
        CirclePoint {
            x: kx / norm,
            y: ky / norm,
        }
    };
    (r0, CirclePoint { x: -r0.x, y: -r0.y })
}

/// Minimal-configuration solution for a rank-1 loss conic `Ω ∝ l lᵀ`.
///
/// Returns the circle intersections of `l` (exact zero-loss solutions), or,
/// when the line misses the circle, the closest circle point with
/// `recovered = true`.
pub fn solve_minimal(omega: &Conic) -> Result<(Vec<CirclePoint>, bool), SolveError> {
    // Rank-1 decomposition: the largest-norm row of Ω is proportional to l.
    let m = omega.to_matrix();
    let row = (0..3)
        .map(|i| m.row(i))
        .max_by(|p, q| p.norm_squared().partial_cmp(&q.norm_squared()).unwrap())
        .unwrap();
    let line = Line2H::from_vec(row);
    let plane_part = (line.a * line.a + line.b * line.b).sqrt();
    if plane_part <= LINE_IN_PLANE_TOL * row.norm() || row.norm() == 0.0 {
        return Err(SolveError::NoSolution);
    }
    let pts = intersect_unit_circle(&line).map_err(|_| SolveError::NoSolution)?;
    if pts.is_empty() {
        let recovered = closest_circle_point(&line).map_err(|_| SolveError::NoSolution)?;
        Ok((vec![recovered], true))
    } else {
        Ok((pts, false))
    }
}

/// General-path solution: stationary points from the degenerate member of the
/// pencil of the derivative conic and the unit circle, filtered to the global
/// minimizers (ties kept).
///
/// The boolean is true when the conic machinery produced no usable point and
/// the answer came from the dense-grid safety net.
pub fn solve_general(omega: &Conic, options: &SolverOptions) -> (Vec<CirclePoint>, bool) {
    let lambda = derivative_conic(omega);
    if lambda.max_abs() <= SYMMETRIC_LOSS_TOL * omega.max_abs() {
        // Rotationally symmetric loss: every circle point is stationary.
        return (vec![grid_minimum(omega)], true);
    }

    let (a, b) = pencil_coefficients(&lambda);
    let gamma = solve_depressed_cubic(a, b);
    let sigma = pencil_member(&lambda, gamma);

    let mut candidates: Vec<CirclePoint> = Vec::with_capacity(4);
    match decompose_conic(&sigma) {
        Ok(DecomposedConic::OneLine(l)) => {
            if let Ok(pts) = intersect_unit_circle(&l) {
                candidates.extend(pts);
            }
        }
        Ok(DecomposedConic::TwoLines(l1, l2)) => {
            for l in [l1, l2] {
                if let Ok(pts) = intersect_unit_circle(&l) {
                    candidates.extend(pts);
                }
            }
        }
        Err(_) => {}
    }

    dedup_points(&mut candidates);
    if candidates.is_empty() {
        return (vec![grid_minimum(omega)], true);
    }

    let losses: Vec<f64> = candidates
        .iter()
        .map(|p| omega.quadform(p.x, p.y))
        .collect();
    let best = losses.iter().copied().fold(f64::INFINITY, f64::min);
    let tie = options.tie_tolerance * omega.max_abs();
    let mut kept: Vec<(CirclePoint, f64)> = candidates
        .into_iter()
        .zip(losses)
        .filter(|(_, l)| *l <= best + tie)
        .collect();
    kept.sort_by(|(pa, la), (pb, lb)| {
        la.partial_cmp(lb)
            .unwrap()
            .then(pa.angle().partial_cmp(&pb.angle()).unwrap())
    });
    kept.truncate(2);
    (kept.into_iter().map(|(p, _)| p).collect(), false)
}

fn dedup_points(points: &mut Vec<CirclePoint>) {
    let mut unique: Vec<CirclePoint> = Vec::with_capacity(points.len());
    for p in points.iter() {
        let dup = unique
            .iter()
            .any(|q| (p.x - q.x).abs() < POINT_DEDUP_TOL && (p.y - q.y).abs() < POINT_DEDUP_TOL);
        if !dup {
            unique.push(*p);
        }
    }
    *points = unique;
}

/// Safety-net minimizer: dense grid over the circle plus Newton refinement on
/// the angle.
fn grid_minimum(omega: &Conic) -> CirclePoint {
    let two_pi = 2.0 * std::f64::consts::PI;
    let step = two_pi / FALLBACK_GRID_SAMPLES as f64;
    let mut best_theta = 0.0;
    let mut best_loss = f64::INFINITY;
    for k in 0..FALLBACK_GRID_SAMPLES {
        let theta = k as f64 * step;
        let loss = omega.quadform(theta.cos(), theta.sin());
        if loss < best_loss {
            best_loss = loss;
            best_theta = theta;
        }
    }
    // f(θ) = E + A cos2θ + B sin2θ + C cosθ + D sinθ
    let a = 0.5 * (omega.c00 - omega.c11);
    let b = omega.c01;
    let c = 2.0 * omega.c02;
    let d = 2.0 * omega.c12;
    let mut theta = best_theta;
    for _ in 0..32 {
        let (s1, c1) = theta.sin_cos();
        let (s2, c2) = (2.0 * theta).sin_cos();
        let fp = -2.0 * a * s2 + 2.0 * b * c2 - c * s1 + d * c1;
        let fpp = -4.0 * a * c2 - 4.0 * b * s2 - c * c1 - d * s1;
        if fpp.abs() <= f64::MIN_POSITIVE || !fp.is_finite() {
            break;
        }
        let delta = fp / fpp;
        theta -= delta;
        if delta.abs() < 1e-14 {
            break;
        }
    }
    // Keep the Newton result only if it did not wander to a worse value.
    if omega.quadform(theta.cos(), theta.sin()) <= best_loss {
        CirclePoint::from_angle(theta)
    } else {
        CirclePoint::from_angle(best_theta)
    }
}

/// Estimate camera poses from correspondences and a gravity measurement.
///
/// Transforms features into the gravity-aligned frame, builds the loss conic,
/// dispatches on the configuration class, and maps each minimizer through the
/// translation matrix back to a full pose.
pub fn estimate_pose(
    points: &[PointCorrespondence],
    lines: &[LineCorrespondence],
    gravity: &GravityPrior,
    options: &SolverOptions,
) -> Result<SolutionSet, SolveError> {
    let r_g = gravity_alignment_rotation(gravity);
    estimate_pose_with_alignment(points, lines, &r_g, options)
}

/// [`estimate_pose`] with a caller-supplied alignment rotation.
///
/// Any `r_g` mapping the measured gravity direction onto the y-axis is valid;
/// the estimate does not depend on which one is used.
pub fn estimate_pose_with_alignment(
    points: &[PointCorrespondence],
    lines: &[LineCorrespondence],
    r_g: &Rotation3,
    options: &SolverOptions,
) -> Result<SolutionSet, SolveError> {
    let (points_g, lines_g) = transform_to_gravity_frame(points, lines, r_g);
    let objective = build_objective(&points_g, &lines_g, options)?;
    solve_objective(&objective, r_g, options)
}

fn solve_objective(
    objective: &Objective,
    r_g: &Rotation3,
    options: &SolverOptions,
) -> Result<SolutionSet, SolveError> {
    let omega = &objective.omega;
    let (points, case, used_grid_fallback) = match objective.class {
        ProblemClass::Planar => {
            let (r0, r1) = solve_planar(omega);
            (vec![r0, r1], SolutionCase::Planar, false)
        }
        ProblemClass::Minimal => {
            let (pts, recovered) = solve_minimal(omega)?;
            let case = if recovered {
                SolutionCase::MinimalRecovered
            } else {
                SolutionCase::Minimal
            };
            (pts, case, false)
        }
        ProblemClass::General => {
            let (pts, fallback) = solve_general(omega, options);
            (pts, SolutionCase::General, fallback)
        }
    };

    let mut solutions: Vec<Solution> = points
        .into_iter()
        .map(|r| {
            let t_tilde = objective.s_matrix * Vec3::new(r.x, r.y, 1.0);
            Solution {
                pose: compose_pose((r.x, r.y), t_tilde, r_g),
                loss: omega.quadform(r.x, r.y),
                r,
            }
        })
        .collect();
    solutions.sort_by(|s1, s2| {
        s1.loss
            .partial_cmp(&s2.loss)
            .unwrap()
            .then(s1.r.angle().partial_cmp(&s2.r.angle()).unwrap())
    });
    solutions.truncate(2);
    debug_assert!(!solutions.is_empty());

    Ok(SolutionSet {
        solutions,
        case,
        used_grid_fallback,
    })
}
