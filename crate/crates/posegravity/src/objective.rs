//! Assembly of the translation-eliminated loss conic.
//!
//! Expects features already rotated into the gravity-aligned frame. The
//! squared projective residuals of all correspondences reduce, after solving
//! the translation in closed form, to a quadratic form `rᵀ Ω r` over
//! `r = (x, y, 1)` with `(x, y)` the cosine/sine of the remaining rotation
//! angle.

use crate::conic::Conic;
use crate::error::SolveError;
use crate::features::{LineCorrespondence, PointCorrespondence};
use crate::math::{Mat3, Vec3};

/// Reject the translation solve below this reciprocal condition number.
const WEIGHT_RCOND_MIN: f64 = 1e-12;
/// Numeric-rank fallback for minimal classification: `σ₂/σ₁` below this
/// counts as rank 1.
const RANK1_RATIO_TOL: f64 = 1e-9;

/// Solver tuning knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Scale applied to the line-direction residual (squared in the loss).
    /// Balances the direction term against point-on-line terms; calibrated
    /// for unit-normalized 3D line directions.
    pub delta: f64,
    /// Planar test: last row/column of `Ω` negligible relative to `max|Ω|`.
    pub planar_tolerance: f64,
    /// Classify by input cardinality (`n + m = 2`, `n ≥ 1`) rather than
    /// relying on the numeric rank of `Ω`, which noise obscures.
    pub minimal_by_cardinality: bool,
    /// Stationary points whose losses differ by less than this times
    /// `max|Ω|` count as tied global minima and are all returned.
    pub tie_tolerance: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            delta: 100.0,
            planar_tolerance: 1e-10,
            minimal_by_cardinality: true,
            tie_tolerance: 1e-9,
        }
    }
}

/// Structural class of a problem instance, deciding the solution path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemClass {
    /// All 3D features on a plane orthogonal to the prior axis; `Ω` reduces
    /// to its upper-left 2x2 block.
    Planar,
    /// Exactly the four constraints needed; `Ω` has rank at most 1.
    Minimal,
    General,
}

/// The reduced minimization problem: loss conic, translation-recovery matrix
/// (`T = S r`), and classification.
#[derive(Debug, Clone, Copy)]
pub struct Objective {
    pub omega: Conic,
    pub s_matrix: Mat3,
    pub class: ProblemClass,
}

/// Linear action of the one-parameter y-rotation on `u`: the matrix `U`
/// with `U (x, y, 1)ᵀ = R̃(x, y) u`.
pub fn rotation_action_matrix(u: Vec3) -> Mat3 {
    Mat3::new([[u.x, u.z, 0.0], [0.0, 0.0, u.y], [u.z, -u.x, 0.0]])
}

/// Point residual weight `[p]ₓᵀ[p]ₓ = ‖p‖² I - p pᵀ`: symmetric PSD with
/// kernel spanned by `p`.
pub fn point_weight_matrix(p: Vec3) -> Mat3 {
    let n2 = p.norm_squared();
    Mat3::diagonal(n2, n2, n2) - Mat3::outer(p, p)
}

/// Line residual weight `n nᵀ`: symmetric PSD of rank 1.
pub fn line_weight_matrix(n: Vec3) -> Mat3 {
    Mat3::outer(n, n)
}

/// Matrix `S` giving the residual-minimizing translation `T = S r` for a
/// fixed rotation parameter `r`.
///
/// The summed weight matrix is invertible for at least two independent
/// points, three independent lines, or an independent point and line;
/// anything weaker (a single point, two lines, duplicates) is rejected as
/// degenerate by a reciprocal-condition-number check.
pub fn translation_solver_matrix(
    points: &[PointCorrespondence],
    lines: &[LineCorrespondence],
) -> Result<Mat3, SolveError> {
    let mut weight_sum = Mat3::ZERO;
    let mut moment_sum = Mat3::ZERO;
    for p in points {
        let q = point_weight_matrix(p.image);
        weight_sum += q;
        moment_sum += q * rotation_action_matrix(p.world);
    }
    for l in lines {
        let q = line_weight_matrix(l.normal);
        weight_sum += q;
        moment_sum += q * rotation_action_matrix(l.world_point);
    }
    if !weight_sum.is_finite() || weight_sum.symmetric_rcond() < WEIGHT_RCOND_MIN {
        return Err(SolveError::DegenerateConfiguration);
    }
    let inv = weight_sum
        .try_inverse()
        .ok_or(SolveError::DegenerateConfiguration)?;
    Ok(-(inv * moment_sum))
}

/// Build the loss conic and translation matrix from gravity-frame features.
///
/// For any unit `(x, y)`, `rᵀ Ω r` equals the full squared-residual sum
/// evaluated at the optimal translation `T = S r`.
pub fn build_objective(
    points: &[PointCorrespondence],
    lines: &[LineCorrespondence],
    options: &SolverOptions,
) -> Result<Objective, SolveError> {
    debug_assert!(
        options.delta > 0.0 && options.planar_tolerance > 0.0 && options.tie_tolerance > 0.0,
        "solver options must be positive"
    );
    let s = translation_solver_matrix(points, lines)?;
    let delta_sq = options.delta * options.delta;

    let mut acc = Mat3::ZERO;
    for p in points {
        let b = rotation_action_matrix(p.world) + s;
        acc += b.transpose() * point_weight_matrix(p.image) * b;
    }
    for l in lines {
        let q = line_weight_matrix(l.normal);
        let b = rotation_action_matrix(l.world_point) + s;
        acc += b.transpose() * q * b;
        let v = rotation_action_matrix(l.world_direction);
        acc += (v.transpose() * q * v) * delta_sq;
    }

    let omega = Conic::from_symmetrized(&acc);
    debug_assert!(
        {
            let eigs = omega.to_matrix().symmetric_eigenvalues();
            eigs[0] > -1e-8 * eigs[2].abs()
        },
        "loss conic must be positive semidefinite"
    );
    let class = classify_configuration(&omega, points.len(), lines.len(), options);
    Ok(Objective {
        omega,
        s_matrix: s,
        class,
    })
}

/// Decide the solution path for a built loss conic.
///
/// Planar when the last row/column of `Ω` vanish relative to `max|Ω|`;
/// otherwise minimal when the inputs are a minimal set (or `Ω` is
/// numerically rank 1); otherwise general.
pub fn classify_configuration(
    omega: &Conic,
    n_points: usize,
    m_lines: usize,
    options: &SolverOptions,
) -> ProblemClass {
    let scale = omega.max_abs();
    let last = omega.c02.abs().max(omega.c12.abs()).max(omega.c22.abs());
    if last < options.planar_tolerance * scale {
        return ProblemClass::Planar;
    }
    let minimal_count = options.minimal_by_cardinality && n_points + m_lines == 2 && n_points >= 1;
    if minimal_count || omega.singular_value_ratio() < RANK1_RATIO_TOL {
        return ProblemClass::Minimal;
    }
    ProblemClass::General
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rotation_about_y;

    #[test]
    fn rotation_action_of_y_axis() {
        let u = Vec3::new(0.0, 1.0, 0.0);
        let m = rotation_action_matrix(u);
        assert_eq!(
            m,
            Mat3::new([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
        );
    }

    #[test]
    fn rotation_action_of_x_axis_sweeps_cosine_sine() {
        let m = rotation_action_matrix(Vec3::new(1.0, 0.0, 0.0));
        for k in 0..8 {
            let th = k as f64 * 0.7;
            let r = m * Vec3::new(th.cos(), th.sin(), 1.0);
            assert!((r - Vec3::new(th.cos(), 0.0, -th.sin())).norm() < 1e-15);
        }
    }

    #[test]
    fn rotation_action_matches_rotation_for_random_directions() {
        let us = [
            Vec3::new(0.4, -1.2, 2.2),
            Vec3::new(-3.0, 0.5, 0.1),
            Vec3::new(0.0, 0.0, 1.0),
        ];
        for u in us {
            let m = rotation_action_matrix(u);
            for k in 0..100 {
                let th = k as f64 * 0.0628;
                let via_action = m * Vec3::new(th.cos(), th.sin(), 1.0);
                let via_rotation = rotation_about_y(th.cos(), th.sin()).apply(u);
                assert!((via_action - via_rotation).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn point_weight_examples() {
        assert_eq!(
            point_weight_matrix(Vec3::new(0.0, 0.0, 1.0)),
            Mat3::diagonal(1.0, 1.0, 0.0)
        );

        // [p]ₓᵀ[p]ₓ expanded by hand for p = (1,1,1).
        assert_eq!(
            point_weight_matrix(Vec3::new(1.0, 1.0, 1.0)),
            Mat3::new([[2.0, -1.0, -1.0], [-1.0, 2.0, -1.0], [-1.0, -1.0, 2.0]])
        );

        for p in [Vec3::new(0.3, -0.8, 1.0), Vec3::new(-2.0, 0.4, 0.9)] {
            assert!((point_weight_matrix(p) * p).norm() < 1e-12 * p.norm_squared());
        }
    }

    #[test]
    fn line_weight_examples() {
        assert_eq!(
            line_weight_matrix(Vec3::new(1.0, 0.0, 0.0)),
            Mat3::diagonal(1.0, 0.0, 0.0)
        );
        let n = Vec3::new(1.0, 2.0, 3.0);
        assert_eq!(line_weight_matrix(n), Mat3::outer(n, n));
        // Annihilates the orthogonal complement.
        let w = Vec3::new(2.0, -1.0, 0.0);
        assert!((line_weight_matrix(n) * w).norm() < 1e-12);
    }

    #[test]
    fn translation_matrix_recovers_zero_translation() {
        // Identity-pose scene: bearings are exact projections, ground-truth
        // translation is zero, so S·(1, 0, 1) must vanish.
        let points = vec![
            PointCorrespondence::new(Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, 5.0)),
            PointCorrespondence::new(Vec3::new(0.2, 0.0, 1.0), Vec3::new(1.0, 0.0, 5.0)),
        ];
        let s = translation_solver_matrix(&points, &[]).unwrap();
        let t = s * Vec3::new(1.0, 0.0, 1.0);
        assert!(t.norm() < 1e-9, "expected zero translation, got {t:?}");
    }

    #[test]
    fn translation_matrix_rejects_duplicate_points() {
        let p = PointCorrespondence::new(Vec3::new(0.1, 0.2, 1.0), Vec3::new(1.0, 2.0, 3.0));
        assert_eq!(
            translation_solver_matrix(&[p, p], &[]),
            Err(SolveError::DegenerateConfiguration)
        );
    }

    #[test]
    fn translation_matrix_rejects_two_lines_alone() {
        let lines = vec![
            LineCorrespondence::new(
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(0.0, 0.0, 4.0),
                Vec3::new(0.0, 1.0, 0.0),
            ),
            LineCorrespondence::new(
                Vec3::new(0.0, 1.0, 0.0),
                Vec3::new(0.0, 0.0, 4.0),
                Vec3::new(1.0, 0.0, 0.0),
            ),
        ];
        assert_eq!(
            translation_solver_matrix(&[], &lines),
            Err(SolveError::DegenerateConfiguration)
        );
    }

    #[test]
    fn translation_matrix_satisfies_normal_equations() {
        let points = vec![
            PointCorrespondence::new(Vec3::new(0.3, -0.2, 1.0), Vec3::new(2.0, 1.0, 7.0)),
            PointCorrespondence::new(Vec3::new(-0.5, 0.1, 1.0), Vec3::new(-1.0, 3.0, 4.0)),
            PointCorrespondence::new(Vec3::new(0.0, 0.6, 1.0), Vec3::new(0.5, -2.0, 9.0)),
        ];
        let lines = vec![LineCorrespondence::new(
            Vec3::new(0.2, 0.9, -0.1),
            Vec3::new(1.0, 1.0, 6.0),
            Vec3::new(0.3, 0.4, 0.5),
        )];
        let s = translation_solver_matrix(&points, &lines).unwrap();

        let mut weight_sum = Mat3::ZERO;
        let mut moment_sum = Mat3::ZERO;
        let mut scale = 0.0_f64;
        for p in &points {
            let q = point_weight_matrix(p.image);
            weight_sum += q;
            let qa = q * rotation_action_matrix(p.world);
            scale = scale.max(qa.max_abs());
            moment_sum += qa;
        }
        for l in &lines {
            let q = line_weight_matrix(l.normal);
            weight_sum += q;
            let qa = q * rotation_action_matrix(l.world_point);
            scale = scale.max(qa.max_abs());
            moment_sum += qa;
        }

        for k in 0..16 {
            let th = k as f64 * 0.4;
            let r = Vec3::new(th.cos(), th.sin(), 1.0);
            let residual = weight_sum * (s * r) + moment_sum * r;
            assert!(residual.norm() < 1e-9 * scale);
        }
    }

    /// Exact scene at a chosen rotation angle: bearings are projections of
    /// the world points under `R̃(θ)` with zero translation.
    fn exact_scene(theta: f64, worlds: &[Vec3]) -> Vec<PointCorrespondence> {
        let rot = rotation_about_y(theta.cos(), theta.sin());
        worlds
            .iter()
            .map(|&d| {
                let cam = rot.apply(d);
                PointCorrespondence::new(cam * (1.0 / cam.z), d)
            })
            .collect()
    }

    #[test]
    fn objective_vanishes_at_ground_truth_for_exact_data() {
        let theta = 0.85;
        let points = exact_scene(
            theta,
            &[
                Vec3::new(1.0, 0.5, 6.0),
                Vec3::new(-2.0, 1.0, 8.0),
                Vec3::new(0.3, -1.5, 5.0),
            ],
        );
        let obj = build_objective(&points, &[], &SolverOptions::default()).unwrap();
        let loss = obj.omega.quadform(theta.cos(), theta.sin());
        assert!(loss.abs() < 1e-12 * obj.omega.max_abs());
        assert_eq!(obj.class, ProblemClass::General);
    }

    #[test]
    fn objective_is_positive_semidefinite() {
        let points = exact_scene(
            -0.4,
            &[
                Vec3::new(0.7, 0.2, 3.0),
                Vec3::new(-1.0, 0.9, 5.0),
                Vec3::new(2.0, -0.3, 9.0),
                Vec3::new(0.1, 1.4, 4.0),
            ],
        );
        let obj = build_objective(&points, &[], &SolverOptions::default()).unwrap();
        let eigs = obj.omega.to_matrix().symmetric_eigenvalues();
        assert!(eigs[0] > -1e-8 * eigs[2].abs());
    }

    #[test]
    fn minimal_scene_gives_rank_one_conic() {
        let points = exact_scene(0.3, &[Vec3::new(1.0, 0.5, 6.0), Vec3::new(-2.0, 1.0, 8.0)]);
        let obj = build_objective(&points, &[], &SolverOptions::default()).unwrap();
        assert!(obj.omega.singular_value_ratio() < 1e-9);
        assert_eq!(obj.class, ProblemClass::Minimal);
    }

    #[test]
    fn planar_scene_zeroes_last_row_and_column() {
        // World features on y = 0.
        let points = exact_scene(
            1.2,
            &[
                Vec3::new(1.0, 0.0, 6.0),
                Vec3::new(-2.0, 0.0, 8.0),
                Vec3::new(0.3, 0.0, 5.0),
            ],
        );
        let obj = build_objective(&points, &[], &SolverOptions::default()).unwrap();
        let scale = obj.omega.max_abs();
        assert!(obj.omega.c02.abs() < 1e-10 * scale);
        assert!(obj.omega.c12.abs() < 1e-10 * scale);
        assert!(obj.omega.c22.abs() < 1e-10 * scale);
        assert_eq!(obj.class, ProblemClass::Planar);
    }

    #[test]
    fn classify_examples() {
        let opts = SolverOptions::default();
        let planar = Conic::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0);
        assert_eq!(
            classify_configuration(&planar, 3, 0, &opts),
            ProblemClass::Planar
        );

        let rank1 = Conic::from_outer(Vec3::new(1.0, 2.0, 3.0));
        assert_eq!(
            classify_configuration(&rank1, 2, 0, &opts),
            ProblemClass::Minimal
        );
        // The numeric-rank signal also fires at non-minimal cardinality.
        assert_eq!(
            classify_configuration(&rank1, 5, 0, &opts),
            ProblemClass::Minimal
        );
        let numeric = SolverOptions {
            minimal_by_cardinality: false,
            ..opts
        };
        assert_eq!(
            classify_configuration(&rank1, 2, 0, &numeric),
            ProblemClass::Minimal
        );

        let general = Conic::new(4.0, 0.3, 0.2, 2.0, -0.1, 1.0);
        assert_eq!(
            classify_configuration(&general, 20, 0, &opts),
            ProblemClass::General
        );
    }
}
