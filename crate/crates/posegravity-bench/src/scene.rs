//! Synthetic scene generation and noise models.
//!
//! Ground-truth poses are drawn uniformly (rotation from a unit quaternion on
//! S³, translation on S²) and the gravity measurement is the second column of
//! the rotation matrix. Features come in three flavors: image-plane
//! detections (x, y uniform in [-1,1], z = 1), spherical detections (bearings
//! uniform on S²) and planar scenes (spherical rays intersected with the
//! world ground plane y = 0, translation rescaled for random scale). Lines
//! are built from pairs of such points.

use posegravity::{
    GravityPrior, LineCorrespondence, Mat3, PointCorrespondence, Pose, Rotation3, Vec3,
};
use thiserror::Error;

use crate::rng::SplitMix64;

/// Rejection sampling gives up after this many attempts for one feature.
const MAX_REJECTION_ATTEMPTS: usize = 1000;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("scene generation failed after {0} rejection attempts")]
    Generation(usize),
    #[error("invalid scene config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Solve(#[from] posegravity::SolveError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Feature configuration flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Configuration {
    ImagePlane,
    Spherical,
    Planar,
}

impl Configuration {
    pub fn name(&self) -> &'static str {
        match self {
            Configuration::ImagePlane => "ImagePlane",
            Configuration::Spherical => "Spherical",
            Configuration::Planar => "Planar",
        }
    }
}

/// Parameters of one experiment.
#[derive(Debug, Clone)]
pub struct SceneConfig {
    pub configuration: Configuration,
    pub n_points: usize,
    pub m_lines: usize,
    /// Depth range for back-projected points (world units).
    pub depth_range: (f64, f64),
    /// Translation rescale range for planar scenes.
    pub planar_scale_range: (f64, f64),
    /// Per-component Gaussian σ added to 2D detections.
    pub epsilon_noise: f64,
    /// σ (degrees) of the rotation angle applied to the gravity measurement.
    pub gravity_noise_deg: f64,
    pub trials: u64,
    pub seed: u64,
    /// Perturb the line normal components directly instead of re-deriving the
    /// normal from perturbed endpoint bearings.
    pub line_noise_on_normal: bool,
    /// Re-normalize spherical bearings after adding component noise.
    pub renormalize_bearings: bool,
}

impl SceneConfig {
    pub fn new(configuration: Configuration, n_points: usize, m_lines: usize) -> Self {
        SceneConfig {
            configuration,
            n_points,
            m_lines,
            depth_range: (0.01, 100.0),
            planar_scale_range: (0.01, 100.0),
            epsilon_noise: 0.0,
            gravity_noise_deg: 0.0,
            trials: 1,
            seed: 0,
            line_noise_on_normal: false,
            renormalize_bearings: false,
        }
    }

    /// Counts must give a solvable problem: two points, three lines, or a
    /// point and a line (and supersets).
    pub fn validate(&self) -> Result<(), BenchError> {
        let (n, m) = (self.n_points, self.m_lines);
        let solvable = n >= 2 || m >= 3 || (n >= 1 && m >= 1);
        if !solvable {
            return Err(BenchError::InvalidConfig(format!(
                "{n} points and {m} lines cannot determine a pose"
            )));
        }
        if self.epsilon_noise < 0.0 || self.gravity_noise_deg < 0.0 {
            return Err(BenchError::InvalidConfig("negative noise sigma".into()));
        }
        if self.trials < 1 {
            return Err(BenchError::InvalidConfig("trials must be >= 1".into()));
        }
        Ok(())
    }
}

/// A generated point: exact bearing and its world-frame location.
#[derive(Debug, Clone, Copy)]
pub struct ScenePoint {
    pub bearing: Vec3,
    pub world: Vec3,
}

/// A generated line, kept as its two defining endpoints so detection noise
/// can re-derive the 2D normal from perturbed bearings.
#[derive(Debug, Clone, Copy)]
pub struct SceneLine {
    pub bearing_a: Vec3,
    pub bearing_b: Vec3,
    pub world_a: Vec3,
    pub world_b: Vec3,
}

/// One synthetic problem instance with its ground truth.
#[derive(Debug, Clone)]
pub struct Scene {
    pub ground_truth: Pose,
    pub gravity: GravityPrior,
    pub points: Vec<ScenePoint>,
    pub lines: Vec<SceneLine>,
}

impl Scene {
    /// Noise-free correspondences.
    pub fn correspondences(&self) -> (Vec<PointCorrespondence>, Vec<LineCorrespondence>) {
        let points = self
            .points
            .iter()
            .map(|p| PointCorrespondence::new(p.bearing, p.world))
            .collect();
        let lines = self
            .lines
            .iter()
            .map(|l| {
                LineCorrespondence::new(
                    l.bearing_a.cross(l.bearing_b),
                    l.world_a,
                    l.world_b - l.world_a,
                )
            })
            .collect();
        (points, lines)
    }
}

/// Uniform rotation from a unit quaternion plus the gravity measurement it
/// implies (the world y-axis in the camera frame, i.e. the second column).
pub fn sample_ground_truth(rng: &mut SplitMix64) -> (Pose, GravityPrior) {
    let quat = loop {
        let q = [rng.normal(), rng.normal(), rng.normal(), rng.normal()];
        let n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
        if n > 1e-3 {
            break [q[0] / n, q[1] / n, q[2] / n, q[3] / n];
        }
    };
    let rotation = rotation_from_quaternion(quat);
    let translation = sample_unit_vector(rng);
    let gravity = GravityPrior::new(rotation.matrix().col(1));
    (Pose::new(rotation, translation), gravity)
}

fn rotation_from_quaternion([w, x, y, z]: [f64; 4]) -> Rotation3 {
    Rotation3::from_matrix_unchecked(Mat3::new([
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]))
}

/// Uniform direction on S² (z uniform in [-1,1], azimuth uniform).
pub fn sample_unit_vector(rng: &mut SplitMix64) -> Vec3 {
    let z = rng.uniform(-1.0, 1.0);
    let phi = rng.uniform(0.0, std::f64::consts::TAU);
    let r = (1.0 - z * z).sqrt();
    Vec3::new(r * phi.cos(), r * phi.sin(), z)
}

/// Generate a full problem instance for `cfg`.
pub fn sample_scene(cfg: &SceneConfig, rng: &mut SplitMix64) -> Result<Scene, BenchError> {
    let (mut pose, gravity) = sample_ground_truth(rng);
    if cfg.configuration == Configuration::Planar {
        // Unit translation rescaled to randomize the scene scale.
        let scale = rng.uniform(cfg.planar_scale_range.0, cfg.planar_scale_range.1);
        pose = Pose::new(pose.rotation, pose.translation * scale);
    }

    let mut points = Vec::with_capacity(cfg.n_points);
    for _ in 0..cfg.n_points {
        points.push(sample_point(cfg, &pose, &gravity, rng)?);
    }
    let mut lines = Vec::with_capacity(cfg.m_lines);
    for _ in 0..cfg.m_lines {
        lines.push(sample_line(cfg, &pose, &gravity, rng)?);
    }

    Ok(Scene {
        ground_truth: pose,
        gravity,
        points,
        lines,
    })
}

fn sample_point(
    cfg: &SceneConfig,
    pose: &Pose,
    gravity: &GravityPrior,
    rng: &mut SplitMix64,
) -> Result<ScenePoint, BenchError> {
    for _ in 0..MAX_REJECTION_ATTEMPTS {
        let bearing = match cfg.configuration {
            Configuration::ImagePlane => {
                Vec3::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 1.0)
            }
            Configuration::Spherical | Configuration::Planar => sample_unit_vector(rng),
        };
        match cfg.configuration {
            Configuration::ImagePlane | Configuration::Spherical => {
                let depth = rng.uniform(cfg.depth_range.0, cfg.depth_range.1);
                let world = pose.inverse_transform(bearing * depth);
                return Ok(ScenePoint { bearing, world });
            }
            Configuration::Planar => {
                // Ray-plane intersection: the world point depth along the
                // bearing where the ray meets y = 0 is (g·T) / (g·p).
                let g = gravity.vector();
                let denom = g.dot(bearing);
                let t = g.dot(pose.translation) / denom;
                // Cheirality: the point must sit in front of the camera.
                if !t.is_finite() || t <= 0.0 {
                    continue;
                }
                let mut world = pose.inverse_transform(bearing * t);
                // On the plane by construction; zero the residual rounding.
                world.y = 0.0;
                return Ok(ScenePoint { bearing, world });
            }
        }
    }
    Err(BenchError::Generation(MAX_REJECTION_ATTEMPTS))
}

fn sample_line(
    cfg: &SceneConfig,
    pose: &Pose,
    gravity: &GravityPrior,
    rng: &mut SplitMix64,
) -> Result<SceneLine, BenchError> {
    for _ in 0..MAX_REJECTION_ATTEMPTS {
        let a = sample_point(cfg, pose, gravity, rng)?;
        let b = sample_point(cfg, pose, gravity, rng)?;
        let normal = a.bearing.cross(b.bearing);
        let direction = b.world - a.world;
        // Degenerate pairs (parallel bearings, coincident world points)
        // carry no line information.
        if normal.norm() < 1e-9 * a.bearing.norm() * b.bearing.norm() || direction.norm() < 1e-9 {
            continue;
        }
        return Ok(SceneLine {
            bearing_a: a.bearing,
            bearing_b: b.bearing,
            world_a: a.world,
            world_b: b.world,
        });
    }
    Err(BenchError::Generation(MAX_REJECTION_ATTEMPTS))
}

/// Rotate the gravity measurement about a uniform random axis by an angle
/// drawn from N(0, σ²) degrees, then re-normalize.
pub fn perturb_gravity(g: &GravityPrior, sigma_deg: f64, rng: &mut SplitMix64) -> GravityPrior {
    if sigma_deg == 0.0 {
        return *g;
    }
    let axis = sample_unit_vector(rng);
    let angle = (rng.normal() * sigma_deg).to_radians();
    let rotated = rodrigues(axis, angle) * g.vector();
    GravityPrior::new(rotated)
}

/// Rodrigues rotation matrix about a unit axis.
fn rodrigues(axis: Vec3, angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    let k = Mat3::cross_matrix(axis);
    Mat3::IDENTITY + k * s + (k * k) * (1.0 - c)
}

/// Apply detection noise and materialize correspondences.
///
/// Gaussian noise with σ = `cfg.epsilon_noise` goes on each component of each
/// 2D feature: the (x, y) image coordinates for image-plane bearings, all
/// three components for spherical-style bearings (no re-normalization unless
/// `cfg.renormalize_bearings`). Line noise lands on the endpoint bearings and
/// the 2D normal is re-derived, unless `cfg.line_noise_on_normal`. 3D data is
/// untouched.
pub fn perturb_detections(
    scene: &Scene,
    cfg: &SceneConfig,
    rng: &mut SplitMix64,
) -> (Vec<PointCorrespondence>, Vec<LineCorrespondence>) {
    let eps = cfg.epsilon_noise;
    let noisy_bearing = |b: Vec3, rng: &mut SplitMix64| -> Vec3 {
        if eps == 0.0 {
            return b;
        }
        let v = match cfg.configuration {
            Configuration::ImagePlane => {
                Vec3::new(b.x + eps * rng.normal(), b.y + eps * rng.normal(), b.z)
            }
            Configuration::Spherical | Configuration::Planar => Vec3::new(
                b.x + eps * rng.normal(),
                b.y + eps * rng.normal(),
                b.z + eps * rng.normal(),
            ),
        };
        if cfg.renormalize_bearings && cfg.configuration != Configuration::ImagePlane {
            v.normalized()
        } else {
            v
        }
    };

    let points = scene
        .points
        .iter()
        .map(|p| PointCorrespondence::new(noisy_bearing(p.bearing, rng), p.world))
        .collect();

    let lines = scene
        .lines
        .iter()
        .map(|l| {
            let normal = if cfg.line_noise_on_normal {
                let n = l.bearing_a.cross(l.bearing_b);
                if eps == 0.0 {
                    n
                } else {
                    Vec3::new(
                        n.x + eps * rng.normal(),
                        n.y + eps * rng.normal(),
                        n.z + eps * rng.normal(),
                    )
                }
            } else {
                let a = noisy_bearing(l.bearing_a, rng);
                let b = noisy_bearing(l.bearing_b, rng);
                a.cross(b)
            };
            LineCorrespondence::new(normal, l.world_a, l.world_b - l.world_a)
        })
        .collect();

    (points, lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use posegravity::{estimate_pose, rotation_angle_error_deg, translation_error, SolverOptions};

    #[test]
    fn ground_truth_is_reproducible_bitwise() {
        let mut a = SplitMix64::new(123);
        let mut b = SplitMix64::new(123);
        let (pa, ga) = sample_ground_truth(&mut a);
        let (pb, gb) = sample_ground_truth(&mut b);
        assert_eq!(pa.rotation.matrix().0, pb.rotation.matrix().0);
        assert_eq!(pa.translation, pb.translation);
        assert_eq!(ga.vector(), gb.vector());
    }

    #[test]
    fn ground_truth_rotation_is_valid_and_gravity_is_second_column() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let (pose, g) = sample_ground_truth(&mut rng);
            assert!(pose.rotation.is_valid(1e-9));
            assert!((pose.translation.norm() - 1.0).abs() < 1e-12);
            let col = pose.rotation.matrix().col(1);
            assert!((g.vector() - col).norm() < 1e-15);
            assert!((g.vector().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_sample_mean_is_near_zero() {
        let mut rng = SplitMix64::new(77);
        let n = 100_000;
        let mut sums = [[0.0_f64; 3]; 3];
        for _ in 0..n {
            let (pose, _) = sample_ground_truth(&mut rng);
            for (sum_row, mat_row) in sums.iter_mut().zip(pose.rotation.matrix().0.iter()) {
                for (s, v) in sum_row.iter_mut().zip(mat_row.iter()) {
                    *s += v;
                }
            }
        }
        for row in &sums {
            for &s in row {
                assert!((s / n as f64).abs() < 0.01);
            }
        }
    }

    fn assert_exact_recovery(cfg: &SceneConfig, seed: u64) {
        let mut rng = SplitMix64::new(seed);
        let scene = sample_scene(cfg, &mut rng).unwrap();
        let (points, lines) = scene.correspondences();
        let set = estimate_pose(&points, &lines, &scene.gravity, &SolverOptions::default())
            .expect("solver failed on exact scene");
        let gt = &scene.ground_truth;
        let best = set
            .solutions
            .iter()
            .map(|s| {
                rotation_angle_error_deg(&gt.rotation, &s.pose.rotation)
                    + translation_error(gt.translation, s.pose.translation)
            })
            .fold(f64::INFINITY, f64::min);
        assert!(best < 1e-6, "recovery error {best} for {cfg:?}");
    }

    #[test]
    fn zero_noise_scenes_recover_ground_truth() {
        for config in [
            Configuration::ImagePlane,
            Configuration::Spherical,
            Configuration::Planar,
        ] {
            assert_exact_recovery(&SceneConfig::new(config, 3, 0), 11);
            assert_exact_recovery(&SceneConfig::new(config, 0, 4), 13);
            assert_exact_recovery(&SceneConfig::new(config, 2, 1), 17);
        }
    }

    #[test]
    fn image_plane_bearings_have_unit_z_and_positive_depth() {
        let cfg = SceneConfig::new(Configuration::ImagePlane, 10, 0);
        let mut rng = SplitMix64::new(3);
        let scene = sample_scene(&cfg, &mut rng).unwrap();
        for p in &scene.points {
            assert_eq!(p.bearing.z, 1.0);
            let cam = scene.ground_truth.transform(p.world);
            assert!(cam.z > 0.0);
        }
    }

    #[test]
    fn planar_world_points_lie_on_the_ground_plane() {
        let cfg = SceneConfig::new(Configuration::Planar, 6, 3);
        let mut rng = SplitMix64::new(19);
        let scene = sample_scene(&cfg, &mut rng).unwrap();
        for p in &scene.points {
            assert!(p.world.y.abs() < 1e-12);
        }
        for l in &scene.lines {
            assert!(l.world_a.y.abs() < 1e-12);
            assert!(l.world_b.y.abs() < 1e-12);
        }
    }

    #[test]
    fn gravity_perturbation_is_unit_and_identity_at_zero_sigma() {
        let mut rng = SplitMix64::new(31);
        let (_, g) = sample_ground_truth(&mut rng);
        let same = perturb_gravity(&g, 0.0, &mut rng);
        assert_eq!(same.vector(), g.vector());
        for _ in 0..1000 {
            let v = perturb_gravity(&g, 2.0, &mut rng).vector();
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gravity_perturbation_angle_matches_quadrature_oracle() {
        // With a uniform random axis the angle between g and g' is
        // acos(cos θ + (1 - cos θ) c²) with θ ~ N(0, σ²) and c = axis·g
        // uniform on [-1, 1]. Integrate that density numerically and compare
        // moments against samples.
        let sigma_deg = 1.0_f64;
        let (mut m1, mut m2, mut wsum) = (0.0, 0.0, 0.0);
        let nodes = 4001;
        for i in 0..nodes {
            // Midpoint rule over θ in [-6σ, 6σ] with the normal weight.
            let th = (-6.0 + 12.0 * (i as f64 + 0.5) / nodes as f64) * sigma_deg.to_radians();
            let w = (-0.5 * (th / sigma_deg.to_radians()).powi(2)).exp();
            for j in 0..400 {
                let c = -1.0 + 2.0 * (j as f64 + 0.5) / 400.0;
                let cos_alpha = (th.cos() + (1.0 - th.cos()) * c * c).clamp(-1.0, 1.0);
                let alpha = cos_alpha.acos();
                m1 += w * alpha;
                m2 += w * alpha * alpha;
                wsum += w;
            }
        }
        m1 /= wsum;
        m2 /= wsum;
        let expected_std = (m2 - m1 * m1).sqrt().to_degrees();

        let mut rng = SplitMix64::new(2024);
        let (_, g) = sample_ground_truth(&mut rng);
        let n = 100_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let v = perturb_gravity(&g, sigma_deg, &mut rng).vector();
            let alpha = g.vector().dot(v).clamp(-1.0, 1.0).acos().to_degrees();
            s1 += alpha;
            s2 += alpha * alpha;
        }
        let mean = s1 / n as f64;
        let sample_std = (s2 / n as f64 - mean * mean).sqrt();
        assert!(
            (sample_std - expected_std).abs() < 0.05 * expected_std,
            "sample σ {sample_std} vs oracle σ {expected_std}"
        );
    }

    #[test]
    fn detection_noise_is_identity_at_zero_and_deterministic() {
        let cfg = SceneConfig::new(Configuration::Spherical, 4, 2);
        let mut rng = SplitMix64::new(101);
        let scene = sample_scene(&cfg, &mut rng).unwrap();

        let (p0, l0) = perturb_detections(&scene, &cfg, &mut SplitMix64::new(55));
        let (clean_p, clean_l) = scene.correspondences();
        assert_eq!(p0, clean_p);
        assert_eq!(l0, clean_l);

        let mut noisy_cfg = cfg.clone();
        noisy_cfg.epsilon_noise = 0.01;
        let (pa, la) = perturb_detections(&scene, &noisy_cfg, &mut SplitMix64::new(55));
        let (pb, lb) = perturb_detections(&scene, &noisy_cfg, &mut SplitMix64::new(55));
        assert_eq!(pa, pb);
        assert_eq!(la, lb);
        assert_ne!(pa, clean_p);
    }

    #[test]
    fn image_plane_noise_keeps_z_fixed() {
        let mut cfg = SceneConfig::new(Configuration::ImagePlane, 5, 0);
        cfg.epsilon_noise = 0.05;
        let mut rng = SplitMix64::new(400);
        let scene = sample_scene(&cfg, &mut rng).unwrap();
        let (points, _) = perturb_detections(&scene, &cfg, &mut rng);
        for p in &points {
            assert_eq!(p.image.z, 1.0);
        }
    }

    #[test]
    fn line_noise_flag_perturbs_normal_directly() {
        let mut cfg = SceneConfig::new(Configuration::Spherical, 2, 2);
        cfg.epsilon_noise = 0.01;
        cfg.line_noise_on_normal = true;
        let mut rng = SplitMix64::new(71);
        let scene = sample_scene(&cfg, &mut rng).unwrap();
        let (_, lines) = perturb_detections(&scene, &cfg, &mut SplitMix64::new(9));
        let (_, clean) = scene.correspondences();
        for (noisy, exact) in lines.iter().zip(clean.iter()) {
            assert_ne!(noisy.normal, exact.normal);
            // 3D data untouched either way.
            assert_eq!(noisy.world_point, exact.world_point);
            assert_eq!(noisy.world_direction, exact.world_direction);
        }
    }
}
