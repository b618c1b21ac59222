//! Gravity-frame geometry: alignment rotations, pose composition, feature
//! frame transforms, and pose error metrics.

use crate::features::{LineCorrespondence, PointCorrespondence};
use crate::math::{Mat3, Vec3};

/// Treat `1 + g_y` below this as the antipodal gravity case `g = (0,-1,0)`,
/// where the closed-form alignment is singular.
const DEGENERATE_GRAVITY_EPS: f64 = 1e-8;

/// A rotation matrix, i.e. `Mat3` restricted to SO(3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3(Mat3);

impl Rotation3 {
    pub const IDENTITY: Rotation3 = Rotation3(Mat3::IDENTITY);

    /// Wrap a matrix that the caller guarantees is a rotation.
    pub fn from_matrix_unchecked(m: Mat3) -> Self {
        debug_assert!(Rotation3(m).is_valid(1e-9));
        Rotation3(m)
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    /// Inverse rotation.
    pub fn transpose(&self) -> Rotation3 {
        Rotation3(self.0.transpose())
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        self.0 * v
    }

    pub fn compose(&self, rhs: &Rotation3) -> Rotation3 {
        Rotation3(self.0 * rhs.0)
    }

    /// `RᵀR = I` and `det R = 1`, each entry within `tol`.
    pub fn is_valid(&self, tol: f64) -> bool {
        let gram = self.0.transpose() * self.0;
        let mut ok = (self.0.det() - 1.0).abs() <= tol;
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                ok &= (gram.0[i][j] - expect).abs() <= tol;
            }
        }
        ok
    }
}

/// Rigid camera pose: `x_cam = R x_world + T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub rotation: Rotation3,
    pub translation: Vec3,
}

impl Pose {
    pub fn identity() -> Self {
        Pose {
            rotation: Rotation3::IDENTITY,
            translation: Vec3::ZERO,
        }
    }

    pub fn new(rotation: Rotation3, translation: Vec3) -> Self {
        Pose {
            rotation,
            translation,
        }
    }

    /// World point into the camera frame.
    pub fn transform(&self, world: Vec3) -> Vec3 {
        self.rotation.apply(world) + self.translation
    }

    /// Camera point back into the world frame.
    pub fn inverse_transform(&self, camera: Vec3) -> Vec3 {
        self.rotation.transpose().apply(camera - self.translation)
    }
}

/// Unit gravity direction: the world y-axis observed in the camera frame,
/// typically an IMU measurement. Normalized on construction since raw IMU
/// vectors carry magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityPrior(Vec3);

impl GravityPrior {
    /// Panics if `g` is zero or not finite.
    pub fn new(g: Vec3) -> Self {
        assert!(g.is_finite(), "gravity vector must be finite");
        GravityPrior(g.normalized())
    }

    pub fn vector(&self) -> Vec3 {
        self.0
    }
}

/// Rotation `R_g` taking the measured gravity direction onto the camera
/// y-axis: `R_g g = (0, 1, 0)`.
///
/// Uses the closed-form axis-angle construction, which is singular at
/// `g = (0,-1,0)`; that branch returns the fixed 180° rotation about the
/// x-axis, `diag(1,-1,-1)`.
pub fn gravity_alignment_rotation(g: &GravityPrior) -> Rotation3 {
    let v = g.vector();
    if 1.0 + v.y < DEGENERATE_GRAVITY_EPS {
        return Rotation3::from_matrix_unchecked(Mat3::diagonal(1.0, -1.0, -1.0));
    }
    let k = 1.0 / (1.0 + v.y);
    Rotation3::from_matrix_unchecked(Mat3::new([
        [v.z * v.z * k + v.y, -v.x, -v.x * v.z * k],
        [v.x, v.y, v.z],
        [-v.x * v.z * k, -v.z, v.x * v.x * k + v.y],
    ]))
}

/// Rotation about the y-axis with cosine `x` and sine `y`.
///
/// Panics if `(x, y)` is further than `1e-6` from the unit circle.
pub fn rotation_about_y(x: f64, y: f64) -> Rotation3 {
    assert!(
        (x * x + y * y - 1.0).abs() <= 1e-6,
        "(x, y) must lie on the unit circle"
    );
    Rotation3::from_matrix_unchecked(Mat3::new([[x, 0.0, y], [0.0, 1.0, 0.0], [-y, 0.0, x]]))
}

/// Recover the camera pose from a solved circle point and gravity-frame
/// translation: `R = R_gᵀ R̃(x, y)` and `T = R_gᵀ T̃`.
pub fn compose_pose(r: (f64, f64), t_tilde: Vec3, r_g: &Rotation3) -> Pose {
    let r_g_inv = r_g.transpose();
    Pose {
        rotation: r_g_inv.compose(&rotation_about_y(r.0, r.1)),
        translation: r_g_inv.apply(t_tilde),
    }
}

/// Rotate image bearings and line normals into the gravity-aligned frame.
/// 3D quantities are untouched.
pub fn transform_to_gravity_frame(
    points: &[PointCorrespondence],
    lines: &[LineCorrespondence],
    r_g: &Rotation3,
) -> (Vec<PointCorrespondence>, Vec<LineCorrespondence>) {
    let points = points
        .iter()
        .map(|p| PointCorrespondence {
            image: r_g.apply(p.image),
            world: p.world,
        })
        .collect();
    let lines = lines
        .iter()
        .map(|l| LineCorrespondence {
            normal: r_g.apply(l.normal),
            world_point: l.world_point,
            world_direction: l.world_direction,
        })
        .collect();
    (points, lines)
}

/// Angle between two rotations in degrees, in `[0, 180]`.
///
/// The cosine comes from the trace of the relative rotation; taking its
/// arccos directly loses half the significant digits near zero (the
/// `acos(1 - ε) ≈ √2ε` floor sits around 1e-6 degrees), so the angle is
/// evaluated as `atan2(|sin|, cos)` with the sine magnitude read off the
/// skew part. Same angle, full precision at both ends of the range.
pub fn rotation_angle_error_deg(r_gt: &Rotation3, r_est: &Rotation3) -> f64 {
    let q = r_gt.matrix().transpose() * *r_est.matrix();
    let c = ((q.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    let s = 0.5
        * Vec3::new(
            q.0[2][1] - q.0[1][2],
            q.0[0][2] - q.0[2][0],
            q.0[1][0] - q.0[0][1],
        )
        .norm();
    s.atan2(c).to_degrees()
}

/// Euclidean distance between two translations.
pub fn translation_error(t_gt: Vec3, t_est: Vec3) -> f64 {
    (t_gt - t_est).norm()
}
