//! Input correspondence types.

use crate::math::Vec3;

/// A 2D/3D point correspondence: a homogeneous image bearing paired with a
/// world point.
///
/// Bearings are in calibrated (normalized) camera coordinates and are used
/// exactly as provided — image-plane detections typically have `z = 1`,
/// wide-angle detections are unit vectors. They are intentionally not
/// re-normalized here because `‖image‖²` enters the least-squares weighting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCorrespondence {
    pub image: Vec3,
    pub world: Vec3,
}

impl PointCorrespondence {
    pub fn new(image: Vec3, world: Vec3) -> Self {
        assert!(image.norm_squared() > 0.0, "image bearing must be nonzero");
        PointCorrespondence { image, world }
    }
}

/// A 2D/3D line correspondence: the image line's normal vector paired with a
/// point on the 3D line and the 3D line direction.
///
/// `new` normalizes `world_direction` to unit length; the direction residual
/// is scaled by the solver's `delta` option under that convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineCorrespondence {
    pub normal: Vec3,
    pub world_point: Vec3,
    pub world_direction: Vec3,
}

impl LineCorrespondence {
    pub fn new(normal: Vec3, world_point: Vec3, world_direction: Vec3) -> Self {
        assert!(normal.norm_squared() > 0.0, "line normal must be nonzero");
        LineCorrespondence {
            normal,
            world_point,
            world_direction: world_direction.normalized(),
        }
    }
}
