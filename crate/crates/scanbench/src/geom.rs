//! Planar and spatial primitives: millimetre-unit vectors and rigid planar
//! transforms.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// 2D point or vector in millimetres.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Linear interpolation: `self` at t=0, `other` at t=1.
    pub fn lerp(self, other: Vec2, t: f64) -> Vec2 {
        self + (other - self) * t
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x / rhs, self.y / rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// 3D position in millimetres.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn xy(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x / rhs, self.y / rhs, self.z / rhs)
    }
}

/// Wrap an angle to (-pi, pi].
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Rigid planar transform `p -> R(rot) p + t`, applied to surface geometry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarPose {
    pub rot: f64,
    pub tx: f64,
    pub ty: f64,
}

impl PlanarPose {
    pub fn identity() -> Self {
        PlanarPose {
            rot: 0.0,
            tx: 0.0,
            ty: 0.0,
        }
    }

    pub fn translation(tx: f64, ty: f64) -> Self {
        PlanarPose { rot: 0.0, tx, ty }
    }

    /// Rotation by `angle` about a fixed `center` point.
    pub fn rotation_about(center: Vec2, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        // R p + (c - R c)
        PlanarPose {
            rot: angle,
            tx: center.x - (c * center.x - s * center.y),
            ty: center.y - (s * center.x + c * center.y),
        }
    }

    pub fn apply(&self, p: Vec2) -> Vec2 {
        let (s, c) = self.rot.sin_cos();
        Vec2::new(c * p.x - s * p.y + self.tx, s * p.x + c * p.y + self.ty)
    }

    /// Composition: `after.then_apply(self)`; result applies `self` first.
    pub fn compose(after: &PlanarPose, first: &PlanarPose) -> PlanarPose {
        let (s, c) = after.rot.sin_cos();
        PlanarPose {
            rot: normalize_angle(after.rot + first.rot),
            tx: c * first.tx - s * first.ty + after.tx,
            ty: s * first.tx + c * first.ty + after.ty,
        }
    }

    pub fn inverse(&self) -> PlanarPose {
        let (s, c) = self.rot.sin_cos();
        // inverse rotation applied to -t
        PlanarPose {
            rot: normalize_angle(-self.rot),
            tx: -(c * self.tx + s * self.ty),
            ty: -(-s * self.tx + c * self.ty),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pose_roundtrip_through_inverse() {
        let pose = PlanarPose {
            rot: 0.7,
            tx: 12.0,
            ty: -3.5,
        };
        let p = Vec2::new(4.0, 9.0);
        let back = pose.inverse().apply(pose.apply(p));
        assert_abs_diff_eq!(back.x, p.x, epsilon = 1e-12);
        assert_abs_diff_eq!(back.y, p.y, epsilon = 1e-12);
    }

    #[test]
    fn compose_matches_sequential_application() {
        let a = PlanarPose::rotation_about(Vec2::new(1.0, 2.0), 0.3);
        let b = PlanarPose::translation(5.0, -1.0);
        let combined = PlanarPose::compose(&b, &a);
        let p = Vec2::new(-3.0, 0.5);
        let seq = b.apply(a.apply(p));
        let one = combined.apply(p);
        assert_abs_diff_eq!(seq.x, one.x, epsilon = 1e-12);
        assert_abs_diff_eq!(seq.y, one.y, epsilon = 1e-12);
    }

    #[test]
    fn rotation_about_fixes_center() {
        let c = Vec2::new(7.0, -2.0);
        let pose = PlanarPose::rotation_about(c, 1.1);
        let image = pose.apply(c);
        assert_abs_diff_eq!(image.x, c.x, epsilon = 1e-12);
        assert_abs_diff_eq!(image.y, c.y, epsilon = 1e-12);
    }

    #[test]
    fn angle_normalization_range() {
        for k in -8..8 {
            let a = 0.9 + 2.0 * PI * k as f64;
            let n = normalize_angle(a);
            assert!(n > -PI && n <= PI);
            assert_abs_diff_eq!(n.sin(), a.sin(), epsilon = 1e-9);
            assert_abs_diff_eq!(n.cos(), a.cos(), epsilon = 1e-9);
        }
    }
}
