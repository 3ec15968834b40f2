//! Gridded surface elevation with bilinear sampling and procedural generation.

use super::SimError;
use crate::geom::Vec2;
use ndarray::Array2;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Parameters for procedural surface generation: a base plane plus a seeded
/// sum of smooth Gaussian bumps and dips.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FieldParams {
    /// Side length of the square field, mm.
    pub extent_mm: f64,
    /// Grid spacing, mm.
    pub cell_mm: f64,
    /// Elevation of the base plane, mm.
    pub base_height: f64,
    pub bump_count: usize,
    /// Bump amplitude range, mm; negative amplitudes produce dips.
    pub amp_min: f64,
    pub amp_max: f64,
    /// Bump radius (Gaussian sigma) range, mm.
    pub sigma_min: f64,
    pub sigma_max: f64,
}

impl Default for FieldParams {
    fn default() -> Self {
        FieldParams {
            extent_mm: 240.0,
            cell_mm: 1.5,
            base_height: 0.0,
            bump_count: 10,
            amp_min: -3.0,
            amp_max: 4.0,
            sigma_min: 18.0,
            sigma_max: 40.0,
        }
    }
}

impl FieldParams {
    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.extent_mm > 0.0 && self.cell_mm > 0.0) {
            return Err(SimError::InvalidConfig(
                "field extent and cell size must be positive".into(),
            ));
        }
        if self.extent_mm / self.cell_mm < 1.0 {
            return Err(SimError::InvalidConfig(
                "field must span at least 2x2 grid nodes".into(),
            ));
        }
        if self.amp_min > self.amp_max || self.sigma_min > self.sigma_max || self.sigma_min <= 0.0 {
            return Err(SimError::InvalidConfig(
                "bump amplitude/sigma ranges are inverted or non-positive".into(),
            ));
        }
        Ok(())
    }
}

/// Gridded surface elevation; heights are indexed `(iy, ix)` so row `iy`
/// holds the nodes at `y = origin.y + iy * cell_size`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightField {
    heights: Array2<f64>,
    cell_size: f64,
    origin: Vec2,
}

impl HeightField {
    pub fn new(heights: Array2<f64>, cell_size: f64, origin: Vec2) -> Result<Self, SimError> {
        let (ny, nx) = heights.dim();
        if ny < 2 || nx < 2 {
            return Err(SimError::InvalidField(format!(
                "grid must be at least 2x2, got {ny}x{nx}"
            )));
        }
        if !(cell_size > 0.0) || !cell_size.is_finite() {
            return Err(SimError::InvalidField(format!(
                "cell size must be positive and finite, got {cell_size}"
            )));
        }
        if !origin.is_finite() {
            return Err(SimError::InvalidField("origin must be finite".into()));
        }
        if heights.iter().any(|h| !h.is_finite()) {
            return Err(SimError::InvalidField(
                "all grid heights must be finite".into(),
            ));
        }
        Ok(HeightField {
            heights,
            cell_size,
            origin,
        })
    }

    /// Seeded procedural surface centered on the origin.
    pub fn generate(params: &FieldParams, rng: &mut ChaCha8Rng) -> Result<Self, SimError> {
        params.validate()?;
        let n = (params.extent_mm / params.cell_mm).floor() as usize + 1;
        let half = params.extent_mm / 2.0;
        let origin = Vec2::new(-half, -half);

        let bumps: Vec<(f64, f64, f64, f64)> = (0..params.bump_count)
            .map(|_| {
                let cx = rng.random_range(-half..half);
                let cy = rng.random_range(-half..half);
                let amp = rng.random_range(params.amp_min..=params.amp_max);
                let sigma = rng.random_range(params.sigma_min..=params.sigma_max);
                (cx, cy, amp, sigma)
            })
            .collect();

        let mut heights = Array2::zeros((n, n));
        for iy in 0..n {
            let y = origin.y + iy as f64 * params.cell_mm;
            for ix in 0..n {
                let x = origin.x + ix as f64 * params.cell_mm;
                let mut h = params.base_height;
                for &(cx, cy, amp, sigma) in &bumps {
                    let d2 = (x - cx).powi(2) + (y - cy).powi(2);
                    h += amp * (-d2 / (2.0 * sigma * sigma)).exp();
                }
                heights[(iy, ix)] = h;
            }
        }
        HeightField::new(heights, params.cell_mm, origin)
    }

    pub fn nx(&self) -> usize {
        self.heights.dim().1
    }

    pub fn ny(&self) -> usize {
        self.heights.dim().0
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn origin(&self) -> Vec2 {
        self.origin
    }

    pub fn heights(&self) -> &Array2<f64> {
        &self.heights
    }

    /// Inclusive (min, max) corners of the queryable extent.
    pub fn extent(&self) -> (Vec2, Vec2) {
        let max = Vec2::new(
            self.origin.x + (self.nx() - 1) as f64 * self.cell_size,
            self.origin.y + (self.ny() - 1) as f64 * self.cell_size,
        );
        (self.origin, max)
    }

    /// Bilinear interpolation of the four surrounding grid heights.
    pub fn height_at(&self, x: f64, y: f64) -> Result<f64, SimError> {
        let (lo, hi) = self.extent();
        if !(x.is_finite() && y.is_finite()) || x < lo.x || x > hi.x || y < lo.y || y > hi.y {
            return Err(SimError::OutOfExtent { x, y });
        }
        Ok(self.bilinear(x, y))
    }

    /// Like [`HeightField::height_at`] but clamps the query to the extent;
    /// used where geometry may graze the field border (rendering, probe
    /// wander) and a hard error would be wrong.
    pub fn height_clamped(&self, x: f64, y: f64) -> f64 {
        let (lo, hi) = self.extent();
        self.bilinear(x.clamp(lo.x, hi.x), y.clamp(lo.y, hi.y))
    }

    fn bilinear(&self, x: f64, y: f64) -> f64 {
        let gx = (x - self.origin.x) / self.cell_size;
        let gy = (y - self.origin.y) / self.cell_size;
        let ix = (gx.floor() as usize).min(self.nx() - 2);
        let iy = (gy.floor() as usize).min(self.ny() - 2);
        let fx = gx - ix as f64;
        let fy = gy - iy as f64;
        let h = &self.heights;
        let top = h[(iy, ix)] * (1.0 - fx) + h[(iy, ix + 1)] * fx;
        let bot = h[(iy + 1, ix)] * (1.0 - fx) + h[(iy + 1, ix + 1)] * fx;
        top * (1.0 - fy) + bot * fy
    }

    /// Unit surface normal estimated by central differences of the clamped
    /// height; used only for shading.
    pub fn normal_at(&self, x: f64, y: f64) -> [f64; 3] {
        let d = self.cell_size * 0.5;
        let dzdx = (self.height_clamped(x + d, y) - self.height_clamped(x - d, y)) / (2.0 * d);
        let dzdy = (self.height_clamped(x, y + d) - self.height_clamped(x, y - d)) / (2.0 * d);
        let inv = 1.0 / (1.0 + dzdx * dzdx + dzdy * dzdy).sqrt();
        [-dzdx * inv, -dzdy * inv, inv]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use rand::SeedableRng;

    fn flat(h: f64) -> HeightField {
        HeightField::new(Array2::from_elem((4, 4), h), 10.0, Vec2::new(0.0, 0.0)).unwrap()
    }

    #[test]
    fn constant_field_everywhere() {
        let f = flat(3.0);
        for &(x, y) in &[(0.0, 0.0), (14.2, 7.9), (30.0, 30.0), (0.3, 29.7)] {
            assert_abs_diff_eq!(f.height_at(x, y).unwrap(), 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn grid_node_queries_return_stored_heights() {
        let h = array![[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]];
        let f = HeightField::new(h.clone(), 5.0, Vec2::new(-5.0, 0.0)).unwrap();
        for iy in 0..3 {
            for ix in 0..3 {
                let x = -5.0 + ix as f64 * 5.0;
                let y = iy as f64 * 5.0;
                assert_abs_diff_eq!(f.height_at(x, y).unwrap(), h[(iy, ix)], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bilinear_at_cell_center() {
        // Hand evaluation: corners (0,0,0),(10,0,0),(0,10,0),(10,10,4);
        // at (5,5) weights are all 1/4, giving 4/4 = 1.
        let f = HeightField::new(array![[0.0, 0.0], [0.0, 4.0]], 10.0, Vec2::ZERO).unwrap();
        assert_abs_diff_eq!(f.height_at(5.0, 5.0).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn out_of_extent_is_an_error_with_coordinates() {
        let f = flat(0.0);
        let err = f.height_at(31.0, 5.0).unwrap_err();
        match err {
            SimError::OutOfExtent { x, y } => {
                assert_eq!(x, 31.0);
                assert_eq!(y, 5.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn upper_edge_is_queryable() {
        let f = flat(2.0);
        assert_abs_diff_eq!(f.height_at(30.0, 30.0).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn continuity_across_cell_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = HeightField::generate(&FieldParams::default(), &mut rng).unwrap();
        // Query a shared cell edge approached from both sides.
        let x_edge = f.origin().x + 40.0 * f.cell_size();
        for k in 0..20 {
            let y = f.origin().y + 3.7 * f.cell_size() + k as f64;
            let left = f.height_at(x_edge - 1e-12, y).unwrap();
            let right = f.height_at(x_edge + 1e-12, y).unwrap();
            assert!((left - right).abs() < 1e-9);
        }
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let params = FieldParams::default();
        let a = HeightField::generate(&params, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = HeightField::generate(&params, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
        let c = HeightField::generate(&params, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn degenerate_grid_rejected() {
        let r = HeightField::new(Array2::zeros((1, 5)), 1.0, Vec2::ZERO);
        assert!(r.is_err());
        let r = HeightField::new(Array2::zeros((3, 3)), 0.0, Vec2::ZERO);
        assert!(r.is_err());
    }
}
