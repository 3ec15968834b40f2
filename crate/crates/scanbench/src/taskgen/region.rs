//! Region-of-interest polygons: seeded radial-perturbation generation and the
//! planar geometry queries the path planners rely on.

use super::TaskError;
use crate::geom::{PlanarPose, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Bounds for seeded region generation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RegionParams {
    pub min_radius: f64,
    pub max_radius: f64,
    /// Per-harmonic amplitude bound for the radial perturbation; harmonics
    /// 2..=5 each draw an amplitude in [0, irregularity].
    pub irregularity: f64,
    pub vertices: usize,
}

impl Default for RegionParams {
    fn default() -> Self {
        RegionParams {
            min_radius: 10.0,
            max_radius: 16.0,
            irregularity: 0.06,
            vertices: 64,
        }
    }
}

const HARMONICS: std::ops::RangeInclusive<usize> = 2..=5;

impl RegionParams {
    pub fn validate(&self) -> Result<(), TaskError> {
        if !(self.min_radius > 0.0) || !(self.max_radius > self.min_radius) {
            return Err(TaskError::InvalidParams(
                "radius bounds must satisfy 0 < min < max".into(),
            ));
        }
        if self.irregularity < 0.0 {
            return Err(TaskError::InvalidParams(
                "irregularity must be non-negative".into(),
            ));
        }
        let harmonic_count = HARMONICS.count() as f64;
        if self.irregularity * harmonic_count >= 1.0 {
            return Err(TaskError::InvalidParams(format!(
                "irregularity {} allows the radial perturbation to reach -1, forcing r <= 0",
                self.irregularity
            )));
        }
        if self.vertices < 8 {
            return Err(TaskError::InvalidParams(
                "need at least 8 boundary vertices".into(),
            ));
        }
        Ok(())
    }
}

/// Simple closed polygon (counter-clockwise) marking the scan target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionOfInterest {
    vertices: Vec<Vec2>,
}

impl RegionOfInterest {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self, TaskError> {
        if vertices.len() < 3 {
            return Err(TaskError::InvalidRegion(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(TaskError::InvalidRegion(
                "polygon vertices must be finite".into(),
            ));
        }
        let region = RegionOfInterest { vertices };
        let area = region.signed_area();
        if area <= 0.0 {
            return Err(TaskError::InvalidRegion(format!(
                "polygon must have positive area with counter-clockwise winding (signed area {area})"
            )));
        }
        if !region.is_simple() {
            return Err(TaskError::InvalidRegion(
                "polygon boundary is self-intersecting".into(),
            ));
        }
        Ok(region)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    fn signed_area(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        let mut acc = 0.0;
        for i in 0..n {
            let j = (i + 1) % n;
            acc += v[i].cross(v[j]);
        }
        acc / 2.0
    }

    pub fn area(&self) -> f64 {
        self.signed_area()
    }

    pub fn perimeter(&self) -> f64 {
        self.edge_lengths().iter().sum()
    }

    pub fn centroid(&self) -> Vec2 {
        // Area-weighted polygon centroid.
        let v = &self.vertices;
        let n = v.len();
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        for i in 0..n {
            let j = (i + 1) % n;
            let w = v[i].cross(v[j]);
            cx += (v[i].x + v[j].x) * w;
            cy += (v[i].y + v[j].y) * w;
            a += w;
        }
        Vec2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    pub fn bbox(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    fn edge_lengths(&self) -> Vec<f64> {
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| v[i].dist(v[(i + 1) % n])).collect()
    }

    /// Even-odd point-in-polygon test; points within `tol` of the boundary
    /// count as inside.
    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        if tol > 0.0 && self.boundary_distance(p) <= tol {
            return true;
        }
        let v = &self.vertices;
        let n = v.len();
        let mut inside = false;
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let t = (p.y - a.y) / (b.y - a.y);
                let x_int = a.x + t * (b.x - a.x);
                if p.x < x_int {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Distance from `p` to the nearest boundary point.
    pub fn boundary_distance(&self, p: Vec2) -> f64 {
        self.nearest_boundary_point(p).1
    }

    /// Nearest boundary point and its distance.
    pub fn nearest_boundary_point(&self, p: Vec2) -> (Vec2, f64) {
        let v = &self.vertices;
        let n = v.len();
        let mut best = (v[0], f64::INFINITY);
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let q = project_to_segment(p, a, b);
            let d = p.dist(q);
            if d < best.1 {
                best = (q, d);
            }
        }
        best
    }

    /// Cumulative arc length at the start of each edge, plus the perimeter as
    /// the final entry.
    pub fn cumulative_arcs(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.vertices.len() + 1);
        let mut acc = 0.0;
        out.push(0.0);
        for len in self.edge_lengths() {
            acc += len;
            out.push(acc);
        }
        out
    }

    /// Boundary point at arc position `s` (measured counter-clockwise from
    /// vertex 0, wrapped modulo the perimeter).
    pub fn point_at_arc(&self, s: f64) -> Vec2 {
        let cum = self.cumulative_arcs();
        let total = *cum.last().unwrap();
        let s = s.rem_euclid(total);
        let n = self.vertices.len();
        // cum is sorted; find edge containing s
        let mut i = match cum.binary_search_by(|c| c.partial_cmp(&s).unwrap()) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        if i >= n {
            i = n - 1;
        }
        let a = self.vertices[i];
        let b = self.vertices[(i + 1) % n];
        let len = cum[i + 1] - cum[i];
        if len <= 0.0 {
            return a;
        }
        a.lerp(b, (s - cum[i]) / len)
    }

    /// Arc position of a point assumed to lie on (or very near) the boundary.
    pub fn arc_of_boundary_point(&self, p: Vec2) -> f64 {
        let cum = self.cumulative_arcs();
        let v = &self.vertices;
        let n = v.len();
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let q = project_to_segment(p, a, b);
            let d = p.dist(q);
            if d < best.0 {
                best = (d, cum[i] + a.dist(q));
            }
        }
        best.1
    }

    /// Sorted x-coordinates where the horizontal line at `y` crosses the
    /// boundary (half-open edge rule, so shared vertices count once).
    pub fn horizontal_crossings(&self, y: f64) -> Vec<f64> {
        let v = &self.vertices;
        let n = v.len();
        let mut xs = Vec::new();
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            if (a.y > y) != (b.y > y) {
                let t = (y - a.y) / (b.y - a.y);
                xs.push(a.x + t * (b.x - a.x));
            }
        }
        xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
        xs
    }

    /// Rigid translation of every vertex.
    pub fn translated(&self, offset: Vec2) -> RegionOfInterest {
        RegionOfInterest {
            vertices: self.vertices.iter().map(|&v| v + offset).collect(),
        }
    }

    /// Image of the region under a rigid planar transform.
    pub fn transformed(&self, pose: &PlanarPose) -> RegionOfInterest {
        RegionOfInterest {
            vertices: self.vertices.iter().map(|&v| pose.apply(v)).collect(),
        }
    }

    /// Rotate the vertex ordering so `start` becomes vertex 0 (same shape).
    pub fn with_start_vertex(&self, start: usize) -> RegionOfInterest {
        let n = self.vertices.len();
        let start = start % n;
        let mut vertices = Vec::with_capacity(n);
        vertices.extend_from_slice(&self.vertices[start..]);
        vertices.extend_from_slice(&self.vertices[..start]);
        RegionOfInterest { vertices }
    }

    pub fn is_simple(&self) -> bool {
        let v = &self.vertices;
        let n = v.len();
        for i in 0..n {
            let a1 = v[i];
            let a2 = v[(i + 1) % n];
            for j in (i + 1)..n {
                // Skip edges sharing a vertex.
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let b1 = v[j];
                let b2 = v[(j + 1) % n];
                if segments_intersect(a1, a2, b1, b2) {
                    return false;
                }
            }
        }
        true
    }
}

fn project_to_segment(p: Vec2, a: Vec2, b: Vec2) -> Vec2 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq <= 0.0 {
        return a;
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    a + ab * t
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(p: Vec2, a: Vec2, b: Vec2) -> bool {
    orient(a, b, p).abs() < 1e-12
        && p.x >= a.x.min(b.x) - 1e-12
        && p.x <= a.x.max(b.x) + 1e-12
        && p.y >= a.y.min(b.y) - 1e-12
        && p.y <= a.y.max(b.y) + 1e-12
}

fn segments_intersect(a1: Vec2, a2: Vec2, b1: Vec2, b2: Vec2) -> bool {
    let d1 = orient(b1, b2, a1);
    let d2 = orient(b1, b2, a2);
    let d3 = orient(a1, a2, b1);
    let d4 = orient(a1, a2, b2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    on_segment(a1, b1, b2) || on_segment(a2, b1, b2) || on_segment(b1, a1, a2)
        || on_segment(b2, a1, a2)
}

/// Seeded star-shaped region: `r(theta) = r0 (1 + sum_k a_k sin(k theta + phi_k))`
/// sampled at uniformly spaced angles.
pub fn gen_region(seed: u64, params: &RegionParams) -> Result<RegionOfInterest, TaskError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r0 = rng.random_range(params.min_radius..=params.max_radius);
    let coeffs: Vec<(usize, f64, f64)> = HARMONICS
        .map(|k| {
            let a = rng.random_range(0.0..=params.irregularity);
            let phi = rng.random_range(0.0..2.0 * PI);
            (k, a, phi)
        })
        .collect();

    let v = params.vertices;
    let vertices: Vec<Vec2> = (0..v)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / v as f64;
            let mut r = 1.0;
            for &(k, a, phi) in &coeffs {
                r += a * ((k as f64) * theta + phi).sin();
            }
            let r = r0 * r;
            Vec2::new(r * theta.cos(), r * theta.sin())
        })
        .collect();

    RegionOfInterest::new(vertices)
}
