//! Small planar-geometry helpers shared by the mesh and assembly layers.

use nalgebra::Vector2;

pub type Vec2 = Vector2<f64>;

/// z-component of the cross product of two planar vectors.
#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Signed polygon area by the shoelace formula (positive for counter-clockwise loops).
pub fn polygon_area(pts: &[Vec2]) -> f64 {
    let n = pts.len();
    let mut twice = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        twice += cross(a, b);
    }
    0.5 * twice
}

/// Area centroid of a simple polygon.
pub fn polygon_centroid(pts: &[Vec2]) -> Vec2 {
    let n = pts.len();
    let mut twice = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let w = cross(a, b);
        twice += w;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    let area = 0.5 * twice;
    if area.abs() < f64::MIN_POSITIVE {
        // degenerate loop; fall back to the vertex mean
        let mut m = Vec2::zeros();
        for p in pts {
            m += p;
        }
        return m / n as f64;
    }
    Vec2::new(cx, cy) / (6.0 * area)
}

/// Even-odd point-in-polygon test.
pub fn point_in_polygon(p: Vec2, pts: &[Vec2]) -> bool {
    let n = pts.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let a = pts[i];
        let b = pts[j];
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Checks convexity of a counter-clockwise loop within a relative tolerance on
/// the corner cross products.
pub fn is_convex(pts: &[Vec2], rel_tol: f64) -> bool {
    let n = pts.len();
    let scale: f64 = (0..n)
        .map(|i| (pts[(i + 1) % n] - pts[i]).norm_squared())
        .fold(0.0, f64::max);
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let c = pts[(i + 2) % n];
        if cross(b - a, c - b) < -rel_tol * scale {
            return false;
        }
    }
    true
}

/// Rotates a point about the origin.
pub fn rotate(p: Vec2, angle: f64) -> Vec2 {
    let (s, c) = angle.sin_cos();
    Vec2::new(c * p.x - s * p.y, s * p.x + c * p.y)
}
