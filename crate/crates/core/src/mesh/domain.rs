//! Domain descriptions for mesh generation.
//!
//! Domains are given through a signed distance function (negative inside) over
//! an outer boundary with optional circular holes. Curved boundaries end up
//! approximated by the straight cell edges of the generator.

use crate::error::{Error, Result};
use crate::geo::{self, Vec2};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Circle {
    pub center: [f64; 2],
    pub radius: f64,
}

/// Outer boundary shape.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Outer {
    Rectangle { bounds: [f64; 4] },
    Circle { center: [f64; 2], radius: f64 },
    /// Simple counter-clockwise polygon, e.g. an L-shaped bracket outline.
    Polygon { points: Vec<[f64; 2]> },
}

/// Meshing domain: outer boundary minus circular holes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainSpec {
    #[serde(flatten)]
    pub outer: Outer,
    #[serde(default)]
    pub holes: Vec<Circle>,
}

impl DomainSpec {
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        DomainSpec { outer: Outer::Rectangle { bounds: [x0, y0, x1, y1] }, holes: Vec::new() }
    }

    pub fn circle(cx: f64, cy: f64, r: f64) -> Self {
        DomainSpec { outer: Outer::Circle { center: [cx, cy], radius: r }, holes: Vec::new() }
    }

    pub fn unit_square() -> Self {
        Self::rectangle(0.0, 0.0, 1.0, 1.0)
    }

    /// L-shaped bracket: vertical arm [0,1]x[0,6], horizontal arm [0,4]x[5,6],
    /// with three holes of diameter 0.5. The upper-left hole sits between the
    /// re-entrant corner and the arm so that its north pole (0.75, 5.5) is the
    /// bending-moment concentration point.
    pub fn l_bracket() -> Self {
        DomainSpec {
            outer: Outer::Polygon {
                points: vec![
                    [0.0, 0.0],
                    [1.0, 0.0],
                    [1.0, 5.0],
                    [4.0, 5.0],
                    [4.0, 6.0],
                    [0.0, 6.0],
                ],
            },
            holes: vec![
                Circle { center: [0.5, 0.5], radius: 0.25 },
                Circle { center: [0.75, 5.25], radius: 0.25 },
                Circle { center: [3.5, 5.5], radius: 0.25 },
            ],
        }
    }

    /// Axis-aligned box that contains the domain.
    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        match &self.outer {
            Outer::Rectangle { bounds } => {
                (Vec2::new(bounds[0], bounds[1]), Vec2::new(bounds[2], bounds[3]))
            }
            Outer::Circle { center, radius } => (
                Vec2::new(center[0] - radius, center[1] - radius),
                Vec2::new(center[0] + radius, center[1] + radius),
            ),
            Outer::Polygon { points } => {
                let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
                let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
                for p in points {
                    lo.x = lo.x.min(p[0]);
                    lo.y = lo.y.min(p[1]);
                    hi.x = hi.x.max(p[0]);
                    hi.y = hi.y.max(p[1]);
                }
                (lo, hi)
            }
        }
    }

    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    /// Signed distance to the domain boundary, negative inside.
    pub fn signed_distance(&self, p: Vec2) -> f64 {
        let mut d = match &self.outer {
            Outer::Rectangle { bounds } => {
                let dx = (bounds[0] - p.x).max(p.x - bounds[2]);
                let dy = (bounds[1] - p.y).max(p.y - bounds[3]);
                if dx > 0.0 || dy > 0.0 {
                    Vec2::new(dx.max(0.0), dy.max(0.0)).norm()
                } else {
                    dx.max(dy)
                }
            }
            Outer::Circle { center, radius } => {
                (p - Vec2::new(center[0], center[1])).norm() - radius
            }
            Outer::Polygon { points } => polygon_signed_distance(p, points),
        };
        // subtract holes: inside a hole means outside the domain
        for h in &self.holes {
            let hd = h.radius - (p - Vec2::new(h.center[0], h.center[1])).norm();
            d = d.max(hd);
        }
        d
    }

    /// Outward gradient of the signed distance by central differences.
    pub fn sdf_gradient(&self, p: Vec2) -> Vec2 {
        let h = 1e-6 * self.diameter().max(1.0);
        let gx = (self.signed_distance(p + Vec2::new(h, 0.0))
            - self.signed_distance(p - Vec2::new(h, 0.0)))
            / (2.0 * h);
        let gy = (self.signed_distance(p + Vec2::new(0.0, h))
            - self.signed_distance(p - Vec2::new(0.0, h)))
            / (2.0 * h);
        let g = Vec2::new(gx, gy);
        let n = g.norm();
        if n > 1e-12 {
            g / n
        } else {
            Vec2::new(1.0, 0.0)
        }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.signed_distance(p) <= 0.0
    }
}

fn polygon_signed_distance(p: Vec2, points: &[[f64; 2]]) -> f64 {
    let pts: Vec<Vec2> = points.iter().map(|q| Vec2::new(q[0], q[1])).collect();
    let mut dist = f64::INFINITY;
    let n = pts.len();
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        dist = dist.min(segment_distance(p, a, b));
    }
    if geo::point_in_polygon(p, &pts) {
        -dist
    } else {
        dist
    }
}

fn segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(&ab) / ab.norm_squared()).clamp(0.0, 1.0);
    (p - (a + t * ab)).norm()
}

/// Spatially varying target density for locally refined Voronoi meshes.
///
/// Density is a positive background plus Gaussian bumps centered on attractor
/// points; seeds concentrate where the density is high.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityField {
    /// (x_c, y_c, sigma) triples with sigma in (0, 1].
    pub attractors: Vec<(f64, f64, f64)>,
    pub background: f64,
}

impl DensityField {
    pub fn uniform() -> Self {
        DensityField { attractors: Vec::new(), background: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.background > 0.0) {
            return Err(Error::InvalidArgument("background density must be positive".into()));
        }
        for &(_, _, s) in &self.attractors {
            if !(s > 0.0 && s <= 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "attractor sigma {s} outside (0, 1]"
                )));
            }
        }
        Ok(())
    }

    pub fn eval(&self, p: Vec2) -> f64 {
        let mut d = self.background;
        for &(xc, yc, sigma) in &self.attractors {
            let r2 = (p.x - xc).powi(2) + (p.y - yc).powi(2);
            d += (-r2 / (2.0 * sigma * sigma)).exp();
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_sdf_signs() {
        let d = DomainSpec::rectangle(0.0, 0.0, 2.0, 1.0);
        assert!(d.signed_distance(Vec2::new(1.0, 0.5)) < 0.0);
        assert!(d.signed_distance(Vec2::new(3.0, 0.5)) > 0.0);
        assert!((d.signed_distance(Vec2::new(1.0, 0.0))).abs() < 1e-12);
    }

    #[test]
    fn circle_sdf_is_radial() {
        let d = DomainSpec::circle(0.0, 0.0, 1.0);
        assert!((d.signed_distance(Vec2::new(0.5, 0.0)) + 0.5).abs() < 1e-12);
        let g = d.sdf_gradient(Vec2::new(0.5, 0.0));
        assert!((g - Vec2::new(1.0, 0.0)).norm() < 1e-5);
    }

    #[test]
    fn holes_cut_the_domain() {
        let mut d = DomainSpec::rectangle(0.0, 0.0, 4.0, 4.0);
        d.holes.push(Circle { center: [2.0, 2.0], radius: 0.5 });
        assert!(d.signed_distance(Vec2::new(2.0, 2.0)) > 0.0);
        assert!(d.signed_distance(Vec2::new(2.0, 2.6)) < 0.0);
    }

    #[test]
    fn l_bracket_membership() {
        let d = DomainSpec::l_bracket();
        assert!(d.contains(Vec2::new(0.5, 3.0)));
        assert!(d.contains(Vec2::new(3.0, 5.5)));
        assert!(!d.contains(Vec2::new(3.0, 3.0)));
        assert!(!d.contains(Vec2::new(0.75, 5.25))); // inside a hole
    }

    #[test]
    fn density_positive_with_attractors() {
        let f = DensityField {
            attractors: vec![(0.5, 0.5, 0.3)],
            background: 0.2,
        };
        f.validate().unwrap();
        assert!(f.eval(Vec2::new(0.5, 0.5)) > 1.0);
        assert!(f.eval(Vec2::new(10.0, 10.0)) >= 0.2);
    }
}
