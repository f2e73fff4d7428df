//! Closed-form reference solutions for the benchmark problems.
//!
//! Each solution provides the transverse displacement, the two rotations, and
//! their first derivatives, so error norms and energy norms can be integrated
//! directly. Signs follow the crate-wide kinematic conventions.

use crate::geo::Vec2;

/// Pointwise exact plate fields.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlatePoint {
    pub w: f64,
    pub bx: f64,
    pub by: f64,
    pub w_x: f64,
    pub w_y: f64,
    pub bx_x: f64,
    pub bx_y: f64,
    pub by_x: f64,
    pub by_y: f64,
}

impl PlatePoint {
    /// Curvature vector implied by the rotation gradients.
    pub fn kappa(&self) -> [f64; 3] {
        [self.bx_x, -self.by_y, self.bx_y - self.by_x]
    }

    /// Transverse shear strain vector.
    pub fn gamma(&self) -> [f64; 2] {
        [self.w_x + self.bx, self.w_y - self.by]
    }
}

/// Analytic reference solutions.
#[derive(Debug, Clone)]
pub enum ExactSolution {
    /// Cantilever of length `l` under a unit-width end moment `m`:
    /// cylindrical bending, exact within the plate model for nu = 0.
    CantileverMoment { m: f64, l: f64, e: f64, i: f64 },
    /// Clamped unit square under the polynomial load of
    /// [`square_load_function`]; thickness-dependent shear correction term.
    SquareLoadFunction { t: f64, nu: f64 },
    /// Clamped circular plate of radius 1 under unit pressure.
    ClampedCircular { d: f64, lambda: f64, t: f64 },
}

impl ExactSolution {
    pub fn eval(&self, p: Vec2) -> PlatePoint {
        match *self {
            ExactSolution::CantileverMoment { m, l: _, e, i } => {
                let c = m / (e * i);
                PlatePoint {
                    w: -0.5 * c * p.x * p.x,
                    bx: c * p.x,
                    w_x: -c * p.x,
                    bx_x: c,
                    ..Default::default()
                }
            }
            ExactSolution::SquareLoadFunction { t, nu } => square_solution(p, t, nu),
            ExactSolution::ClampedCircular { d, lambda, t } => circular_solution(p, d, lambda, t),
        }
    }

    /// Free-edge reference deflection of the cantilever under an end moment.
    pub fn cantilever_moment_tip(m: f64, l: f64, e: f64, i: f64) -> f64 {
        -m * l * l / (2.0 * e * i)
    }

    /// Free-edge reference deflection of the cantilever under a distributed
    /// load (signed `q`), including the shear contribution.
    pub fn cantilever_udl_tip(q: f64, l: f64, e: f64, i: f64, g: f64, a_s: f64) -> f64 {
        q * l.powi(4) / (8.0 * e * i) + q * l * l / (2.0 * g * a_s)
    }
}

/// x^3 (x-1)^3 and friends, the building blocks of the square-plate solution.
fn poly_p(x: f64) -> f64 {
    let u = x * x - x;
    u * u * u
}

fn poly_p1(x: f64) -> f64 {
    let u = x * x - x;
    3.0 * u * u * (2.0 * x - 1.0)
}

fn poly_p2(x: f64) -> f64 {
    let u = x * x - x;
    6.0 * u * (5.0 * u + 1.0)
}

fn poly_q(x: f64) -> f64 {
    let u = x * x - x;
    u * (5.0 * u + 1.0)
}

fn poly_q1(x: f64) -> f64 {
    let u = x * x - x;
    (10.0 * u + 1.0) * (2.0 * x - 1.0)
}

fn square_solution(p: Vec2, t: f64, nu: f64) -> PlatePoint {
    let (x, y) = (p.x, p.y);
    let c = 2.0 * t * t / (5.0 * (1.0 - nu));
    let (px, py) = (poly_p(x), poly_p(y));
    let (px1, py1) = (poly_p1(x), poly_p1(y));
    let (px2, py2) = (poly_p2(x), poly_p2(y));
    let (qx, qy) = (poly_q(x), poly_q(y));
    let (qx1, qy1) = (poly_q1(x), poly_q1(y));
    PlatePoint {
        w: px * py / 3.0 - c * (py * qx + px * qy),
        bx: -py * px1 / 3.0,
        by: px * py1 / 3.0,
        w_x: px1 * py / 3.0 - c * (py * qx1 + px1 * qy),
        w_y: px * py1 / 3.0 - c * (py1 * qx + px * qy1),
        bx_x: -py * px2 / 3.0,
        bx_y: -py1 * px1 / 3.0,
        by_x: px1 * py1 / 3.0,
        by_y: px * py2 / 3.0,
    }
}

/// Transverse load that pairs with [`ExactSolution::SquareLoadFunction`];
/// `d` is the flexural rigidity.
pub fn square_load_function(p: Vec2, d: f64) -> f64 {
    let (x, y) = (p.x, p.y);
    let sx = 5.0 * x * x - 5.0 * x + 1.0;
    let sy = 5.0 * y * y - 5.0 * y + 1.0;
    let ux = x * (x - 1.0);
    let uy = y * (y - 1.0);
    let term1 = 12.0 * uy * sx * (2.0 * uy * uy + ux * sy);
    let term2 = 12.0 * ux * sy * (2.0 * ux * ux + uy * sx);
    d * (term1 + term2)
}

fn circular_solution(p: Vec2, d: f64, lambda: f64, t: f64) -> PlatePoint {
    let (x, y) = (p.x, p.y);
    let r2 = x * x + y * y;
    let shear = t * t / (4.0 * lambda);
    let w = r2 * r2 / (64.0 * d) - r2 * (shear + 1.0 / (32.0 * d)) + shear + 1.0 / (64.0 * d);
    let dw_dr2 = r2 / (32.0 * d) - shear - 1.0 / (32.0 * d);
    let b = (r2 - 1.0) / (16.0 * d);
    PlatePoint {
        w,
        bx: -x * b,
        by: y * b,
        w_x: 2.0 * x * dw_dr2,
        w_y: 2.0 * y * dw_dr2,
        bx_x: -b - 2.0 * x * x / (16.0 * d),
        bx_y: -2.0 * x * y / (16.0 * d),
        by_x: 2.0 * x * y / (16.0 * d),
        by_y: b + 2.0 * y * y / (16.0 * d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn square_solution_vanishes_on_the_clamped_boundary() {
        for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
            for p in [
                Vec2::new(s, 0.0),
                Vec2::new(s, 1.0),
                Vec2::new(0.0, s),
                Vec2::new(1.0, s),
            ] {
                let v = square_solution(p, 0.2, 0.3);
                assert!(v.w.abs() < 1e-15);
                assert!(v.bx.abs() < 1e-15);
                assert!(v.by.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn square_solution_derivatives_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let h = 1e-6;
        for _ in 0..20 {
            let p = Vec2::new(rng.random_range(0.05..0.95), rng.random_range(0.05..0.95));
            let v = square_solution(p, 0.1, 0.3);
            let vxp = square_solution(p + Vec2::new(h, 0.0), 0.1, 0.3);
            let vxm = square_solution(p - Vec2::new(h, 0.0), 0.1, 0.3);
            let vyp = square_solution(p + Vec2::new(0.0, h), 0.1, 0.3);
            let vym = square_solution(p - Vec2::new(0.0, h), 0.1, 0.3);
            assert!(((vxp.w - vxm.w) / (2.0 * h) - v.w_x).abs() < 1e-7);
            assert!(((vyp.w - vym.w) / (2.0 * h) - v.w_y).abs() < 1e-7);
            assert!(((vxp.bx - vxm.bx) / (2.0 * h) - v.bx_x).abs() < 1e-7);
            assert!(((vyp.bx - vym.bx) / (2.0 * h) - v.bx_y).abs() < 1e-7);
            assert!(((vxp.by - vxm.by) / (2.0 * h) - v.by_x).abs() < 1e-7);
            assert!(((vyp.by - vym.by) / (2.0 * h) - v.by_y).abs() < 1e-7);
        }
    }

    /// Substituting the exact fields into the constitutive shear law and the
    /// vertical equilibrium must recover the load function.
    #[test]
    fn square_solution_satisfies_vertical_equilibrium() {
        let (e, nu, t) = (1.092e7, 0.3, 0.2f64);
        let d = e * t.powi(3) / (12.0 * (1.0 - nu * nu));
        let cs = e * t * (5.0 / 6.0) / (2.0 * (1.0 + nu));
        let h = 1e-5;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let p = Vec2::new(rng.random_range(0.1..0.9), rng.random_range(0.1..0.9));
            let gamma_x = |p: Vec2| {
                let v = square_solution(p, t, nu);
                v.gamma()[0]
            };
            let gamma_y = |p: Vec2| {
                let v = square_solution(p, t, nu);
                v.gamma()[1]
            };
            let div_q = cs
                * ((gamma_x(p + Vec2::new(h, 0.0)) - gamma_x(p - Vec2::new(h, 0.0)))
                    / (2.0 * h)
                    + (gamma_y(p + Vec2::new(0.0, h)) - gamma_y(p - Vec2::new(0.0, h)))
                        / (2.0 * h));
            let f = square_load_function(p, d);
            let scale = f.abs().max(1.0);
            assert!(
                (div_q + f).abs() <= 1e-6 * scale,
                "equilibrium residual {:.3e} vs load {:.3e}",
                div_q + f,
                f
            );
        }
    }

    #[test]
    fn circular_solution_is_clamped_and_balanced() {
        let (e, nu, t) = (10.92e6, 0.3, 0.1f64);
        let d = e * t.powi(3) / (12.0 * (1.0 - nu * nu));
        let lambda = (5.0 / 6.0) * e * t.powi(3) / (2.0 * (1.0 + nu));
        let sol = ExactSolution::ClampedCircular { d, lambda, t };
        for a in [0.0f64, 1.0, 2.5, 4.0] {
            let p = Vec2::new(a.cos(), a.sin());
            let v = sol.eval(p);
            assert!(v.w.abs() < 1e-12);
            assert!(v.bx.abs() < 1e-12);
            assert!(v.by.abs() < 1e-12);
        }
        // div q = -1 under unit pressure
        let cs = e * t * (5.0 / 6.0) / (2.0 * (1.0 + nu));
        let h = 1e-6;
        let p = Vec2::new(0.3, -0.2);
        let gx = |p: Vec2| sol.eval(p).gamma()[0];
        let gy = |p: Vec2| sol.eval(p).gamma()[1];
        let div_q = cs
            * ((gx(p + Vec2::new(h, 0.0)) - gx(p - Vec2::new(h, 0.0))) / (2.0 * h)
                + (gy(p + Vec2::new(0.0, h)) - gy(p - Vec2::new(0.0, h))) / (2.0 * h));
        assert!((div_q + 1.0).abs() < 1e-6);
    }

    #[test]
    fn cantilever_moment_field_is_consistent() {
        let sol = ExactSolution::CantileverMoment { m: 1.0, l: 2.0, e: 1e5, i: 1.0 / 12.0 };
        let v = sol.eval(Vec2::new(2.0, 0.3));
        assert!((v.w - ExactSolution::cantilever_moment_tip(1.0, 2.0, 1e5, 1.0 / 12.0)).abs() < 1e-15);
        assert_eq!(v.gamma(), [0.0, 0.0]);
        assert!((v.kappa()[0] - 1.0 / (1e5 / 12.0)).abs() < 1e-18);
    }
}
