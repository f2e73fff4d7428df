//! Section parameterization: shape functions, Jacobians, and basis vectors.
//!
//! A point of a section is addressed by the circumferential coordinate
//! `eta` in [-1, 1] along the boundary edge and the radial coordinate `xi` in
//! [0, 1] scaling the edge toward the center, through
//! `X(xi, eta) = X0 + xi (Xbar(eta) - X0)`. The boundary Jacobian stacks the
//! covariant vectors `(Xbar - X0)` and `Xbar_eta`; the full Jacobian picks up a
//! factor `xi` in its second row, so its inverse carries `1/xi` and the frame
//! is only evaluated for `xi > 0`.

use crate::error::{Error, Result};
use crate::geo::{cross, Vec2};
use crate::mesh::Section;
use nalgebra::Matrix2;

/// Linear boundary shape functions at a given eta.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryShapeEval {
    pub values: [f64; 2],
    pub derivatives: [f64; 2],
}

/// Linear radial shape functions at a given xi.
#[derive(Debug, Clone, Copy)]
pub struct RadialShapeEval {
    pub values: [f64; 2],
    pub derivatives: [f64; 2],
}

/// Geometry data of a section at one parametric point.
#[derive(Debug, Clone, Copy)]
pub struct SectionFrame {
    /// Boundary Jacobian, rows [(Xbar - X0)^T ; Xbar_eta^T].
    pub jbar: Matrix2<f64>,
    pub det_jbar: f64,
    /// Contravariant basis vectors paired with the covariant rows of `jbar`.
    pub g1_contra: Vec2,
    pub g2_contra: Vec2,
    pub xi: f64,
}

impl SectionFrame {
    /// Determinant of the full Jacobian, `xi * det_jbar`.
    pub fn det_j(&self) -> f64 {
        self.xi * self.det_jbar
    }

    /// Inverse of the full Jacobian, columns `[g1 | g2 / xi]`.
    pub fn j_inv(&self) -> Matrix2<f64> {
        Matrix2::new(
            self.g1_contra.x,
            self.g2_contra.x / self.xi,
            self.g1_contra.y,
            self.g2_contra.y / self.xi,
        )
    }
}

/// N1 = (1 - eta)/2, N2 = (1 + eta)/2.
pub fn eval_boundary_shapes(eta: f64) -> Result<BoundaryShapeEval> {
    if !(-1.0..=1.0).contains(&eta) {
        return Err(Error::InvalidArgument(format!("eta = {eta} outside [-1, 1]")));
    }
    Ok(BoundaryShapeEval {
        values: [0.5 * (1.0 - eta), 0.5 * (1.0 + eta)],
        derivatives: [-0.5, 0.5],
    })
}

/// N1 = xi, N2 = 1 - xi; the second function belongs to the scaling center.
pub fn eval_radial_shapes(xi: f64) -> Result<RadialShapeEval> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::InvalidArgument(format!("xi = {xi} outside [0, 1]")));
    }
    Ok(RadialShapeEval { values: [xi, 1.0 - xi], derivatives: [1.0, -1.0] })
}

/// Point on the boundary edge.
pub fn boundary_point(section: &Section, eta: f64) -> Vec2 {
    let n = eval_boundary_shapes(eta).expect("eta in range");
    n.values[0] * section.x1 + n.values[1] * section.x2
}

/// Physical location of a parametric point; xi = 0 collapses to the center.
pub fn map_to_physical(section: &Section, xi: f64, eta: f64) -> Vec2 {
    let xbar = boundary_point(section, eta);
    section.x0 + xi * (xbar - section.x0)
}

/// Evaluates the section frame at (xi, eta) with xi > 0.
pub fn eval_section_frame(section: &Section, xi: f64, eta: f64) -> Result<SectionFrame> {
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::InvalidArgument(format!("xi = {xi} outside (0, 1]")));
    }
    let xbar = boundary_point(section, eta);
    let g1 = xbar - section.x0;
    let g2 = 0.5 * (section.x2 - section.x1);
    let det = cross(g1, g2);
    if det <= 0.0 {
        return Err(Error::DegenerateFrame { det });
    }
    let jbar = Matrix2::new(g1.x, g1.y, g2.x, g2.y);
    Ok(SectionFrame {
        jbar,
        det_jbar: det,
        g1_contra: Vec2::new(g2.y, -g2.x) / det,
        g2_contra: Vec2::new(-g1.y, g1.x) / det,
        xi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reference_section() -> Section {
        Section::from_points(Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0))
    }

    fn random_section(rng: &mut ChaCha8Rng) -> Section {
        loop {
            let x0 = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let x1 = x0 + Vec2::new(rng.random_range(0.2..2.0), rng.random_range(-1.0..1.0));
            let x2 = x0 + Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(0.2..2.0));
            let s = Section::from_points(x0, x1, x2);
            if s.area() > 0.05 {
                return s;
            }
        }
    }

    #[test]
    fn boundary_shapes_partition_of_unity() {
        for eta in [-1.0, -0.3, 0.0, 0.7, 1.0] {
            let n = eval_boundary_shapes(eta).unwrap();
            assert!((n.values[0] + n.values[1] - 1.0).abs() < 1e-15);
            assert!((n.derivatives[0] + n.derivatives[1]).abs() < 1e-15);
        }
        let n = eval_boundary_shapes(-1.0).unwrap();
        assert_eq!(n.values, [1.0, 0.0]);
        let n = eval_boundary_shapes(0.0).unwrap();
        assert_eq!(n.values, [0.5, 0.5]);
        assert_eq!(n.derivatives, [-0.5, 0.5]);
        let n = eval_boundary_shapes(1.0).unwrap();
        assert_eq!(n.values, [0.0, 1.0]);
        assert!(eval_boundary_shapes(1.2).is_err());
    }

    #[test]
    fn radial_shapes_endpoints() {
        let n = eval_radial_shapes(0.0).unwrap();
        assert_eq!(n.values, [0.0, 1.0]);
        let n = eval_radial_shapes(1.0).unwrap();
        assert_eq!(n.values, [1.0, 0.0]);
    }

    #[test]
    fn frame_matches_hand_evaluation() {
        let s = reference_section();
        let f = eval_section_frame(&s, 0.5, 0.0).unwrap();
        let expect = Matrix2::new(0.5, 0.5, -0.5, 0.5);
        assert!((f.jbar - expect).norm() < 1e-15);
        assert!((f.det_jbar - 0.5).abs() < 1e-15);
        assert!((f.g1_contra - Vec2::new(1.0, 1.0)).norm() < 1e-15);
        assert!((f.g2_contra - Vec2::new(-1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn orthogonality_of_bases_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let s = random_section(&mut rng);
            let xi = rng.random_range(0.01..1.0);
            let eta = rng.random_range(-1.0..1.0);
            let f = eval_section_frame(&s, xi, eta).unwrap();
            let g1_cov = Vec2::new(f.jbar[(0, 0)], f.jbar[(0, 1)]);
            let g2_cov = Vec2::new(f.jbar[(1, 0)], f.jbar[(1, 1)]);
            assert!((g1_cov.dot(&f.g1_contra) - 1.0).abs() < 1e-12);
            assert!((g2_cov.dot(&f.g2_contra) - 1.0).abs() < 1e-12);
            assert!(g1_cov.dot(&f.g2_contra).abs() < 1e-12);
            assert!(g2_cov.dot(&f.g1_contra).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_times_jacobian_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let s = random_section(&mut rng);
            let xi = rng.random_range(0.01..1.0);
            let eta = rng.random_range(-1.0..1.0);
            let f = eval_section_frame(&s, xi, eta).unwrap();
            let j_full = Matrix2::new(1.0, 0.0, 0.0, xi) * f.jbar;
            assert!(((f.det_j()) - xi * f.det_jbar).abs() < 1e-15);
            let prod = f.j_inv() * j_full;
            assert!((prod - Matrix2::identity()).norm() < 1e-12, "J^-1 J != I");
        }
    }

    #[test]
    fn map_collapses_and_interpolates() {
        let s = reference_section();
        assert!((map_to_physical(&s, 0.0, 0.77) - s.x0).norm() < 1e-15);
        assert!((map_to_physical(&s, 1.0, -1.0) - s.x1).norm() < 1e-15);
        assert!((map_to_physical(&s, 0.5, 0.0) - Vec2::new(0.25, 0.25)).norm() < 1e-15);
    }

    #[test]
    fn covariant_rows_match_finite_differences_of_the_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = 1e-6;
        for _ in 0..10 {
            let s = random_section(&mut rng);
            let xi = rng.random_range(0.1..0.9);
            let eta = rng.random_range(-0.9..0.9);
            let f = eval_section_frame(&s, xi, eta).unwrap();
            let dxi =
                (map_to_physical(&s, xi + h, eta) - map_to_physical(&s, xi - h, eta)) / (2.0 * h);
            let deta =
                (map_to_physical(&s, xi, eta + h) - map_to_physical(&s, xi, eta - h)) / (2.0 * h);
            // full Jacobian rows: d X / d xi and d X / d eta
            let row1 = Vec2::new(f.jbar[(0, 0)], f.jbar[(0, 1)]);
            let row2 = xi * Vec2::new(f.jbar[(1, 0)], f.jbar[(1, 1)]);
            assert!((dxi - row1).norm() < 1e-6);
            assert!((deta - row2).norm() < 1e-6);
        }
    }

    #[test]
    fn rotation_rotates_contravariant_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let s = random_section(&mut rng);
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            let rot = |p: Vec2| crate::geo::rotate(p, theta);
            let sr = Section::from_points(rot(s.x0), rot(s.x1), rot(s.x2));
            let xi = rng.random_range(0.05..1.0);
            let eta = rng.random_range(-1.0..1.0);
            let f = eval_section_frame(&s, xi, eta).unwrap();
            let fr = eval_section_frame(&sr, xi, eta).unwrap();
            assert!((f.det_jbar - fr.det_jbar).abs() <= 1e-12 * f.det_jbar.abs());
            assert!((rot(f.g1_contra) - fr.g1_contra).norm() < 1e-12);
            assert!((rot(f.g2_contra) - fr.g2_contra).norm() < 1e-12);
        }
    }

    #[test]
    fn square_sections_share_det_jbar_by_symmetry() {
        let nodes = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ];
        let c = Vec2::new(0.5, 0.5);
        let mut dets = Vec::new();
        for i in 0..4 {
            let s = Section::from_points(c, nodes[i], nodes[(i + 1) % 4]);
            dets.push(eval_section_frame(&s, 0.5, 0.0).unwrap().det_jbar);
        }
        for d in &dets {
            assert!((d - dets[0]).abs() < 1e-15);
        }
    }

    #[test]
    fn degenerate_frame_is_rejected() {
        let s = Section::from_points(Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(2.0, 0.0));
        assert!(matches!(
            eval_section_frame(&s, 0.5, 0.0),
            Err(Error::DegenerateFrame { .. })
        ));
    }
}
