//! Strain-displacement operators on a section.
//!
//! Plate kinematics in this crate follow the rotation convention
//! `gamma = (w_x + bx, w_y - by)` and
//! `kappa = (bx_x, -by_y, bx_y - by_x)`; the in-plane rotation pair `(bx, by)`
//! therefore enters vector transformations as `(bx, -by)` (see
//! [`rotation_vector`]). Membrane strains use the plain engineering form.
//!
//! Every operator is assembled over the section DOF vector ordered
//! (node 1 block, node 2 block, scaling-center block). The radial shape of the
//! two boundary nodes is `xi`, of the center `1 - xi`; combined with the
//! boundary functions this gives the section shapes
//! `N1 = xi (1-eta)/2`, `N2 = xi (1+eta)/2`, `N0 = 1 - xi`.
//!
//! Operators split as `B = (.)_1 + (1/xi) (.)_2 [+ S_3]`. The center columns
//! of each `(.)_2` part vanish identically (the boundary shape derivatives sum
//! to zero on the stacked center block), so the `1/xi` terms stay bounded for
//! xi -> 0 even though the frame inverse itself is singular there.

use crate::error::Result;
use crate::geo::Vec2;
use crate::mesh::Section;
use crate::sbfem::{eval_section_frame, SectionFrame};
use nalgebra::DMatrix;

/// Per-node DOF block layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DofLayout {
    /// (w, bx, by)
    Plate,
    /// (ux, uy, w, bx, by)
    PlateMembrane,
}

impl DofLayout {
    pub fn ndof(self) -> usize {
        match self {
            DofLayout::Plate => 3,
            DofLayout::PlateMembrane => 5,
        }
    }

    /// Section-local operator width: two boundary nodes plus the center.
    pub fn width(self) -> usize {
        3 * self.ndof()
    }

    pub fn w(self) -> usize {
        match self {
            DofLayout::Plate => 0,
            DofLayout::PlateMembrane => 2,
        }
    }

    pub fn bx(self) -> usize {
        self.w() + 1
    }

    pub fn by(self) -> usize {
        self.w() + 2
    }
}

/// The rotation pair as a plane vector, for frame transformations.
#[inline]
pub fn rotation_vector(bx: f64, by: f64) -> Vec2 {
    Vec2::new(bx, -by)
}

/// Parametric tying point locations.
#[derive(Debug, Clone, Copy)]
pub struct TyingPointSet {
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub c: (f64, f64),
}

pub const TYING_POINTS: TyingPointSet =
    TyingPointSet { a: (1.0, 0.0), b: (0.5, 1.0), c: (0.5, -1.0) };

/// Raw split parts of the standard operators, stored without the 1/xi factor.
#[derive(Debug, Clone)]
pub struct OperatorParts {
    pub m1: Option<DMatrix<f64>>,
    pub m2: Option<DMatrix<f64>>,
    pub b1: DMatrix<f64>,
    pub b2: DMatrix<f64>,
    pub s1: DMatrix<f64>,
    pub s2: DMatrix<f64>,
    pub s3: DMatrix<f64>,
}

/// Evaluated strain operators at one parametric point.
#[derive(Debug, Clone)]
pub struct StrainOperatorSet {
    /// 3 x width membrane operator; present for the membrane layout.
    pub b_m: Option<DMatrix<f64>>,
    /// 3 x width curvature operator.
    pub b_b: DMatrix<f64>,
    /// 2 x width transverse shear operator.
    pub b_s: DMatrix<f64>,
    pub layout: DofLayout,
    pub parts: OperatorParts,
}

/// Section shape functions in node-block order (node1, node2, center).
#[inline]
pub fn shape_values(xi: f64, eta: f64) -> [f64; 3] {
    [0.5 * xi * (1.0 - eta), 0.5 * xi * (1.0 + eta), 1.0 - xi]
}

#[inline]
fn shape_xi(eta: f64) -> [f64; 3] {
    [0.5 * (1.0 - eta), 0.5 * (1.0 + eta), -1.0]
}

#[inline]
fn shape_eta(xi: f64) -> [f64; 3] {
    [-0.5 * xi, 0.5 * xi, 0.0]
}

fn fill_bending(out: &mut DMatrix<f64>, g: Vec2, row_scale: &[f64; 3], layout: DofLayout) {
    let nd = layout.ndof();
    for k in 0..3 {
        let base = k * nd;
        out[(0, base + layout.bx())] += g.x * row_scale[k];
        out[(1, base + layout.by())] += -g.y * row_scale[k];
        out[(2, base + layout.bx())] += g.y * row_scale[k];
        out[(2, base + layout.by())] += -g.x * row_scale[k];
    }
}

fn fill_shear_d(out: &mut DMatrix<f64>, g: Vec2, row_scale: &[f64; 3], layout: DofLayout) {
    let nd = layout.ndof();
    for k in 0..3 {
        let base = k * nd;
        out[(0, base + layout.w())] += g.x * row_scale[k];
        out[(1, base + layout.w())] += g.y * row_scale[k];
    }
}

fn fill_membrane(out: &mut DMatrix<f64>, g: Vec2, row_scale: &[f64; 3], layout: DofLayout) {
    let nd = layout.ndof();
    for k in 0..3 {
        let base = k * nd;
        out[(0, base)] += g.x * row_scale[k];
        out[(1, base + 1)] += g.y * row_scale[k];
        out[(2, base)] += g.y * row_scale[k];
        out[(2, base + 1)] += g.x * row_scale[k];
    }
}

/// Standard operators `B_m`, `B_b`, `B_s` at (xi, eta) with xi > 0.
pub fn eval_standard_operators(
    section: &Section,
    xi: f64,
    eta: f64,
    layout: DofLayout,
) -> Result<StrainOperatorSet> {
    let frame = eval_section_frame(section, xi, eta)?;
    Ok(eval_standard_with_frame(&frame, xi, eta, layout))
}

pub(crate) fn eval_standard_with_frame(
    frame: &SectionFrame,
    xi: f64,
    eta: f64,
    layout: DofLayout,
) -> StrainOperatorSet {
    let w = layout.width();
    let g1 = frame.g1_contra;
    let g2 = frame.g2_contra;
    let vals = shape_values(xi, eta);
    let dxi = shape_xi(eta);
    let deta = shape_eta(xi);

    let mut b1 = DMatrix::zeros(3, w);
    let mut b2 = DMatrix::zeros(3, w);
    fill_bending(&mut b1, g1, &dxi, layout);
    fill_bending(&mut b2, g2, &deta, layout);

    let mut s1 = DMatrix::zeros(2, w);
    let mut s2 = DMatrix::zeros(2, w);
    fill_shear_d(&mut s1, g1, &dxi, layout);
    fill_shear_d(&mut s2, g2, &deta, layout);
    let mut s3 = DMatrix::zeros(2, w);
    {
        let nd = layout.ndof();
        for k in 0..3 {
            let base = k * nd;
            s3[(0, base + layout.bx())] = vals[k];
            s3[(1, base + layout.by())] = -vals[k];
        }
    }

    let (m1, m2, b_m) = if layout == DofLayout::PlateMembrane {
        let mut m1 = DMatrix::zeros(3, w);
        let mut m2 = DMatrix::zeros(3, w);
        fill_membrane(&mut m1, g1, &dxi, layout);
        fill_membrane(&mut m2, g2, &deta, layout);
        let b_m = &m1 + &m2 / xi;
        (Some(m1), Some(m2), Some(b_m))
    } else {
        (None, None, None)
    };

    let b_b = &b1 + &b2 / xi;
    let b_s = &s1 + &s2 / xi + &s3;
    StrainOperatorSet {
        b_m,
        b_b,
        b_s,
        layout,
        parts: OperatorParts { m1, m2, b1, b2, s1, s2, s3 },
    }
}

/// Assumed-natural-strain shear operator at (xi, eta) with xi in [0, 1].
///
/// The covariant shear strains are sampled at the tying points - the edge
/// midpoint for the eta-direction and the two node-center midpoints for the
/// xi-direction - blended linearly, and pushed to physical components with the
/// frame inverse. The 1/xi of the inverse cancels against the xi-proportional
/// eta-row, so the operator stays defined on the whole section.
pub fn eval_ans_shear_operator(
    section: &Section,
    xi: f64,
    eta: f64,
    layout: DofLayout,
) -> Result<DMatrix<f64>> {
    // the contravariant vectors do not depend on xi; evaluate the frame away
    // from the xi = 0 singularity
    let frame = eval_section_frame(section, xi.max(0.5), eta)?;
    Ok(eval_ans_with_frame(section, &frame, xi, eta, layout))
}

pub(crate) fn eval_ans_with_frame(
    section: &Section,
    frame: &SectionFrame,
    xi: f64,
    eta: f64,
    layout: DofLayout,
) -> DMatrix<f64> {
    let w = layout.width();
    let nd = layout.ndof();
    let (x0, x1, x2) = (section.x0, section.x1, section.x2);

    // covariant xi-row: (1+eta)/2 times the node2-center tying strain plus
    // (1-eta)/2 times the node1-center tying strain
    let half_p = 0.5 * (1.0 + eta);
    let half_m = 0.5 * (1.0 - eta);
    let mut r1 = vec![0.0; w];
    // node 1 block
    r1[layout.w()] = half_m;
    r1[layout.bx()] = 0.5 * half_m * (x1.x - x0.x);
    r1[layout.by()] = -0.5 * half_m * (x1.y - x0.y);
    // node 2 block
    r1[nd + layout.w()] = half_p;
    r1[nd + layout.bx()] = 0.5 * half_p * (x2.x - x0.x);
    r1[nd + layout.by()] = -0.5 * half_p * (x2.y - x0.y);
    // center block
    r1[2 * nd + layout.w()] = -1.0;
    r1[2 * nd + layout.bx()] = 0.25 * ((1.0 + eta) * (x2.x - x0.x) + (1.0 - eta) * (x1.x - x0.x));
    r1[2 * nd + layout.by()] = -0.25 * ((1.0 + eta) * (x2.y - x0.y) + (1.0 - eta) * (x1.y - x0.y));

    // covariant eta-row, already divided by xi: the edge-midpoint tying strain
    let mut r2 = vec![0.0; w];
    r2[layout.w()] = -0.5;
    r2[layout.bx()] = 0.25 * (x2.x - x1.x);
    r2[layout.by()] = -0.25 * (x2.y - x1.y);
    r2[nd + layout.w()] = 0.5;
    r2[nd + layout.bx()] = 0.25 * (x2.x - x1.x);
    r2[nd + layout.by()] = -0.25 * (x2.y - x1.y);

    let _ = xi; // the xi of the eta-row cancels against the frame inverse

    let g1 = frame.g1_contra;
    let g2 = frame.g2_contra;
    let mut out = DMatrix::zeros(2, w);
    for j in 0..w {
        out[(0, j)] = g1.x * r1[j] + g2.x * r2[j];
        out[(1, j)] = g1.y * r1[j] + g2.y * r2[j];
    }
    out
}

/// Stacks membrane, bending, and shear rows into the 8 x width operator of the
/// two-field 3D path. `shear` may be the standard or the assumed-strain rows.
pub fn stacked_operator(
    b_m: &DMatrix<f64>,
    b_b: &DMatrix<f64>,
    shear: &DMatrix<f64>,
) -> DMatrix<f64> {
    let w = b_m.ncols();
    let mut out = DMatrix::zeros(8, w);
    out.view_mut((0, 0), (3, w)).copy_from(b_m);
    out.view_mut((3, 0), (3, w)).copy_from(b_b);
    out.view_mut((6, 0), (2, w)).copy_from(shear);
    out
}
