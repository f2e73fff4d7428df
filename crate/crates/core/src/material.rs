//! Constitutive matrices: resultant-form plate laws, 3D isotropic elasticity,
//! and pre-integrated thickness blocks for the two-field formulation.
//!
//! Voigt order for the 3D law is (s11, s22, s33, s12, s13, s23) with
//! engineering shear strains. The shear correction factor scales the
//! transverse-shear moduli, in the 2D law through `C_s` and in the 3D law
//! through the (s13, s23) diagonal entries before thickness integration; the
//! two routes then condense to identical plate matrices.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix6};
use serde::{Deserialize, Serialize};

/// Resultant-form plate material: membrane, bending, and shear matrices.
#[derive(Debug, Clone)]
pub struct PlateMaterial2D {
    pub e: f64,
    pub nu: f64,
    pub t: f64,
    pub k: f64,
    pub c_m: Matrix3<f64>,
    pub c_b: Matrix3<f64>,
    pub c_s: Matrix2<f64>,
}

impl PlateMaterial2D {
    /// Flexural rigidity `E t^3 / (12 (1 - nu^2))`.
    pub fn flexural_rigidity(&self) -> f64 {
        self.e * self.t.powi(3) / (12.0 * (1.0 - self.nu * self.nu))
    }
}

/// Isotropic 3D elasticity in Voigt form.
#[derive(Debug, Clone)]
pub struct Elasticity3D {
    pub lambda: f64,
    pub mu: f64,
    pub cc: Matrix6<f64>,
}

/// Through-thickness interpolation of the normal strain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThicknessMode {
    /// Constant plus linear term; avoids thickness locking for nu != 0.
    Linear,
    /// Constant term only.
    Constant,
}

impl ThicknessMode {
    pub fn n_params(self) -> usize {
        match self {
            ThicknessMode::Linear => 2,
            ThicknessMode::Constant => 1,
        }
    }
}

/// Thickness-integrated blocks of the two-field weak form.
///
/// The geometric strain vector is ordered (membrane e11, e22, g12, curvature
/// k1, k2, k3, shear gxz, gyz); `d11` couples it with itself, `d12` with the
/// thickness-strain parameters, `d22` the parameters with themselves.
#[derive(Debug, Clone)]
pub struct IntegratedThicknessBlocks {
    pub d11: DMatrix<f64>,
    pub d12: DMatrix<f64>,
    pub d22: DMatrix<f64>,
    pub mode: ThicknessMode,
}

impl IntegratedThicknessBlocks {
    /// Statically condenses the thickness parameters: `d11 - d12 d22^-1 d12^T`.
    pub fn condensed(&self) -> Result<DMatrix<f64>> {
        let chol = nalgebra::Cholesky::new(self.d22.clone())
            .ok_or_else(|| Error::Material("thickness block d22 is not positive definite".into()))?;
        let rhs = chol.solve(&self.d12.transpose());
        Ok(&self.d11 - &self.d12 * rhs)
    }
}

/// Constitutive route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaterialLaw {
    #[serde(rename = "plate2d")]
    Plate2D,
    #[serde(rename = "solid3d")]
    Solid3D,
}

/// Where the thickness-strain parameters of the 3D law live before they are
/// condensed away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThicknessCondensation {
    /// Condense the pre-integrated constitutive blocks pointwise; algebraically
    /// identical to the resultant-form plate law.
    #[default]
    QuadraturePoint,
    /// One parameter set per section, eliminated from the sectional stiffness.
    Section,
}

/// Material description as it appears in benchmark configs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Material {
    #[serde(rename = "E")]
    pub e: f64,
    pub nu: f64,
    pub t: f64,
    pub k: f64,
    pub law: MaterialLaw,
    #[serde(default = "linear_mode")]
    pub thickness_mode: ThicknessMode,
    #[serde(default)]
    pub thickness_condensation: ThicknessCondensation,
}

fn linear_mode() -> ThicknessMode {
    ThicknessMode::Linear
}

pub const SHEAR_CORRECTION: f64 = 5.0 / 6.0;

impl Material {
    pub fn plate2d(e: f64, nu: f64, t: f64) -> Self {
        Material {
            e,
            nu,
            t,
            k: SHEAR_CORRECTION,
            law: MaterialLaw::Plate2D,
            thickness_mode: ThicknessMode::Linear,
            thickness_condensation: ThicknessCondensation::default(),
        }
    }

    pub fn solid3d(e: f64, nu: f64, t: f64, mode: ThicknessMode) -> Self {
        Material {
            e,
            nu,
            t,
            k: SHEAR_CORRECTION,
            law: MaterialLaw::Solid3D,
            thickness_mode: mode,
            thickness_condensation: ThicknessCondensation::default(),
        }
    }

    /// Nodal DOF layout implied by the law: 3 plate DOFs, or 5 with membrane.
    pub fn layout(&self) -> crate::kinematics::DofLayout {
        match self.law {
            MaterialLaw::Plate2D => crate::kinematics::DofLayout::Plate,
            MaterialLaw::Solid3D => crate::kinematics::DofLayout::PlateMembrane,
        }
    }

    pub fn plate(&self) -> Result<PlateMaterial2D> {
        plate_constitutive_2d(self.e, self.nu, self.t, self.k)
    }

    pub fn elasticity(&self) -> Result<Elasticity3D> {
        elasticity_3d(self.e, self.nu)
    }

    pub fn blocks(&self) -> Result<IntegratedThicknessBlocks> {
        integrate_thickness_blocks(&self.elasticity()?, self.t, self.k, self.thickness_mode)
    }

    pub fn flexural_rigidity(&self) -> f64 {
        self.e * self.t.powi(3) / (12.0 * (1.0 - self.nu * self.nu))
    }
}

fn check_enu(e: f64, nu: f64) -> Result<()> {
    if !(e > 0.0) {
        return Err(Error::InvalidArgument(format!("E = {e} must be positive")));
    }
    if !(nu > -1.0 && nu < 0.5) {
        return Err(Error::InvalidArgument(format!("nu = {nu} outside (-1, 0.5)")));
    }
    Ok(())
}

/// Plate matrices from engineering constants; `k` is the shear correction.
pub fn plate_constitutive_2d(e: f64, nu: f64, t: f64, k: f64) -> Result<PlateMaterial2D> {
    check_enu(e, nu)?;
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("t = {t} must be positive")));
    }
    if !(k > 0.0) {
        return Err(Error::InvalidArgument(format!("k = {k} must be positive")));
    }
    let f = e * t / (1.0 - nu * nu);
    let c_m = f * Matrix3::new(1.0, nu, 0.0, nu, 1.0, 0.0, 0.0, 0.0, 0.5 * (1.0 - nu));
    let c_b = (t * t / 12.0) * c_m;
    let c_s = (e * t * k / (2.0 * (1.0 + nu))) * Matrix2::identity();
    Ok(PlateMaterial2D { e, nu, t, k, c_m, c_b, c_s })
}

/// 6x6 isotropic stiffness from the Lame constants.
pub fn elasticity_3d(e: f64, nu: f64) -> Result<Elasticity3D> {
    check_enu(e, nu)?;
    let lambda = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    let mu = e / (2.0 * (1.0 + nu));
    let mut cc = Matrix6::zeros();
    for i in 0..3 {
        for j in 0..3 {
            cc[(i, j)] = lambda;
        }
        cc[(i, i)] = lambda + 2.0 * mu;
        cc[(i + 3, i + 3)] = mu;
    }
    Ok(Elasticity3D { lambda, mu, cc })
}

/// Analytic integration of `A^T C A` over the thickness (-t/2, t/2).
///
/// The transformation splits into constant and zeta-linear parts, so only the
/// zeroth and second thickness moments survive.
pub fn integrate_thickness_blocks(
    cc: &Elasticity3D,
    t: f64,
    k: f64,
    mode: ThicknessMode,
) -> Result<IntegratedThicknessBlocks> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("t = {t} must be positive")));
    }
    let mut c = cc.cc;
    c[(4, 4)] *= k;
    c[(5, 5)] *= k;
    let c = DMatrix::from_fn(6, 6, |i, j| c[(i, j)]);

    // A1 = a10 + zeta a11 maps the geometric strains to 3D strains
    let mut a10 = DMatrix::zeros(6, 8);
    a10[(0, 0)] = 1.0;
    a10[(1, 1)] = 1.0;
    a10[(3, 2)] = 1.0;
    a10[(4, 6)] = 1.0;
    a10[(5, 7)] = 1.0;
    let mut a11 = DMatrix::zeros(6, 8);
    a11[(0, 3)] = 1.0;
    a11[(1, 4)] = 1.0;
    a11[(3, 5)] = 1.0;

    let m = mode.n_params();
    let mut a20 = DMatrix::zeros(6, m);
    a20[(2, 0)] = 1.0;
    let mut a21 = DMatrix::zeros(6, m);
    if mode == ThicknessMode::Linear {
        a21[(2, 1)] = 1.0;
    }

    let m0 = t;
    let m2 = t.powi(3) / 12.0;
    let d11 = m0 * a10.transpose() * &c * &a10 + m2 * a11.transpose() * &c * &a11;
    let d12 = m0 * a10.transpose() * &c * &a20 + m2 * a11.transpose() * &c * &a21;
    let d22 = m0 * a20.transpose() * &c * &a20 + m2 * a21.transpose() * &c * &a21;
    Ok(IntegratedThicknessBlocks { d11, d12, d22, mode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SHEAR_K: f64 = 5.0 / 6.0;

    #[test]
    fn flexural_rigidity_reference_values() {
        let m = plate_constitutive_2d(10.92e6, 0.3, 0.01, SHEAR_K).unwrap();
        assert!((m.flexural_rigidity() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_poisson_decouples_membrane() {
        let (e, t) = (3.0e4, 0.2);
        let m = plate_constitutive_2d(e, 0.0, t, SHEAR_K).unwrap();
        assert!((m.c_m[(0, 0)] - e * t).abs() < 1e-9);
        assert_eq!(m.c_m[(0, 1)], 0.0);
        assert!((m.c_m[(2, 2)] - e * t / 2.0).abs() < 1e-9);
    }

    #[test]
    fn bending_is_scaled_membrane() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let e = rng.random_range(1.0..1e8);
            let nu = rng.random_range(-0.9..0.49);
            let t = rng.random_range(1e-4..2.0);
            let m = plate_constitutive_2d(e, nu, t, SHEAR_K).unwrap();
            let expect = (t * t / 12.0) * m.c_m;
            assert!((m.c_b - expect).norm() <= 1e-14 * expect.norm());
        }
    }

    #[test]
    fn invalid_poisson_is_rejected() {
        assert!(plate_constitutive_2d(1.0, 0.5, 0.1, SHEAR_K).is_err());
        assert!(plate_constitutive_2d(1.0, -1.0, 0.1, SHEAR_K).is_err());
        assert!(elasticity_3d(1.0, 0.5).is_err());
    }

    #[test]
    fn lame_constants_and_structure() {
        let c = elasticity_3d(1.0, 0.25).unwrap();
        assert!((c.lambda - 0.4).abs() < 1e-12);
        assert!((c.mu - 0.4).abs() < 1e-12);

        let c0 = elasticity_3d(2.0, 0.0).unwrap();
        assert_eq!(c0.lambda, 0.0);
        for i in 0..3 {
            assert!((c0.cc[(i, i)] - 2.0 * c0.mu).abs() < 1e-12);
            assert!((c0.cc[(i + 3, i + 3)] - c0.mu).abs() < 1e-12);
        }
        assert!((c0.mu - 1.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let c = elasticity_3d(rng.random_range(0.1..1e9), rng.random_range(-0.9..0.49))
                .unwrap();
            assert!((c.cc - c.cc.transpose()).norm() == 0.0);
        }
    }

    #[test]
    fn zero_poisson_kills_thickness_coupling() {
        let c = elasticity_3d(5.0e3, 0.0).unwrap();
        let blocks = integrate_thickness_blocks(&c, 0.5, SHEAR_K, ThicknessMode::Linear).unwrap();
        assert!(blocks.d12.norm() == 0.0);
    }

    #[test]
    fn odd_moments_vanish_in_d11() {
        let c = elasticity_3d(2.0e5, 0.31).unwrap();
        let blocks = integrate_thickness_blocks(&c, 0.7, SHEAR_K, ThicknessMode::Linear).unwrap();
        // membrane rows (0..3) never couple to curvature rows (3..6)
        for i in 0..3 {
            for j in 3..6 {
                assert_eq!(blocks.d11[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn d22_closed_form() {
        let c = elasticity_3d(1.0e4, 0.3).unwrap();
        let t = 1.0;
        let blocks = integrate_thickness_blocks(&c, t, SHEAR_K, ThicknessMode::Linear).unwrap();
        let lp2m = c.lambda + 2.0 * c.mu;
        assert!((blocks.d22[(0, 0)] - lp2m * t).abs() < 1e-9);
        assert!((blocks.d22[(1, 1)] - lp2m * t.powi(3) / 12.0).abs() < 1e-9);
        assert!(blocks.d22[(0, 1)].abs() < 1e-12);
    }

    /// Condensing the thickness strains out of the linear-mode blocks must
    /// reproduce the resultant-form plate matrices exactly.
    #[test]
    fn plane_stress_recovery() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let e = rng.random_range(1.0..1e7);
            let nu = rng.random_range(-0.5..0.49);
            let t = rng.random_range(0.01..2.0);
            let plate = plate_constitutive_2d(e, nu, t, SHEAR_K).unwrap();
            let solid = elasticity_3d(e, nu).unwrap();
            let blocks =
                integrate_thickness_blocks(&solid, t, SHEAR_K, ThicknessMode::Linear).unwrap();
            let cond = blocks.condensed().unwrap();
            let scale = cond.norm();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((cond[(i, j)] - plate.c_m[(i, j)]).abs() <= 1e-10 * scale);
                    assert!((cond[(3 + i, 3 + j)] - plate.c_b[(i, j)]).abs() <= 1e-10 * scale);
                }
            }
            for i in 0..2 {
                for j in 0..2 {
                    assert!((cond[(6 + i, 6 + j)] - plate.c_s[(i, j)]).abs() <= 1e-10 * scale);
                }
            }
            // no stray coupling
            for i in 0..3 {
                for j in 3..8 {
                    assert!(cond[(i, j)].abs() <= 1e-10 * scale);
                }
            }
        }
    }

    #[test]
    fn material_config_schema() {
        let json = r#"{"E":10920000.0,"nu":0.3,"t":0.01,"k":0.8333333333333334,"law":"plate2d","thickness_mode":"linear"}"#;
        let m: Material = serde_json::from_str(json).unwrap();
        assert_eq!(m.e, 10.92e6);
        assert_eq!(m.law, MaterialLaw::Plate2D);
        assert_eq!(m.thickness_mode, ThicknessMode::Linear);
        let back = serde_json::to_value(&m).unwrap();
        assert_eq!(back["E"], 10920000.0);
        assert_eq!(back["law"], "plate2d");

        let solid = r#"{"E":1.0,"nu":0.0,"t":1.0,"k":0.8333333333333334,"law":"solid3d","thickness_mode":"constant"}"#;
        let m: Material = serde_json::from_str(solid).unwrap();
        assert_eq!(m.law, MaterialLaw::Solid3D);
        assert_eq!(m.thickness_mode, ThicknessMode::Constant);
    }

    #[test]
    fn constant_mode_matches_linear_at_zero_poisson() {
        let c = elasticity_3d(7.7e4, 0.0).unwrap();
        let lin = integrate_thickness_blocks(&c, 0.3, SHEAR_K, ThicknessMode::Linear)
            .unwrap()
            .condensed()
            .unwrap();
        let con = integrate_thickness_blocks(&c, 0.3, SHEAR_K, ThicknessMode::Constant)
            .unwrap()
            .condensed()
            .unwrap();
        assert!((lin - con).norm() < 1e-12);
    }
}
