//! Post-processing and verification: eigenvalue stability test, error norms,
//! stress-resultant recovery, and convergence-rate fitting.

pub mod exact;

pub use exact::{square_load_function, ExactSolution, PlatePoint};

use crate::assembly::{element_stiffness_matrix, FieldResult, Formulation};
use crate::error::{Error, Result};
use crate::geo::Vec2;
use crate::kinematics::{
    eval_ans_with_frame, eval_standard_with_frame, shape_values, DofLayout,
};
use crate::material::Material;
use crate::mesh::{decompose_into_sections, PolyMesh, Section};
use crate::quadrature::{three_by_three, QuadratureScheme};
use crate::sbfem::eval_section_frame;
use nalgebra::{DMatrix, DVector, Vector2, Vector3};

/// Eigenvalue spectrum of an element stiffness matrix.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EigenReport {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Count with |lambda| <= tol_rel * lambda_max.
    pub zero_count: usize,
    pub tol_rel: f64,
}

/// Relative error norms of a solved field against an exact solution.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct NormReport {
    pub l2_rel: f64,
    pub h1s_rel: f64,
    pub energy_rel: f64,
    /// Mesh size 1/sqrt(n_elements).
    pub h: f64,
}

/// Least-squares power-law fit in log-log space.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Regular n-gon with the given circumradius as a single-element mesh.
pub fn regular_polygon_mesh(n_sides: usize, circumradius: f64) -> PolyMesh {
    let nodes: Vec<Vec2> = (0..n_sides)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / n_sides as f64;
            Vec2::new(circumradius * a.cos(), circumradius * a.sin())
        })
        .collect();
    PolyMesh::new(nodes, vec![(0..n_sides).collect()])
}

/// Spectrum of a free-free element with the scaling center condensed out.
pub fn zero_energy_mode_test(
    mesh: &PolyMesh,
    element: usize,
    material: &Material,
    formulation: Formulation,
) -> Result<EigenReport> {
    let k = element_stiffness_matrix(
        mesh,
        element,
        material,
        QuadratureScheme::Full,
        formulation,
        true,
    )?;
    Ok(eigen_report(&k, 1e-8))
}

/// Sorted spectrum with a relative zero threshold.
pub fn eigen_report(k: &DMatrix<f64>, tol_rel: f64) -> EigenReport {
    let sym = 0.5 * (k + k.transpose());
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let lambda_max = eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    let zero_count = eigenvalues.iter().filter(|&&l| l.abs() <= tol_rel * lambda_max).count();
    EigenReport { eigenvalues, zero_count, tol_rel }
}

/// Local section dof vector (w, bx, by blocks) from a solved field.
fn section_plate_vector(result: &FieldResult, s: &Section) -> DVector<f64> {
    let map = result.dof_map;
    let l = map.layout;
    let mut d = DVector::zeros(9);
    for (k, &node) in s.nodes.iter().enumerate() {
        d[3 * k] = result.node_value(node, l.w());
        d[3 * k + 1] = result.node_value(node, l.bx());
        d[3 * k + 2] = result.node_value(node, l.by());
    }
    d[6] = result.d[map.center_dof(s.element, l.w())];
    d[7] = result.d[map.center_dof(s.element, l.bx())];
    d[8] = result.d[map.center_dof(s.element, l.by())];
    d
}

/// Relative L2, H1 semi-norm, and energy norm of the plate error.
///
/// Integration runs on a 3x3 rule per section, one order above the stiffness
/// quadrature.
pub fn error_norms(
    result: &FieldResult,
    exact: &ExactSolution,
    mesh: &PolyMesh,
    material: &Material,
    formulation: Formulation,
) -> Result<NormReport> {
    let plate = material.plate()?;
    let mut num_l2 = 0.0;
    let mut den_l2 = 0.0;
    let mut num_h1 = 0.0;
    let mut den_h1 = 0.0;
    let mut num_en = 0.0;
    let mut den_en = 0.0;
    let rule = three_by_three();
    for e in 0..mesh.elements.len() {
        for s in decompose_into_sections(mesh, e)? {
            let d = section_plate_vector(result, &s);
            for q in &rule {
                let frame = eval_section_frame(&s, q.xi, q.eta)?;
                let ops = eval_standard_with_frame(&frame, q.xi, q.eta, DofLayout::Plate);
                let x = crate::sbfem::map_to_physical(&s, q.xi, q.eta);
                let ex = exact.eval(x);
                let scale = q.weight * frame.det_j();

                // values
                let n = shape_values(q.xi, q.eta);
                let vh: Vec<f64> = (0..3)
                    .map(|c| n[0] * d[c] + n[1] * d[3 + c] + n[2] * d[6 + c])
                    .collect();
                let v = [ex.w, ex.bx, ex.by];
                for c in 0..3 {
                    num_l2 += scale * (v[c] - vh[c]).powi(2);
                    den_l2 += scale * v[c].powi(2);
                }

                // first derivatives via the parametric gradients
                let jinv = frame.j_inv();
                let dxi = [0.5 * (1.0 - q.eta), 0.5 * (1.0 + q.eta), -1.0];
                let deta = [-0.5 * q.xi, 0.5 * q.xi, 0.0];
                let mut vh_grad = [[0.0; 2]; 3];
                for c in 0..3 {
                    let f_xi = dxi[0] * d[c] + dxi[1] * d[3 + c] + dxi[2] * d[6 + c];
                    let f_eta = deta[0] * d[c] + deta[1] * d[3 + c] + deta[2] * d[6 + c];
                    vh_grad[c][0] = jinv[(0, 0)] * f_xi + jinv[(0, 1)] * f_eta;
                    vh_grad[c][1] = jinv[(1, 0)] * f_xi + jinv[(1, 1)] * f_eta;
                }
                let v_grad = [[ex.w_x, ex.w_y], [ex.bx_x, ex.bx_y], [ex.by_x, ex.by_y]];
                for c in 0..3 {
                    for g in 0..2 {
                        num_h1 += scale * (v_grad[c][g] - vh_grad[c][g]).powi(2);
                        den_h1 += scale * v_grad[c][g].powi(2);
                    }
                }

                // energy pairing of strain and stress-resultant errors
                let kappa_h = &ops.b_b * &d;
                let gamma_h = match formulation {
                    Formulation::Standard => &ops.b_s * &d,
                    Formulation::Ans => {
                        &eval_ans_with_frame(&s, &frame, q.xi, q.eta, DofLayout::Plate) * &d
                    }
                };
                let k_ex = Vector3::from_row_slice(&ex.kappa());
                let g_ex = Vector2::from_row_slice(&ex.gamma());
                let dk = k_ex - Vector3::new(kappa_h[0], kappa_h[1], kappa_h[2]);
                let dg = g_ex - Vector2::new(gamma_h[0], gamma_h[1]);
                num_en += scale * ((plate.c_b * dk).dot(&dk) + (plate.c_s * dg).dot(&dg));
                den_en +=
                    scale * ((plate.c_b * k_ex).dot(&k_ex) + (plate.c_s * g_ex).dot(&g_ex));
            }
        }
    }
    Ok(NormReport {
        l2_rel: (num_l2 / den_l2).sqrt(),
        h1s_rel: (num_h1 / den_h1).sqrt(),
        energy_rel: (num_en / den_en).sqrt(),
        h: 1.0 / (mesh.elements.len() as f64).sqrt(),
    })
}

/// Stress resultants (bending moments and shear forces) at one point.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct StressResultants {
    pub m: [f64; 3],
    pub q: [f64; 2],
}

fn section_stress_at(
    s: &Section,
    result: &FieldResult,
    plate: &crate::material::PlateMaterial2D,
    formulation: Formulation,
    xi: f64,
    eta: f64,
) -> Result<StressResultants> {
    let d = section_plate_vector(result, s);
    let xi_safe = xi.max(1e-6);
    let frame = eval_section_frame(s, xi_safe, eta)?;
    let ops = eval_standard_with_frame(&frame, xi_safe, eta, DofLayout::Plate);
    let kappa = &ops.b_b * &d;
    let gamma = match formulation {
        Formulation::Standard => &ops.b_s * &d,
        Formulation::Ans => &eval_ans_with_frame(s, &frame, xi, eta, DofLayout::Plate) * &d,
    };
    let m = plate.c_b * Vector3::new(kappa[0], kappa[1], kappa[2]);
    let q = plate.c_s * Vector2::new(gamma[0], gamma[1]);
    Ok(StressResultants { m: [m[0], m[1], m[2]], q: [q[0], q[1]] })
}

/// Resultants at an arbitrary point, evaluated in the containing section
/// without smoothing.
pub fn stress_at_point(
    mesh: &PolyMesh,
    result: &FieldResult,
    material: &Material,
    formulation: Formulation,
    p: Vec2,
) -> Result<StressResultants> {
    let plate = material.plate()?;
    // probes often sit exactly on polygonized hole rims; snap when needed
    let (e, si, xi, eta) = crate::assembly::system::locate_nearest(mesh, p)?;
    let sections = decompose_into_sections(mesh, e)?;
    section_stress_at(&sections[si], result, &plate, formulation, xi, eta)
}

/// Nodal resultants by unweighted averaging over the adjacent sections.
pub fn nodal_stresses(
    mesh: &PolyMesh,
    result: &FieldResult,
    material: &Material,
    formulation: Formulation,
) -> Result<Vec<StressResultants>> {
    let plate = material.plate()?;
    let mut acc = vec![(Vector3::zeros(), Vector2::zeros(), 0usize); mesh.nodes.len()];
    for e in 0..mesh.elements.len() {
        for s in decompose_into_sections(mesh, e)? {
            for (k, &node) in s.nodes.iter().enumerate() {
                let eta = if k == 0 { -1.0 } else { 1.0 };
                let sr = section_stress_at(&s, result, &plate, formulation, 1.0, eta)?;
                acc[node].0 += Vector3::from_row_slice(&sr.m);
                acc[node].1 += Vector2::from_row_slice(&sr.q);
                acc[node].2 += 1;
            }
        }
    }
    Ok(acc
        .into_iter()
        .map(|(m, q, c)| {
            let c = c.max(1) as f64;
            StressResultants { m: [m[0] / c, m[1] / c, m[2] / c], q: [q[0] / c, q[1] / c] }
        })
        .collect())
}

/// One resultant set per element: area-weighted average over the sections.
pub fn cell_stresses(
    mesh: &PolyMesh,
    result: &FieldResult,
    material: &Material,
    formulation: Formulation,
) -> Result<Vec<StressResultants>> {
    let plate = material.plate()?;
    let mut out = Vec::with_capacity(mesh.elements.len());
    for e in 0..mesh.elements.len() {
        let mut m = Vector3::zeros();
        let mut q = Vector2::zeros();
        let mut area = 0.0;
        for s in decompose_into_sections(mesh, e)? {
            let sr = section_stress_at(&s, result, &plate, formulation, 2.0 / 3.0, 0.0)?;
            let a = s.area();
            m += a * Vector3::from_row_slice(&sr.m);
            q += a * Vector2::from_row_slice(&sr.q);
            area += a;
        }
        out.push(StressResultants {
            m: [m[0] / area, m[1] / area, m[2] / area],
            q: [q[0] / area, q[1] / area],
        });
    }
    Ok(out)
}

/// Least-squares slope of log(error) against log(h).
pub fn fit_convergence_rate(points: &[(f64, f64)]) -> Result<RateFit> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument("rate fit needs at least 3 points".into()));
    }
    if points.iter().any(|&(h, e)| h <= 0.0 || e <= 0.0) {
        return Err(Error::InvalidArgument("rate fit needs positive h and errors".into()));
    }
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(h, e) in points {
        let x = h.ln();
        let y = e.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let ss_tot = syy - sy * sy / n;
    let ss_res: f64 = points
        .iter()
        .map(|&(h, e)| {
            let r = e.ln() - (slope * h.ln() + intercept);
            r * r
        })
        .sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(RateFit { slope, intercept, r_squared })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{
        assemble_global, solve, AssemblyOptions, BcComponent, BcSpec, EdgeSelector, LoadSpec,
        NodeSelector,
    };
    use crate::assembly::system::Axis;
    use crate::material::ThicknessMode;
    use crate::mesh::{generate_structured_mesh, DomainSpec, StructuredShape};

    #[test]
    fn rate_fit_recovers_exact_power_laws() {
        let quad: Vec<(f64, f64)> =
            [0.5, 0.25, 0.125, 0.0625].iter().map(|&h| (h, h * h)).collect();
        let fit = fit_convergence_rate(&quad).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-10);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);

        let lin: Vec<(f64, f64)> = [0.5, 0.25, 0.125].iter().map(|&h| (h, 3.0 * h)).collect();
        let fit = fit_convergence_rate(&lin).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-10);
        assert!((fit.intercept - 3.0f64.ln()).abs() < 1e-10);

        assert!(fit_convergence_rate(&[(0.5, 1.0), (0.25, 0.5)]).is_err());
        assert!(fit_convergence_rate(&[(0.5, 1.0), (0.25, 0.5), (0.1, -0.1)]).is_err());
    }

    #[test]
    fn regular_polygons_have_three_rigid_modes() {
        let mat = Material::plate2d(1e5, 0.25, 0.01);
        for n in 3..=8 {
            let mesh = regular_polygon_mesh(n, 1.0);
            let report = zero_energy_mode_test(&mesh, 0, &mat, Formulation::Ans).unwrap();
            assert_eq!(report.zero_count, 3, "{n}-gon spectrum: {:?}", report.eigenvalues);
            assert_eq!(report.eigenvalues.len(), 3 * n);
        }
    }

    #[test]
    fn solid3d_element_also_free_of_spurious_modes() {
        let mat = Material::solid3d(1e5, 0.25, 0.01, ThicknessMode::Linear);
        let mesh = regular_polygon_mesh(5, 1.0);
        let report = zero_energy_mode_test(&mesh, 0, &mat, Formulation::Ans).unwrap();
        // 3 plate rigid modes plus 3 membrane rigid modes
        assert_eq!(report.zero_count, 6, "{:?}", report.eigenvalues);
    }

    #[test]
    fn one_element_tip_moment_energy_norm_vanishes() {
        // the constant-moment state is representable: strains are exact
        let mesh = generate_structured_mesh(
            &DomainSpec::rectangle(0.0, 0.0, 2.0, 1.0),
            1,
            1,
            StructuredShape::Quad,
        )
        .unwrap();
        let (e, t) = (1e5, 0.1f64);
        let i = t.powi(3) / 12.0;
        let mat = Material::plate2d(e, 0.0, t);
        let bcs = vec![BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::X, value: 0.0 },
            components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
            value: 0.0,
        }];
        let loads = vec![LoadSpec::MomentLineLoad { edge: EdgeSelector::x(2.0), m: 1.0 }];
        let system =
            assemble_global(&mesh, &mat, &loads, &bcs, &AssemblyOptions::default()).unwrap();
        let result = solve(&system).unwrap();
        let exact = ExactSolution::CantileverMoment { m: 1.0, l: 2.0, e, i };
        let norms = error_norms(&result, &exact, &mesh, &mat, Formulation::Ans).unwrap();
        assert!(norms.energy_rel < 1e-9, "energy norm {}", norms.energy_rel);
        // rotations are exact; w carries the radial interpolation error of a
        // quadratic on one element, so the H1 value is finite but not small
        assert!(norms.h1s_rel < 0.6, "h1s {}", norms.h1s_rel);
        // recovered moment is the applied moment, shear vanishes
        let sr = stress_at_point(
            &mesh,
            &result,
            &mat,
            Formulation::Ans,
            Vec2::new(0.77, 0.31),
        )
        .unwrap();
        assert!((sr.m[0] - 1.0).abs() < 1e-8, "m_xx = {}", sr.m[0]);
        assert!(sr.q[0].abs() < 1e-8 && sr.q[1].abs() < 1e-8);
    }

    #[test]
    fn rigid_body_solution_has_zero_resultants() {
        let mesh = generate_structured_mesh(
            &DomainSpec::rectangle(0.0, 0.0, 2.0, 1.0),
            2,
            1,
            StructuredShape::Quad,
        )
        .unwrap();
        let mat = Material::plate2d(1e5, 0.0, 0.1);
        // prescribe a uniform transverse translation on every node
        let bcs = vec![BcSpec {
            nodes: NodeSelector::Boundary,
            components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
            value: 0.0,
        }];
        let mut system =
            assemble_global(&mesh, &mat, &[], &bcs, &AssemblyOptions::default()).unwrap();
        // overwrite prescribed values: w = 2 everywhere, rotations zero
        for node in 0..mesh.nodes.len() {
            let dof = system.dof_map.node_dof(node, 0);
            system.prescribed[dof] = 2.0;
        }
        let mut result = solve(&system).unwrap();
        // centers follow the translation in the solved system; set directly
        for e in 0..mesh.elements.len() {
            let dof = result.dof_map.center_dof(e, 0);
            result.d[dof] = 2.0;
        }
        let stresses = cell_stresses(&mesh, &result, &mat, Formulation::Ans).unwrap();
        for s in stresses {
            assert!(s.m.iter().all(|v| v.abs() < 1e-9));
            assert!(s.q.iter().all(|v| v.abs() < 1e-9));
        }
    }
}
