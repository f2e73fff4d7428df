//! Benchmark problem setups, each returning plain numbers for the reports and
//! the acceptance suite.

use crate::analysis::{
    error_norms, regular_polygon_mesh, zero_energy_mode_test, EigenReport, ExactSolution,
    NormReport,
};
use crate::assembly::system::Axis;
use crate::assembly::{
    assemble_global, section_stiffness, solve, AssemblyOptions, BcComponent, BcSpec,
    EdgeSelector, FieldResult, Formulation, LoadSpec, NodeSelector, PointRef,
};
use crate::error::Result;
use crate::geo::Vec2;
use crate::material::{Material, ThicknessMode};
use crate::mesh::{
    distort_center_node, generate_structured_mesh, generate_voronoi_mesh, DensityField,
    DomainSpec, PolyMesh, ScalingCenterPolicy, StructuredShape,
};
use crate::quadrature::QuadratureScheme;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SHEAR_K: f64 = 5.0 / 6.0;

/// Mesh family used by the square-plate sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshKind {
    Quad,
    Tri,
    Poly,
}

/// One point of a refinement sweep.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SweepPoint {
    /// Refinement parameter (elements per side, or element count for poly).
    pub n: usize,
    pub n_elements: usize,
    pub dofs: usize,
    /// Case-specific scalar: ratio, coefficient, or deflection.
    pub value: f64,
    /// Probe location of the scalar, when one exists.
    pub at: [f64; 2],
    /// Plate solution (w, bx, by) at the probe.
    pub probe: [f64; 3],
}

fn solve_case(
    mesh: &PolyMesh,
    material: &Material,
    loads: &[LoadSpec],
    bcs: &[BcSpec],
    options: &AssemblyOptions,
) -> Result<(FieldResult, usize)> {
    let system = assemble_global(mesh, material, loads, bcs, options)?;
    let dofs = system.free.len();
    Ok((solve(&system)?, dofs))
}

// ------------------------------------------------------------------
// zero-energy mode test
// ------------------------------------------------------------------

/// Spectra of the six free regular polygons inscribed in the unit circle,
/// assumed-strain formulation, centers condensed. The unit circumradius is
/// what reproduces the stored reference spectra.
pub fn zero_energy_spectra() -> Result<Vec<(usize, EigenReport)>> {
    let material = Material::plate2d(1e5, 0.25, 0.01);
    (3..=8)
        .map(|n| {
            let mesh = regular_polygon_mesh(n, 1.0);
            Ok((n, zero_energy_mode_test(&mesh, 0, &material, Formulation::Ans)?))
        })
        .collect()
}

// ------------------------------------------------------------------
// cantilever, end moment
// ------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CantileverMesh {
    OneQuad,
    SixPoly,
}

/// Relative tip error (w - w_ref)/w_ref for the end-moment cantilever.
pub fn cantilever_moment_error(
    mesh_kind: CantileverMesh,
    formulation: Formulation,
    t: f64,
) -> Result<f64> {
    let (e, nu, l, b) = (1e5, 0.0, 2.0, 1.0);
    let mesh = match mesh_kind {
        CantileverMesh::OneQuad => generate_structured_mesh(
            &DomainSpec::rectangle(0.0, 0.0, l, b),
            1,
            1,
            StructuredShape::Quad,
        )?,
        CantileverMesh::SixPoly => crate::mesh::six_polygon_cantilever(),
    };
    let material = Material::plate2d(e, nu, t);
    let bcs = vec![BcSpec {
        nodes: NodeSelector::OnLine { axis: Axis::X, value: 0.0 },
        components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
        value: 0.0,
    }];
    let loads = vec![LoadSpec::MomentLineLoad { edge: EdgeSelector::x(l), m: 1.0 }];
    let options = AssemblyOptions { formulation, ..Default::default() };
    let (result, _) = solve_case(&mesh, &material, &loads, &bcs, &options)?;
    let i = b * t.powi(3) / 12.0;
    let w_ref = ExactSolution::cantilever_moment_tip(1.0, l, e, i);
    // free-edge deflection: average over the free-edge nodes
    let tol = 1e-9;
    let tip: Vec<usize> =
        (0..mesh.nodes.len()).filter(|&i| (mesh.nodes[i].x - l).abs() < tol).collect();
    let w: f64 = tip.iter().map(|&i| result.node_w(i)).sum::<f64>() / tip.len() as f64;
    Ok((w - w_ref) / w_ref)
}

// ------------------------------------------------------------------
// cantilever, uniformly distributed load
// ------------------------------------------------------------------

/// Tip ratio w/w_ref for quad meshes refined along the length.
pub fn cantilever_udl_sweep(
    t: f64,
    formulation: Formulation,
    scheme: QuadratureScheme,
    n_list: &[usize],
) -> Result<Vec<SweepPoint>> {
    let (e, nu, l, b, q) = (1e5, 0.0, 2.0, 1.0, -10.0);
    let material = Material::plate2d(e, nu, t);
    let i = b * t.powi(3) / 12.0;
    let g = e / (2.0 * (1.0 + nu));
    let a_s = SHEAR_K * b * t;
    let w_ref = ExactSolution::cantilever_udl_tip(q, l, e, i, g, a_s);
    let mut out = Vec::new();
    for &n in n_list {
        let mesh = generate_structured_mesh(
            &DomainSpec::rectangle(0.0, 0.0, l, b),
            n,
            1,
            StructuredShape::Quad,
        )?;
        let bcs = vec![BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::X, value: 0.0 },
            components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
            value: 0.0,
        }];
        let loads = vec![LoadSpec::UniformPressure(q)];
        let options = AssemblyOptions { formulation, scheme, ..Default::default() };
        let (result, dofs) = solve_case(&mesh, &material, &loads, &bcs, &options)?;
        let tip: Vec<usize> = (0..mesh.nodes.len())
            .filter(|&i| (mesh.nodes[i].x - l).abs() < 1e-9)
            .collect();
        let w: f64 = tip.iter().map(|&i| result.node_w(i)).sum::<f64>() / tip.len() as f64;
        let at = Vec2::new(l, 0.5 * b);
        let probe = result.probe_plate(&mesh, at)?;
        out.push(SweepPoint {
            n,
            n_elements: mesh.elements.len(),
            dofs,
            value: w / w_ref,
            at: [at.x, at.y],
            probe,
        });
    }
    Ok(out)
}

// ------------------------------------------------------------------
// clamped square plate, uniform load (quarter model)
// ------------------------------------------------------------------

fn quarter_mesh(kind: MeshKind, half: f64, n: usize, seed: u64) -> Result<PolyMesh> {
    let rect = DomainSpec::rectangle(0.0, 0.0, half, half);
    match kind {
        MeshKind::Quad => generate_structured_mesh(&rect, n, n, StructuredShape::Quad),
        MeshKind::Tri => generate_structured_mesh(&rect, n, n, StructuredShape::Tri),
        MeshKind::Poly => {
            generate_voronoi_mesh(&rect, n * n, &DensityField::uniform(), 60, seed)
        }
    }
}

/// Center deflection of the quarter clamped plate under uniform pressure.
pub fn clamped_square_center(kind: MeshKind, n: usize, seed: u64) -> Result<SweepPoint> {
    let (mesh, result, dofs) = clamped_square_solution(kind, n, seed)?;
    let half = 5.0;
    let probe = result.probe_plate(&mesh, Vec2::new(half, half))?;
    Ok(SweepPoint {
        n,
        n_elements: mesh.elements.len(),
        dofs,
        value: probe[0],
        at: [half, half],
        probe,
    })
}

/// Full solution of the quarter clamped plate, for field output.
pub fn clamped_square_solution(
    kind: MeshKind,
    n: usize,
    seed: u64,
) -> Result<(PolyMesh, FieldResult, usize)> {
    let (e, nu, t, l, q) = (10.92e6, 0.3, 0.01, 10.0, -1.0);
    let half = l / 2.0;
    let mesh = quarter_mesh(kind, half, n, seed)?;
    let material = Material::plate2d(e, nu, t);
    let bcs = vec![
        BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::X, value: 0.0 },
            components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
            value: 0.0,
        },
        BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::Y, value: 0.0 },
            components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
            value: 0.0,
        },
        BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::X, value: half },
            components: vec![BcComponent::Bx],
            value: 0.0,
        },
        BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::Y, value: half },
            components: vec![BcComponent::By],
            value: 0.0,
        },
    ];
    let loads = vec![LoadSpec::UniformPressure(q)];
    let (result, dofs) =
        solve_case(&mesh, &material, &loads, &bcs, &AssemblyOptions::default())?;
    Ok((mesh, result, dofs))
}

/// Material of the clamped-square benchmark, for post-processing.
pub fn clamped_square_material() -> Material {
    Material::plate2d(10.92e6, 0.3, 0.01)
}

// ------------------------------------------------------------------
// mesh distortion test (quarter model, point load)
// ------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct DistortionRow {
    pub s: f64,
    /// Deflection at the plate center, or None when the configuration is
    /// singular (coincident scaling center or degenerate section).
    pub w: Option<f64>,
    pub note: String,
}

fn distortion_base_mesh(half: f64) -> PolyMesh {
    let rect = DomainSpec::rectangle(0.0, 0.0, half, half);
    generate_structured_mesh(&rect, 2, 2, StructuredShape::Quad).unwrap()
}

/// Deflection-vs-distortion sweep for one scaling-center policy.
pub fn distortion_sweep(policy: ScalingCenterPolicy, s_values: &[f64]) -> Vec<DistortionRow> {
    let (e, nu, t, l, p_full) = (1e4, 0.3, 1.0, 100.0, -16.367);
    let half = l / 2.0;
    let material = Material::plate2d(e, nu, t);
    let base = distortion_base_mesh(half);
    s_values
        .iter()
        .map(|&s| {
            let solve_at = || -> Result<f64> {
                let mesh = distort_center_node(&base, s, policy)?;
                let bcs = vec![
                    BcSpec {
                        nodes: NodeSelector::OnLine { axis: Axis::X, value: 0.0 },
                        components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
                        value: 0.0,
                    },
                    BcSpec {
                        nodes: NodeSelector::OnLine { axis: Axis::Y, value: 0.0 },
                        components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
                        value: 0.0,
                    },
                    BcSpec {
                        nodes: NodeSelector::OnLine { axis: Axis::X, value: half },
                        components: vec![BcComponent::Bx],
                        value: 0.0,
                    },
                    BcSpec {
                        nodes: NodeSelector::OnLine { axis: Axis::Y, value: half },
                        components: vec![BcComponent::By],
                        value: 0.0,
                    },
                ];
                let loads = vec![LoadSpec::PointLoad {
                    at: PointRef::Coord([half, half]),
                    p: p_full / 4.0,
                }];
                let (result, _) =
                    solve_case(&mesh, &material, &loads, &bcs, &AssemblyOptions::default())?;
                Ok(result.probe_plate(&mesh, Vec2::new(half, half))?[0])
            };
            match solve_at() {
                Ok(w) => DistortionRow { s, w: Some(w), note: String::new() },
                Err(err) => DistortionRow { s, w: None, note: format!("singular: {err}") },
            }
        })
        .collect()
}

// ------------------------------------------------------------------
// Poisson thickness locking (3D law, quarter model, point load)
// ------------------------------------------------------------------

/// Ratio w/w_ref at the plate center for the 3D material law.
pub fn poisson_locking_sweep(
    mode: ThicknessMode,
    nu: f64,
    n_list: &[usize],
) -> Result<Vec<SweepPoint>> {
    let (e, t, l, p_full) = (1e4, 1.0f64, 100.0, -16.367);
    let half = l / 2.0;
    let d = e * t.powi(3) / (12.0 * (1.0 - nu * nu));
    let w_ref = 0.0056 * p_full * l * l / d;
    let material = Material::solid3d(e, nu, t, mode);
    let mut out = Vec::new();
    for &n in n_list {
        let rect = DomainSpec::rectangle(0.0, 0.0, half, half);
        let mesh = generate_structured_mesh(&rect, n, n, StructuredShape::Quad)?;
        let clamp = vec![BcComponent::W, BcComponent::Bx, BcComponent::By, BcComponent::Ux,
            BcComponent::Uy];
        let bcs = vec![
            BcSpec {
                nodes: NodeSelector::OnLine { axis: Axis::X, value: 0.0 },
                components: clamp.clone(),
                value: 0.0,
            },
            BcSpec {
                nodes: NodeSelector::OnLine { axis: Axis::Y, value: 0.0 },
                components: clamp,
                value: 0.0,
            },
            BcSpec {
                nodes: NodeSelector::OnLine { axis: Axis::X, value: half },
                components: vec![BcComponent::Bx, BcComponent::Ux],
                value: 0.0,
            },
            BcSpec {
                nodes: NodeSelector::OnLine { axis: Axis::Y, value: half },
                components: vec![BcComponent::By, BcComponent::Uy],
                value: 0.0,
            },
        ];
        let loads = vec![LoadSpec::PointLoad {
            at: PointRef::Coord([half, half]),
            p: p_full / 4.0,
        }];
        let (result, dofs) =
            solve_case(&mesh, &material, &loads, &bcs, &AssemblyOptions::default())?;
        let (node, _) = mesh.nearest_node(Vec2::new(half, half));
        let probe = result.probe_plate(&mesh, Vec2::new(half, half))?;
        out.push(SweepPoint {
            n,
            n_elements: mesh.elements.len(),
            dofs,
            value: result.node_w(node) / w_ref,
            at: [half, half],
            probe,
        });
    }
    Ok(out)
}

// ------------------------------------------------------------------
// plane-stress equivalence of the material routes
// ------------------------------------------------------------------

/// Worst relative difference between the 3D-law and plate-law sectional
/// stiffness over random sections, comparing the shared plate blocks.
pub fn plane_stress_equivalence(samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let e = rng.random_range(1e3..1e7);
        let nu = rng.random_range(0.0..0.45);
        let t = rng.random_range(0.01..1.0);
        let s = loop {
            let x0 = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let x1 = x0 + Vec2::new(rng.random_range(0.3..2.0), rng.random_range(-1.0..1.0));
            let x2 = x0 + Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(0.3..2.0));
            let s = crate::mesh::Section::from_points(x0, x1, x2);
            if s.area() > 0.05 {
                break s;
            }
        };
        let k2 = section_stiffness(
            &s,
            &Material::plate2d(e, nu, t),
            QuadratureScheme::Full,
            Formulation::Ans,
        )?;
        let k3 = section_stiffness(
            &s,
            &Material::solid3d(e, nu, t, ThicknessMode::Linear),
            QuadratureScheme::Full,
            Formulation::Ans,
        )?;
        let idx: Vec<usize> = (0..3).flat_map(|b| (2..5).map(move |c| 5 * b + c)).collect();
        let mut diff: f64 = 0.0;
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                diff = diff.max((k3[(i, j)] - k2[(a, b)]).abs());
            }
        }
        worst = worst.max(diff / k2.norm());
    }
    Ok(worst)
}

// ------------------------------------------------------------------
// clamped square with the polynomial load function
// ------------------------------------------------------------------

/// Error norms on the full unit square for one thickness and mesh density.
pub fn square_load_norms(t: f64, n: usize, formulation: Formulation) -> Result<NormReport> {
    let (e, nu) = (1.092e7, 0.3);
    let material = Material::plate2d(e, nu, t);
    let d_rigidity = material.flexural_rigidity();
    let mesh = generate_structured_mesh(
        &DomainSpec::unit_square(),
        n,
        n,
        StructuredShape::Quad,
    )?;
    let bcs = vec![BcSpec {
        nodes: NodeSelector::Boundary,
        components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
        value: 0.0,
    }];
    let loads = vec![LoadSpec::FunctionLoad(std::sync::Arc::new(move |p: Vec2| {
        crate::analysis::square_load_function(p, d_rigidity)
    }))];
    let options = AssemblyOptions { formulation, ..Default::default() };
    let (result, _) = solve_case(&mesh, &material, &loads, &bcs, &options)?;
    let exact = ExactSolution::SquareLoadFunction { t, nu };
    error_norms(&result, &exact, &mesh, &material, formulation)
}

// ------------------------------------------------------------------
// simply supported square plate (quarter model, hard support)
// ------------------------------------------------------------------

/// Support condition of the simply supported plate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimpleSupport {
    /// Transverse displacement only; reproduces the stored references.
    Soft,
    /// Also fixes the edge-parallel bending rotation.
    Hard,
}

/// Central deflection coefficient 100 D w_c / (q L^4).
pub fn simply_supported_coefficient(t: f64, n: usize, support: SimpleSupport) -> Result<SweepPoint> {
    let (e, nu, l, q) = (10.92e5, 0.3, 20.0, 1.0);
    let half = l / 2.0;
    let material = Material::plate2d(e, nu, t);
    let mesh = generate_structured_mesh(
        &DomainSpec::rectangle(0.0, 0.0, half, half),
        n,
        n,
        StructuredShape::Quad,
    )?;
    let mut edge_x = vec![BcComponent::W];
    let mut edge_y = vec![BcComponent::W];
    if support == SimpleSupport::Hard {
        edge_x.push(BcComponent::By);
        edge_y.push(BcComponent::Bx);
    }
    let bcs = vec![
        BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::X, value: 0.0 },
            components: edge_x,
            value: 0.0,
        },
        BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::Y, value: 0.0 },
            components: edge_y,
            value: 0.0,
        },
        BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::X, value: half },
            components: vec![BcComponent::Bx],
            value: 0.0,
        },
        BcSpec {
            nodes: NodeSelector::OnLine { axis: Axis::Y, value: half },
            components: vec![BcComponent::By],
            value: 0.0,
        },
    ];
    let loads = vec![LoadSpec::UniformPressure(q)];
    let (result, dofs) =
        solve_case(&mesh, &material, &loads, &bcs, &AssemblyOptions::default())?;
    let probe = result.probe_plate(&mesh, Vec2::new(half, half))?;
    let coeff = 100.0 * material.flexural_rigidity() * probe[0] / (q * l.powi(4));
    Ok(SweepPoint {
        n,
        n_elements: mesh.elements.len(),
        dofs,
        value: coeff,
        at: [half, half],
        probe,
    })
}

// ------------------------------------------------------------------
// clamped circular plate
// ------------------------------------------------------------------

/// Error norms for the clamped unit-radius circular plate meshed with
/// polygons.
pub fn circular_norms(t: f64, n_elements: usize, seed: u64) -> Result<NormReport> {
    let (e, nu, q) = (10.92e6, 0.3, 1.0);
    let material = Material::plate2d(e, nu, t);
    let domain = DomainSpec::circle(0.0, 0.0, 1.0);
    let mesh = generate_voronoi_mesh(&domain, n_elements, &DensityField::uniform(), 60, seed)?;
    let bcs = vec![BcSpec {
        nodes: NodeSelector::Boundary,
        components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
        value: 0.0,
    }];
    let loads = vec![LoadSpec::UniformPressure(q)];
    let (result, _) =
        solve_case(&mesh, &material, &loads, &bcs, &AssemblyOptions::default())?;
    let d = material.flexural_rigidity();
    let lambda = SHEAR_K * e * t.powi(3) / (2.0 * (1.0 + nu));
    let exact = ExactSolution::ClampedCircular { d, lambda, t };
    error_norms(&result, &exact, &mesh, &material, Formulation::Ans)
}

// ------------------------------------------------------------------
// L-bracket with holes
// ------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct LBracketOutcome {
    pub n_elements: usize,
    pub dofs: usize,
    /// Deflection at the loaded corner (4, 6).
    pub w: f64,
    /// Bending moment m_xx at the probe point (0.75, 5.5).
    pub m_xx: f64,
}

/// Density field concentrating elements at the holes and the stress probe.
pub fn l_bracket_density() -> DensityField {
    DensityField {
        attractors: vec![
            (0.5, 0.5, 0.35),
            (0.75, 5.25, 0.35),
            (3.5, 5.5, 0.35),
            (0.75, 5.5, 0.35),
        ],
        background: 0.25,
    }
}

/// Material of the L-bracket benchmark.
pub fn l_bracket_material() -> Material {
    Material::plate2d(200e9, 0.0, 0.01)
}

/// Full L-bracket solution, for probes and field output.
pub fn l_bracket_solution(
    formulation: Formulation,
    n_elements: usize,
    refined: bool,
    seed: u64,
) -> Result<(PolyMesh, FieldResult, usize)> {
    let material = l_bracket_material();
    let domain = DomainSpec::l_bracket();
    let density = if refined { l_bracket_density() } else { DensityField::uniform() };
    let mesh = generate_voronoi_mesh(&domain, n_elements, &density, 30, seed)?;
    // clamped along the left edge x = 0
    let bcs = vec![BcSpec {
        nodes: NodeSelector::OnLine { axis: Axis::X, value: 0.0 },
        components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
        value: 0.0,
    }];
    let loads = vec![LoadSpec::LineLoad {
        edge: EdgeSelector::x(4.0),
        intensity: [-100.0, 0.0, 0.0],
    }];
    let options = AssemblyOptions { formulation, ..Default::default() };
    let (result, dofs) = solve_case(&mesh, &material, &loads, &bcs, &options)?;
    Ok((mesh, result, dofs))
}

/// Solves the clamped L-bracket under the edge line load.
pub fn l_bracket_case(
    formulation: Formulation,
    n_elements: usize,
    refined: bool,
    seed: u64,
) -> Result<LBracketOutcome> {
    let (mesh, result, dofs) = l_bracket_solution(formulation, n_elements, refined, seed)?;
    let material = l_bracket_material();
    let w = result.probe_plate(&mesh, Vec2::new(4.0 - 1e-9, 6.0 - 1e-9))?[0];
    let m_xx = crate::analysis::stress_at_point(
        &mesh,
        &result,
        &material,
        formulation,
        Vec2::new(0.75, 5.5),
    )?
    .m[0];
    Ok(LBracketOutcome { n_elements: mesh.elements.len(), dofs, w, m_xx })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_quad_ans_moment_patch_is_exact() {
        for t in [1.0, 0.1, 0.01, 0.001] {
            let err =
                cantilever_moment_error(CantileverMesh::OneQuad, Formulation::Ans, t).unwrap();
            assert!(err.abs() <= 1e-7, "t = {t}: relative error {err:.3e}");
        }
    }

    #[test]
    fn one_quad_standard_locks_severely() {
        let err = cantilever_moment_error(CantileverMesh::OneQuad, Formulation::Standard, 0.01)
            .unwrap();
        assert!(err < -0.99, "expected locking, got {err}");
    }

    #[test]
    fn six_polygon_patch_is_exact() {
        for t in [1.0, 0.001] {
            let err =
                cantilever_moment_error(CantileverMesh::SixPoly, Formulation::Ans, t).unwrap();
            assert!(err.abs() <= 1e-6, "t = {t}: relative error {err:.3e}");
        }
    }

    #[test]
    fn plane_stress_routes_agree() {
        let worst = plane_stress_equivalence(20, 7).unwrap();
        assert!(worst <= 1e-9, "max deviation {worst:.3e}");
    }

    #[test]
    fn distortion_fixed_centers_fail_only_past_the_coincidence() {
        let rows = distortion_sweep(
            ScalingCenterPolicy::Fixed,
            &[0.0, 6.0, 12.0, 12.5],
        );
        assert!(rows[0].w.is_some());
        assert!(rows[1].w.is_some());
        assert!(rows[2].w.is_some());
        assert!(rows[3].w.is_none(), "s = 12.5 must be singular with fixed centers");
    }

    #[test]
    fn distortion_moving_centers_survive() {
        let rows = distortion_sweep(ScalingCenterPolicy::Moving, &[12.5, -12.5]);
        assert!(rows.iter().all(|r| r.w.is_some()));
    }
}
