//! Deterministic property-check battery behind the `verify` command.
//!
//! Each check re-derives a structural property from scratch (oracles, finite
//! differences, resultant sums) against the production code paths and reports
//! pass/fail with a short detail string.

use crate::analysis::{regular_polygon_mesh, zero_energy_mode_test};
use crate::assembly::{
    assemble_global, section_stiffness, solve, AssemblyOptions,
    BcComponent, BcSpec, EdgeSelector, Formulation, LoadSpec, NodeSelector,
};
use crate::geo::{self, Vec2};
use crate::kinematics::{
    eval_ans_shear_operator, eval_standard_operators, DofLayout,
};
use crate::material::Material;
use crate::mesh::{PolyMesh, Section};
use crate::quadrature::QuadratureScheme;
use crate::sbfem::eval_section_frame;
use nalgebra::{DVector, Matrix2};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check { name: name.to_string(), passed, detail }
    }
}

fn random_section(rng: &mut ChaCha8Rng) -> Section {
    loop {
        let x0 = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let x1 = x0 + Vec2::new(rng.random_range(0.3..2.0), rng.random_range(-1.0..1.0));
        let x2 = x0 + Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(0.3..2.0));
        let s = Section::from_points(x0, x1, x2);
        if s.area() > 0.05 {
            return s;
        }
    }
}

fn random_star_polygon(rng: &mut ChaCha8Rng, n: usize) -> PolyMesh {
    // radial perturbation of a regular polygon stays star-convex
    let nodes: Vec<Vec2> = (0..n)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / n as f64
                + rng.random_range(-0.2..0.2) / n as f64;
            let r = rng.random_range(0.6..1.4);
            Vec2::new(r * a.cos(), r * a.sin())
        })
        .collect();
    PolyMesh::new(nodes, vec![(0..n).collect()])
}

/// Runs the whole battery.
pub fn run_all() -> Vec<Check> {
    vec![
        stiffness_symmetry(),
        rigid_body_kernel(),
        rotation_objectivity(),
        removable_singularity_columns(),
        ans_matches_tying_oracle(),
        finite_difference_strains(),
        load_resultant_conservation(),
    ]
}

pub fn stiffness_symmetry() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let s = random_section(&mut rng);
        for mat in [
            Material::plate2d(1e5, 0.3, 0.05),
            Material::solid3d(1e5, 0.3, 0.05, crate::material::ThicknessMode::Linear),
        ] {
            for scheme in [
                QuadratureScheme::Full,
                QuadratureScheme::Reduced,
                QuadratureScheme::SelectiveReduced,
            ] {
                for f in [Formulation::Standard, Formulation::Ans] {
                    let k = match section_stiffness(&s, &mat, scheme, f) {
                        Ok(k) => k,
                        Err(e) => return Check::new("stiffness-symmetry", false, e.to_string()),
                    };
                    worst = worst.max((&k - k.transpose()).norm() / k.norm());
                }
            }
        }
    }
    Check::new(
        "stiffness-symmetry",
        worst < 1e-10,
        format!("max relative asymmetry {worst:.3e}"),
    )
}

pub fn rigid_body_kernel() -> Check {
    let mat = Material::plate2d(1e5, 0.25, 0.01);
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut failures = Vec::new();
    for n in 3..=8 {
        let mesh = regular_polygon_mesh(n, 1.0);
        match zero_energy_mode_test(&mesh, 0, &mat, Formulation::Ans) {
            Ok(r) if r.zero_count == 3 => {}
            Ok(r) => failures.push(format!("regular {n}-gon: {} zero modes", r.zero_count)),
            Err(e) => failures.push(format!("regular {n}-gon: {e}")),
        }
    }
    for trial in 0..50 {
        let n = 3 + (trial % 6);
        let mesh = random_star_polygon(&mut rng, n);
        match zero_energy_mode_test(&mesh, 0, &mat, Formulation::Ans) {
            Ok(r) if r.zero_count == 3 => {}
            Ok(r) => failures.push(format!("random {n}-gon #{trial}: {} zero modes", r.zero_count)),
            Err(e) => failures.push(format!("random {n}-gon #{trial}: {e}")),
        }
    }
    Check::new(
        "rigid-body-kernel",
        failures.is_empty(),
        if failures.is_empty() { "56 elements, 3 zero modes each".into() } else { failures.join("; ") },
    )
}

pub fn rotation_objectivity() -> Check {
    // cantilever under uniform pressure, rotated rigidly by an odd angle
    let run = |angle: f64| -> crate::Result<(f64, f64)> {
        let rect = crate::mesh::DomainSpec::rectangle(0.0, 0.0, 2.0, 1.0);
        let mut mesh = crate::mesh::generate_structured_mesh(
            &rect,
            4,
            2,
            crate::mesh::StructuredShape::Quad,
        )?;
        let clamped: Vec<usize> = (0..mesh.nodes.len())
            .filter(|&i| mesh.nodes[i].x.abs() < 1e-12)
            .collect();
        for p in &mut mesh.nodes {
            *p = geo::rotate(*p, angle);
        }
        mesh.recenter();
        let mat = Material::plate2d(1e5, 0.3, 0.05);
        let bcs: Vec<BcSpec> = clamped
            .iter()
            .map(|&i| BcSpec {
                nodes: NodeSelector::Node(i),
                components: vec![BcComponent::W, BcComponent::Bx, BcComponent::By],
                value: 0.0,
            })
            .collect();
        let loads = vec![LoadSpec::UniformPressure(-3.0)];
        let system = assemble_global(&mesh, &mat, &loads, &bcs, &AssemblyOptions::default())?;
        let result = solve(&system)?;
        // probe node: the free corner (last node of the grid)
        let tip = mesh.nodes.len() - 1;
        let energy = {
            let x: Vec<f64> = system.free.iter().map(|&dof| result.d[dof]).collect();
            let xv = DVector::from_vec(x);
            0.5 * xv.dot(&system.k_red.mul_vec(&xv))
        };
        Ok((result.node_w(tip), energy))
    };
    match (run(0.0), run(0.731)) {
        (Ok((w0, e0)), Ok((w1, e1))) => {
            let dw = ((w1 - w0) / w0).abs();
            let de = ((e1 - e0) / e0).abs();
            Check::new(
                "rotation-objectivity",
                dw <= 1e-9 && de <= 1e-9,
                format!("tip w drift {dw:.3e}, energy drift {de:.3e}"),
            )
        }
        (Err(e), _) | (_, Err(e)) => Check::new("rotation-objectivity", false, e.to_string()),
    }
}

pub fn removable_singularity_columns() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst: f64 = 0.0;
    let mut bounded = true;
    for _ in 0..20 {
        let s = random_section(&mut rng);
        let xi: f64 = rng.random_range(0.01..1.0);
        let eta: f64 = rng.random_range(-1.0..1.0);
        let ops = match eval_standard_operators(&s, xi, eta, DofLayout::PlateMembrane) {
            Ok(o) => o,
            Err(e) => return Check::new("removable-singularity", false, e.to_string()),
        };
        for part in [ops.parts.m2.as_ref().unwrap(), &ops.parts.b2, &ops.parts.s2] {
            let center = part.view((0, 10), (part.nrows(), 5));
            worst = worst.max(center.norm());
        }
        let near = eval_standard_operators(&s, 1e-8, eta, DofLayout::Plate).unwrap();
        bounded &= near.b_b.norm() < 1e6 && near.b_s.norm() < 1e6;
    }
    Check::new(
        "removable-singularity",
        worst == 0.0 && bounded,
        format!("max center column magnitude {worst:.1e}; bounded at xi=1e-8: {bounded}"),
    )
}

pub fn ans_matches_tying_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let s = random_section(&mut rng);
        let xi: f64 = rng.random_range(0.05..1.0);
        let eta: f64 = rng.random_range(-1.0..1.0);
        let d = DVector::from_fn(9, |_, _| rng.random_range(-1.0..1.0));
        let ans = match eval_ans_shear_operator(&s, xi, eta, DofLayout::Plate) {
            Ok(a) => a,
            Err(e) => return Check::new("ans-tying-oracle", false, e.to_string()),
        };
        let got = &ans * &d;

        // literal construction: tying strains, blend, frame inverse
        let (w1, bx1, by1) = (d[0], d[1], d[2]);
        let (w2, bx2, by2) = (d[3], d[4], d[5]);
        let (w0, bx0, by0) = (d[6], d[7], d[8]);
        let (x0, x1, x2) = (s.x0, s.x1, s.x2);
        let g_a = 0.5 * (w2 - w1) + 0.25 * (x2.x - x1.x) * (bx1 + bx2)
            - 0.25 * (x2.y - x1.y) * (by1 + by2);
        let g_b = (w2 - w0) + 0.5 * (x2.x - x0.x) * (bx2 + bx0)
            - 0.5 * (x2.y - x0.y) * (by2 + by0);
        let g_c = (w1 - w0) + 0.5 * (x1.x - x0.x) * (bx1 + bx0)
            - 0.5 * (x1.y - x0.y) * (by1 + by0);
        let gt_xi = 0.5 * (1.0 + eta) * g_b + 0.5 * (1.0 - eta) * g_c;
        let gt_eta = xi * g_a;
        let frame = eval_section_frame(&s, xi, eta).unwrap();
        let j_inv = Matrix2::new(
            frame.g1_contra.x,
            frame.g2_contra.x / xi,
            frame.g1_contra.y,
            frame.g2_contra.y / xi,
        );
        let expect = j_inv * Vec2::new(gt_xi, gt_eta);
        let scale = expect.norm().max(1.0);
        worst = worst.max(((got[0] - expect.x).abs() + (got[1] - expect.y).abs()) / scale);
    }
    Check::new("ans-tying-oracle", worst <= 1e-12, format!("max deviation {worst:.3e}"))
}

pub fn finite_difference_strains() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let s = random_section(&mut rng);
        let d = DVector::from_fn(9, |_, _| rng.random_range(-1.0..1.0));
        let beta = |xi: f64, eta: f64| {
            let n = crate::kinematics::shape_values(xi, eta);
            Vec2::new(
                n[0] * d[1] + n[1] * d[4] + n[2] * d[7],
                n[0] * d[2] + n[1] * d[5] + n[2] * d[8],
            )
        };
        let xi: f64 = rng.random_range(0.2..0.8);
        let eta: f64 = rng.random_range(-0.8..0.8);
        let dxi = (beta(xi + h, eta) - beta(xi - h, eta)) / (2.0 * h);
        let deta = (beta(xi, eta + h) - beta(xi, eta - h)) / (2.0 * h);
        let f = eval_section_frame(&s, xi, eta).unwrap();
        let jinv = f.j_inv();
        let bx_x = jinv[(0, 0)] * dxi.x + jinv[(0, 1)] * deta.x;
        let bx_y = jinv[(1, 0)] * dxi.x + jinv[(1, 1)] * deta.x;
        let by_x = jinv[(0, 0)] * dxi.y + jinv[(0, 1)] * deta.y;
        let by_y = jinv[(1, 0)] * dxi.y + jinv[(1, 1)] * deta.y;
        let kappa = &eval_standard_operators(&s, xi, eta, DofLayout::Plate).unwrap().b_b * &d;
        worst = worst
            .max((kappa[0] - bx_x).abs())
            .max((kappa[1] + by_y).abs())
            .max((kappa[2] - (bx_y - by_x)).abs());
    }
    Check::new("finite-difference-strains", worst < 1e-6, format!("max deviation {worst:.3e}"))
}

pub fn load_resultant_conservation() -> Check {
    let rect = crate::mesh::DomainSpec::rectangle(0.0, 0.0, 2.0, 1.0);
    let mesh = match crate::mesh::generate_structured_mesh(
        &rect,
        3,
        2,
        crate::mesh::StructuredShape::Quad,
    ) {
        Ok(m) => m,
        Err(e) => return Check::new("load-conservation", false, e.to_string()),
    };
    let mat = Material::plate2d(1e5, 0.0, 0.1);
    let loads = vec![
        LoadSpec::UniformPressure(1.0),
        LoadSpec::MomentLineLoad { edge: EdgeSelector::x(2.0), m: 1.0 },
    ];
    let system = match assemble_global(&mesh, &mat, &loads, &[], &AssemblyOptions::default()) {
        Ok(s) => s,
        Err(e) => return Check::new("load-conservation", false, e.to_string()),
    };
    let mut w_sum = 0.0;
    let mut bx_sum = 0.0;
    for (r, &dof) in system.free.iter().enumerate() {
        match dof % 3 {
            0 => w_sum += system.f_red[r],
            1 => bx_sum += system.f_red[r],
            _ => {}
        }
    }
    let ok = (w_sum - 2.0).abs() < 1e-12 && (bx_sum - 1.0).abs() < 1e-12;
    Check::new(
        "load-conservation",
        ok,
        format!("pressure resultant {w_sum:.15} (expect 2), edge moment {bx_sum:.15} (expect 1)"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes() {
        for check in run_all() {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
    }

    #[test]
    fn sections_of_decomposed_elements_match_element_nodes() {
        let mesh = crate::mesh::six_polygon_cantilever();
        for e in 0..mesh.elements.len() {
            let sections = crate::mesh::decompose_into_sections(&mesh, e).unwrap();
            assert_eq!(sections.len(), mesh.elements[e].len());
        }
    }
}
