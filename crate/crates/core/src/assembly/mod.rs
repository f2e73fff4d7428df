//! Sectional and element stiffness matrices.
//!
//! A section contributes `K_sec = sum_q w_q B^T C B det(J)` with the full
//! Jacobian determinant `xi det(Jbar)`. The shear rows may be under-integrated
//! (reduced / selective reduced) or replaced by the assumed-natural-strain
//! operator. With a 3D material law the membrane rows join in, the constitutive
//! blocks come from thickness pre-integration, and the independent thickness
//! strains are condensed away again.

pub mod system;

pub use system::{
    assemble_global, solve, AssemblyOptions, BcComponent, BcSpec, EdgeSelector, FieldResult,
    GlobalSystem, LoadSpec, NodeSelector, PointRef,
};

use crate::error::{Error, Result};
use crate::kinematics::{
    eval_ans_with_frame, eval_standard_with_frame, stacked_operator, DofLayout,
};
use crate::material::{Material, MaterialLaw, ThicknessCondensation};
use crate::mesh::{decompose_into_sections, PolyMesh, Section};
use crate::quadrature::QuadratureScheme;
use crate::sbfem::eval_section_frame;
use nalgebra::{DMatrix, DVector};

/// Shear treatment of the formulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Standard,
    Ans,
}

/// Dense element stiffness and consistent load with the global scatter map.
#[derive(Debug, Clone)]
pub struct ElementStiffness {
    pub k_e: DMatrix<f64>,
    pub f_e: DVector<f64>,
    /// Global dof per local dof; node blocks in loop order, center block last.
    pub dof_map: Vec<usize>,
}

/// Element stiffness plus consistent surface loads over the element layout.
pub fn element_stiffness(
    mesh: &PolyMesh,
    element: usize,
    material: &Material,
    options: &system::AssemblyOptions,
    loads: &[system::LoadSpec],
) -> Result<ElementStiffness> {
    let (k_e, f_e) = system::element_contribution(mesh, element, material, options, loads)?;
    let nd = material.layout().ndof();
    let dof_map_full = system::DofMap {
        layout: material.layout(),
        n_nodes: mesh.nodes.len(),
        n_elements: mesh.elements.len(),
    };
    let mut dof_map = Vec::new();
    for &node in &mesh.elements[element] {
        for a in 0..nd {
            dof_map.push(dof_map_full.node_dof(node, a));
        }
    }
    for a in 0..nd {
        dof_map.push(dof_map_full.center_dof(element, a));
    }
    Ok(ElementStiffness { k_e, f_e, dof_map })
}

/// Stiffness of one section over the local (node1, node2, center) layout.
pub fn section_stiffness(
    section: &Section,
    material: &Material,
    scheme: QuadratureScheme,
    formulation: Formulation,
) -> Result<DMatrix<f64>> {
    match &material.law_data()? {
        LawData::Plate(plate) => {
            let layout = DofLayout::Plate;
            let w = layout.width();
            let mut k = DMatrix::zeros(w, w);
            // bending with the primary rule
            for q in scheme.primary() {
                let frame = eval_section_frame(section, q.xi, q.eta)?;
                let ops = eval_standard_with_frame(&frame, q.xi, q.eta, layout);
                let scale = q.weight * frame.det_j();
                k += scale * ops.b_b.transpose() * plate.c_b * &ops.b_b;
            }
            // shear with the (possibly reduced) shear rule
            for q in scheme.shear() {
                let frame = eval_section_frame(section, q.xi, q.eta)?;
                let b_s = match formulation {
                    Formulation::Standard => {
                        eval_standard_with_frame(&frame, q.xi, q.eta, layout).b_s
                    }
                    Formulation::Ans => {
                        eval_ans_with_frame(section, &frame, q.xi, q.eta, layout)
                    }
                };
                let scale = q.weight * frame.det_j();
                k += scale * b_s.transpose() * plate.c_s * &b_s;
            }
            Ok(k)
        }
        LawData::Solid(blocks) => {
            let layout = DofLayout::PlateMembrane;
            let w = layout.width();
            match material.thickness_condensation {
                ThicknessCondensation::QuadraturePoint => {
                    let c8 = blocks.condensed()?;
                    let c_mb = c8.view((0, 0), (6, 6)).into_owned();
                    let c_s = c8.view((6, 6), (2, 2)).into_owned();
                    let mut k = DMatrix::zeros(w, w);
                    for q in scheme.primary() {
                        let frame = eval_section_frame(section, q.xi, q.eta)?;
                        let ops = eval_standard_with_frame(&frame, q.xi, q.eta, layout);
                        let b_m = ops.b_m.as_ref().expect("membrane layout");
                        let mut b6 = DMatrix::zeros(6, w);
                        b6.view_mut((0, 0), (3, w)).copy_from(b_m);
                        b6.view_mut((3, 0), (3, w)).copy_from(&ops.b_b);
                        let scale = q.weight * frame.det_j();
                        k += scale * b6.transpose() * &c_mb * &b6;
                    }
                    for q in scheme.shear() {
                        let frame = eval_section_frame(section, q.xi, q.eta)?;
                        let b_s = match formulation {
                            Formulation::Standard => {
                                eval_standard_with_frame(&frame, q.xi, q.eta, layout).b_s
                            }
                            Formulation::Ans => {
                                eval_ans_with_frame(section, &frame, q.xi, q.eta, layout)
                            }
                        };
                        let scale = q.weight * frame.det_j();
                        k += scale * b_s.transpose() * &c_s * &b_s;
                    }
                    Ok(k)
                }
                ThicknessCondensation::Section => {
                    // constant thickness-strain parameters per section
                    let m = blocks.mode.n_params();
                    let mut k_dd = DMatrix::zeros(w, w);
                    let mut k_dz = DMatrix::zeros(w, m);
                    let mut area = 0.0;
                    let d11_mb = blocks.d11.view((0, 0), (6, 6)).into_owned();
                    let d11_s = blocks.d11.view((6, 6), (2, 2)).into_owned();
                    for q in scheme.primary() {
                        let frame = eval_section_frame(section, q.xi, q.eta)?;
                        let ops = eval_standard_with_frame(&frame, q.xi, q.eta, layout);
                        let b_m = ops.b_m.as_ref().expect("membrane layout");
                        let b8 = stacked_operator(b_m, &ops.b_b, &ops.b_s);
                        let b6 = b8.view((0, 0), (6, w)).into_owned();
                        let scale = q.weight * frame.det_j();
                        k_dd += scale * b6.transpose() * &d11_mb * &b6;
                        k_dz += scale * b8.transpose() * &blocks.d12;
                        area += scale;
                    }
                    for q in scheme.shear() {
                        let frame = eval_section_frame(section, q.xi, q.eta)?;
                        let b_s = match formulation {
                            Formulation::Standard => {
                                eval_standard_with_frame(&frame, q.xi, q.eta, layout).b_s
                            }
                            Formulation::Ans => {
                                eval_ans_with_frame(section, &frame, q.xi, q.eta, layout)
                            }
                        };
                        let scale = q.weight * frame.det_j();
                        k_dd += scale * b_s.transpose() * &d11_s * &b_s;
                    }
                    let k_zz = area * &blocks.d22;
                    let chol = nalgebra::Cholesky::new(k_zz).ok_or_else(|| {
                        Error::Material("thickness block K_zz is not positive definite".into())
                    })?;
                    let rhs = chol.solve(&k_dz.transpose());
                    Ok(&k_dd - &k_dz * rhs)
                }
            }
        }
    }
}

/// Internal dispatch of the material law.
enum LawData {
    Plate(crate::material::PlateMaterial2D),
    Solid(crate::material::IntegratedThicknessBlocks),
}

impl Material {
    fn law_data(&self) -> Result<LawData> {
        match self.law {
            MaterialLaw::Plate2D => Ok(LawData::Plate(self.plate()?)),
            MaterialLaw::Solid3D => Ok(LawData::Solid(self.blocks()?)),
        }
    }
}

/// Assembles the element stiffness from its sections. The scaling-center block
/// is shared by all sections and accumulated once. With `condense_center` the
/// center block is eliminated by its Schur complement.
pub fn element_stiffness_matrix(
    mesh: &PolyMesh,
    element: usize,
    material: &Material,
    scheme: QuadratureScheme,
    formulation: Formulation,
    condense_center: bool,
) -> Result<DMatrix<f64>> {
    let sections = decompose_into_sections(mesh, element)?;
    let nd = material.layout().ndof();
    let n = sections.len();
    let w = (n + 1) * nd;
    let mut k = DMatrix::zeros(w, w);
    for (i, s) in sections.iter().enumerate() {
        let k_sec = section_stiffness(s, material, scheme, formulation)?;
        let blocks = [i, (i + 1) % n, n];
        for (bi, &ei) in blocks.iter().enumerate() {
            for (bj, &ej) in blocks.iter().enumerate() {
                for a in 0..nd {
                    for b in 0..nd {
                        k[(ei * nd + a, ej * nd + b)] += k_sec[(bi * nd + a, bj * nd + b)];
                    }
                }
            }
        }
    }
    if condense_center {
        k = condense_trailing_block(&k, nd)?;
    }
    Ok(k)
}

/// Schur complement that eliminates the trailing `block` rows and columns.
pub fn condense_trailing_block(k: &DMatrix<f64>, block: usize) -> Result<DMatrix<f64>> {
    let w = k.nrows();
    let nb = w - block;
    let k_bb = k.view((0, 0), (nb, nb)).into_owned();
    let k_bc = k.view((0, nb), (nb, block)).into_owned();
    let k_cc = k.view((nb, nb), (block, block)).into_owned();
    let chol = nalgebra::Cholesky::new(k_cc)
        .ok_or_else(|| Error::Condensation("singular scaling-center block".into()))?;
    let x = chol.solve(&k_bc.transpose());
    Ok(&k_bb - &k_bc * x)
}
