//! Polygonal scaled-boundary finite elements for Reissner-Mindlin plate bending.
//!
//! A plate domain is discretized with arbitrary polygons. Each polygon is split
//! into triangular sections spanned by one boundary edge and an interior scaling
//! center; linear shape functions act in both the circumferential and the radial
//! parametric direction. Transverse shear locking in the thin limit is removed by
//! an assumed-natural-strain interpolation of the shear strains at three tying
//! points per section. Plate constitutive laws may be given directly in resultant
//! form or derived from 3D isotropic elasticity with weakly enforced zero normal
//! stress through condensed thickness-strain parameters.
//!
//! The crate is organized as:
//! - [`mesh`]: polygonal meshes, Voronoi/structured generators, section decomposition
//! - [`sbfem`]: section parameterization (shape functions, Jacobians, bases)
//! - [`kinematics`]: strain-displacement operators, standard and assumed-strain
//! - [`material`]: constitutive matrices and through-thickness integration
//! - [`assembly`]: quadrature, element/global stiffness, loads, linear solve
//! - [`solver`]: sparse symmetric direct factorization
//! - [`analysis`]: eigenvalue stability test, error norms, stress recovery, rate fits
//! - [`bench`]: self-contained benchmark cases with stored reference values
//! - [`verify`]: property-check battery used by the `verify` command

pub mod analysis;
pub mod assembly;
pub mod bench;
pub mod error;
pub mod geo;
pub mod io;
pub mod kinematics;
pub mod material;
pub mod mesh;
pub mod quadrature;
pub mod sbfem;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
