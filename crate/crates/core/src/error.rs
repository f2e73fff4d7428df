//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element {element}, edge {edge}: section area {area:.3e} is not positive")]
    DegenerateSection {
        element: usize,
        edge: usize,
        area: f64,
    },

    #[error("degenerate section frame: det(J_bar) = {det:.3e} <= 0")]
    DegenerateFrame { det: f64 },

    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    #[error("mesh generation failed: {0}")]
    MeshGeneration(String),

    #[error("load placement: {0}")]
    LoadPlacement(String),

    #[error("constraint references nonexistent dof: {0}")]
    ConstraintTarget(String),

    #[error("static condensation failed: {0}")]
    Condensation(String),

    #[error("material: {0}")]
    Material(String),

    #[error("factorization failed at dof {dof}: pivot {pivot:.6e}")]
    Solver { dof: usize, pivot: f64 },

    #[error("point ({x}, {y}) lies outside the mesh")]
    Location { x: f64, y: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
