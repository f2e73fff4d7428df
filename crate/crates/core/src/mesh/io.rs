//! Versioned JSON mesh format.
//!
//! ```json
//! {"version":1,"nodes":[[x,y],...],"elements":[[i0,i1,...],...],"scaling_centers":[[x,y],...]}
//! ```
//!
//! Indices are 0-based; `scaling_centers` is optional and defaults to element
//! centroids.

use super::PolyMesh;
use crate::error::{Error, Result};
use crate::geo::Vec2;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Serialize, Deserialize)]
struct MeshFile {
    version: u32,
    nodes: Vec<[f64; 2]>,
    elements: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scaling_centers: Option<Vec<[f64; 2]>>,
}

pub fn write_mesh_json(mesh: &PolyMesh, path: &Path) -> Result<()> {
    let file = MeshFile {
        version: 1,
        nodes: mesh.nodes.iter().map(|p| [p.x, p.y]).collect(),
        elements: mesh.elements.clone(),
        scaling_centers: Some(mesh.scaling_centers.iter().map(|p| [p.x, p.y]).collect()),
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

pub fn read_mesh_json(path: &Path) -> Result<PolyMesh> {
    let file: MeshFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if file.version != 1 {
        return Err(Error::InvalidArgument(format!(
            "unsupported mesh file version {}",
            file.version
        )));
    }
    let nodes: Vec<Vec2> = file.nodes.iter().map(|p| Vec2::new(p[0], p[1])).collect();
    let mut mesh = PolyMesh::new(nodes, file.elements);
    if let Some(centers) = file.scaling_centers {
        if centers.len() != mesh.elements.len() {
            return Err(Error::InvalidArgument(
                "scaling_centers length does not match element count".into(),
            ));
        }
        mesh.scaling_centers = centers.iter().map(|p| Vec2::new(p[0], p[1])).collect();
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::six_polygon_cantilever;

    #[test]
    fn roundtrip_preserves_the_mesh() {
        let mesh = six_polygon_cantilever();
        let dir = std::env::temp_dir().join("plateforge_mesh_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("mesh.json");
        write_mesh_json(&mesh, &path).unwrap();
        let back = read_mesh_json(&path).unwrap();
        assert_eq!(back, mesh);
    }

    #[test]
    fn missing_centers_default_to_centroids() {
        let json = r#"{"version":1,"nodes":[[0,0],[1,0],[1,1],[0,1]],"elements":[[0,1,2,3]]}"#;
        let dir = std::env::temp_dir().join("plateforge_mesh_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bare.json");
        std::fs::write(&path, json).unwrap();
        let mesh = read_mesh_json(&path).unwrap();
        assert!((mesh.scaling_centers[0] - Vec2::new(0.5, 0.5)).norm() < 1e-15);
    }
}
