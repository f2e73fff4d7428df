//! Structured quadrilateral and triangular meshes on rectangles.

use super::{domain::Outer, DomainSpec, PolyMesh};
use crate::error::{Error, Result};
use crate::geo::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructuredShape {
    Quad,
    Tri,
}

/// nx-by-ny grid of quads on a rectangular domain, optionally split into
/// triangles along the lower-left/upper-right diagonal.
pub fn generate_structured_mesh(
    rect: &DomainSpec,
    nx: usize,
    ny: usize,
    shape: StructuredShape,
) -> Result<PolyMesh> {
    let Outer::Rectangle { bounds } = &rect.outer else {
        return Err(Error::InvalidArgument(
            "structured meshing requires a rectangular domain".into(),
        ));
    };
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidArgument("nx and ny must be at least 1".into()));
    }
    let [x0, y0, x1, y1] = *bounds;
    let dx = (x1 - x0) / nx as f64;
    let dy = (y1 - y0) / ny as f64;
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            nodes.push(Vec2::new(x0 + dx * i as f64, y0 + dy * j as f64));
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut elements = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            match shape {
                StructuredShape::Quad => elements.push(vec![a, b, c, d]),
                StructuredShape::Tri => {
                    elements.push(vec![a, b, c]);
                    elements.push(vec![a, c, d]);
                }
            }
        }
    }
    Ok(PolyMesh::new(nodes, elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_quad_matches_domain() {
        let rect = DomainSpec::rectangle(0.0, 0.0, 2.0, 1.0);
        let mesh = generate_structured_mesh(&rect, 1, 1, StructuredShape::Quad).unwrap();
        assert_eq!(mesh.elements.len(), 1);
        assert_eq!(mesh.nodes.len(), 4);
        let loop_pts = mesh.element_points(0);
        let expected = [
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(0.0, 1.0),
        ];
        for (p, q) in loop_pts.iter().zip(&expected) {
            assert!((p - q).norm() < 1e-15);
        }
    }

    #[test]
    fn triangles_conserve_area() {
        let rect = DomainSpec::unit_square();
        let mesh = generate_structured_mesh(&rect, 2, 2, StructuredShape::Tri).unwrap();
        assert_eq!(mesh.elements.len(), 8);
        assert!((mesh.total_area() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn node_count_is_grid_count() {
        let rect = DomainSpec::rectangle(0.0, 0.0, 10.0, 10.0);
        let mesh = generate_structured_mesh(&rect, 16, 16, StructuredShape::Quad).unwrap();
        assert_eq!(mesh.elements.len(), 256);
        assert_eq!(mesh.nodes.len(), 17 * 17);
    }
}
