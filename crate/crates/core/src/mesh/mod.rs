//! Polygonal meshes and their decomposition into scaled-boundary sections.
//!
//! A mesh stores node coordinates, counter-clockwise element loops, and one
//! scaling center per element. Every element edge, together with the scaling
//! center, spans one triangular [`Section`] - the basic integration and
//! assembly unit.

pub mod domain;
mod io;
mod structured;
mod voronoi;

pub use domain::{DensityField, DomainSpec};
pub use io::{read_mesh_json, write_mesh_json};
pub use structured::{generate_structured_mesh, StructuredShape};
pub use voronoi::generate_voronoi_mesh;

use crate::error::{Error, Result};
use crate::geo::{self, Vec2};

/// Polygonal discretization of a plate midsurface.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMesh {
    pub nodes: Vec<Vec2>,
    /// Counter-clockwise node-index loops, one per element.
    pub elements: Vec<Vec<usize>>,
    /// One interior scaling center per element.
    pub scaling_centers: Vec<Vec2>,
}

/// Scaling-center relocation policy used by mesh edits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingCenterPolicy {
    /// Recompute centers as element centroids after the edit.
    Moving,
    /// Keep the stored centers untouched.
    Fixed,
}

/// One triangular section: scaling center plus one boundary edge.
#[derive(Debug, Clone, Copy)]
pub struct Section {
    /// Scaling center.
    pub x0: Vec2,
    /// First boundary node (eta = -1).
    pub x1: Vec2,
    /// Second boundary node (eta = +1).
    pub x2: Vec2,
    /// Global indices of (node1, node2) within the mesh; the center block is
    /// addressed through the owning element.
    pub nodes: [usize; 2],
    /// Owning element.
    pub element: usize,
    /// Edge position within the element loop.
    pub edge: usize,
}

impl Section {
    /// Free-standing section without mesh bookkeeping, mostly for tests.
    pub fn from_points(x0: Vec2, x1: Vec2, x2: Vec2) -> Self {
        Section { x0, x1, x2, nodes: [0, 1], element: 0, edge: 0 }
    }

    /// Signed area of the (x0, x1, x2) triangle.
    pub fn area(&self) -> f64 {
        0.5 * geo::cross(self.x1 - self.x0, self.x2 - self.x0)
    }
}

/// Diagnostics gathered by [`validate_mesh`].
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct MeshReport {
    pub orientation_violations: Vec<usize>,
    pub zero_area_elements: Vec<usize>,
    pub non_finite_nodes: Vec<usize>,
    pub degenerate_loops: Vec<usize>,
    pub degenerate_sections: Vec<(usize, usize)>,
    pub center_count_mismatch: bool,
    pub invalid_indices: Vec<usize>,
}

impl MeshReport {
    pub fn is_empty(&self) -> bool {
        self.orientation_violations.is_empty()
            && self.zero_area_elements.is_empty()
            && self.non_finite_nodes.is_empty()
            && self.degenerate_loops.is_empty()
            && self.degenerate_sections.is_empty()
            && !self.center_count_mismatch
            && self.invalid_indices.is_empty()
    }
}

impl PolyMesh {
    /// Builds a mesh with centroid scaling centers.
    pub fn new(nodes: Vec<Vec2>, elements: Vec<Vec<usize>>) -> Self {
        let centers = elements
            .iter()
            .map(|e| {
                let pts: Vec<Vec2> = e.iter().map(|&i| nodes[i]).collect();
                geo::polygon_centroid(&pts)
            })
            .collect();
        PolyMesh { nodes, elements, scaling_centers: centers }
    }

    pub fn element_points(&self, e: usize) -> Vec<Vec2> {
        self.elements[e].iter().map(|&i| self.nodes[i]).collect()
    }

    pub fn element_area(&self, e: usize) -> f64 {
        geo::polygon_area(&self.element_points(e))
    }

    pub fn total_area(&self) -> f64 {
        (0..self.elements.len()).map(|e| self.element_area(e)).sum()
    }

    /// Largest extent of the axis-aligned bounding box.
    pub fn diameter(&self) -> f64 {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.nodes {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (hi - lo).norm()
    }

    /// Recomputes every scaling center as the element centroid.
    pub fn recenter(&mut self) {
        for e in 0..self.elements.len() {
            let pts = self.element_points(e);
            self.scaling_centers[e] = geo::polygon_centroid(&pts);
        }
    }

    /// Edges that belong to exactly one element, as (node_a, node_b) pairs in
    /// loop orientation.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        use std::collections::HashMap;
        let mut count: HashMap<(usize, usize), (usize, (usize, usize))> = HashMap::new();
        for loop_ in &self.elements {
            let n = loop_.len();
            for i in 0..n {
                let a = loop_[i];
                let b = loop_[(i + 1) % n];
                let key = (a.min(b), a.max(b));
                let entry = count.entry(key).or_insert((0, (a, b)));
                entry.0 += 1;
            }
        }
        let mut out: Vec<(usize, usize)> = count
            .into_iter()
            .filter_map(|(_, (c, edge))| (c == 1).then_some(edge))
            .collect();
        out.sort_unstable();
        out
    }

    /// Sorted indices of nodes on the mesh boundary.
    pub fn boundary_nodes(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .boundary_edges()
            .into_iter()
            .flat_map(|(a, b)| [a, b])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Index of the node closest to `p`, with its distance.
    pub fn nearest_node(&self, p: Vec2) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (i, n) in self.nodes.iter().enumerate() {
            let d = (n - p).norm();
            if d < best.1 {
                best = (i, d);
            }
        }
        best
    }
}

/// Splits one element into its sections, one per polygon edge.
///
/// Fails with a [`Error::DegenerateSection`] naming the element and edge if any
/// triangle has area below `1e-12` of the element area.
pub fn decompose_into_sections(mesh: &PolyMesh, element: usize) -> Result<Vec<Section>> {
    let loop_ = &mesh.elements[element];
    let x0 = mesh.scaling_centers[element];
    let n = loop_.len();
    let elem_area = mesh.element_area(element).abs();
    let tol = 1e-12 * elem_area;
    let mut sections = Vec::with_capacity(n);
    for i in 0..n {
        let a = loop_[i];
        let b = loop_[(i + 1) % n];
        let s = Section {
            x0,
            x1: mesh.nodes[a],
            x2: mesh.nodes[b],
            nodes: [a, b],
            element,
            edge: i,
        };
        if s.area() <= tol {
            return Err(Error::DegenerateSection { element, edge: i, area: s.area() });
        }
        sections.push(s);
    }
    Ok(sections)
}

/// Reports structural defects without failing.
pub fn validate_mesh(mesh: &PolyMesh) -> MeshReport {
    let mut report = MeshReport::default();
    for (i, p) in mesh.nodes.iter().enumerate() {
        if !p.x.is_finite() || !p.y.is_finite() {
            report.non_finite_nodes.push(i);
        }
    }
    report.center_count_mismatch = mesh.scaling_centers.len() != mesh.elements.len();
    for (e, loop_) in mesh.elements.iter().enumerate() {
        if loop_.iter().any(|&i| i >= mesh.nodes.len()) {
            report.invalid_indices.push(e);
            continue;
        }
        let n = loop_.len();
        let mut degenerate = n < 3;
        for i in 0..n {
            if loop_[i] == loop_[(i + 1) % n] {
                degenerate = true;
            }
        }
        let mut seen = loop_.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != n {
            degenerate = true;
        }
        if degenerate {
            report.degenerate_loops.push(e);
            continue;
        }
        let area = mesh.element_area(e);
        if area < 0.0 {
            report.orientation_violations.push(e);
        } else if area == 0.0 {
            report.zero_area_elements.push(e);
        }
        if !report.center_count_mismatch && area > 0.0 {
            if let Err(Error::DegenerateSection { element, edge, .. }) =
                decompose_into_sections(mesh, e)
            {
                report.degenerate_sections.push((element, edge));
            }
        }
    }
    report
}

/// Moves the shared central node of the 2x2 quarter-plate mesh by (+s, -s).
///
/// With the fixed policy the stored scaling centers are kept; if the moved node
/// lands on one of them the distorted mesh is rejected as singular. With the
/// moving policy the centers follow the element centroids.
pub fn distort_center_node(
    mesh: &PolyMesh,
    s: f64,
    policy: ScalingCenterPolicy,
) -> Result<PolyMesh> {
    let central = central_node(mesh)?;
    let mut out = mesh.clone();
    out.nodes[central] += Vec2::new(s, -s);
    match policy {
        ScalingCenterPolicy::Moving => out.recenter(),
        ScalingCenterPolicy::Fixed => {
            let tol = 1e-9 * mesh.diameter();
            let p = out.nodes[central];
            for (e, c) in out.scaling_centers.iter().enumerate() {
                if (c - p).norm() <= tol {
                    return Err(Error::SingularConfiguration(format!(
                        "displaced node {central} coincides with the scaling center of element {e}"
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// The node shared by all four elements of the 2x2 mesh.
fn central_node(mesh: &PolyMesh) -> Result<usize> {
    if mesh.elements.len() != 4 {
        return Err(Error::InvalidArgument(format!(
            "distortion requires the 2x2 quad mesh, got {} elements",
            mesh.elements.len()
        )));
    }
    let mut counts = vec![0usize; mesh.nodes.len()];
    for loop_ in &mesh.elements {
        for &i in loop_ {
            counts[i] += 1;
        }
    }
    counts
        .iter()
        .position(|&c| c == 4)
        .ok_or_else(|| Error::InvalidArgument("mesh has no node shared by 4 elements".into()))
}

/// Node table of the six-polygon cantilever mesh used by the patch benchmarks.
pub fn six_polygon_cantilever() -> PolyMesh {
    let x = [
        0.0,
        2.0,
        2.0,
        0.0,
        1.0 / 3.0,
        3.0 / 2.0,
        4.0 / 3.0,
        2.0 / 3.0,
        3.0 / 4.0,
        5.0 / 4.0,
        1.0,
    ];
    let y = [
        0.0,
        0.0,
        1.0,
        1.0,
        1.0 / 6.0,
        1.0 / 4.0,
        2.0 / 3.0,
        2.0 / 3.0,
        1.0 / 8.0,
        7.0 / 24.0,
        3.0 / 4.0,
    ];
    let nodes: Vec<Vec2> = x.iter().zip(&y).map(|(&x, &y)| Vec2::new(x, y)).collect();
    let elements = vec![
        vec![0, 1, 8, 4],
        vec![1, 5, 9, 8],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 10, 6],
        vec![3, 0, 4, 7],
        vec![4, 8, 9, 5, 6, 10, 7],
    ];
    PolyMesh::new(nodes, elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> PolyMesh {
        PolyMesh::new(
            vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(1.0, 0.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(0.0, 1.0),
            ],
            vec![vec![0, 1, 2, 3]],
        )
    }

    #[test]
    fn unit_square_sections() {
        let mesh = unit_square();
        assert!((mesh.scaling_centers[0] - Vec2::new(0.5, 0.5)).norm() < 1e-15);
        let sections = decompose_into_sections(&mesh, 0).unwrap();
        assert_eq!(sections.len(), 4);
        for s in &sections {
            assert!((s.area() - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn hexagon_section_areas_sum_to_polygon_area() {
        let nodes: Vec<Vec2> = (0..6)
            .map(|k| {
                let a = std::f64::consts::PI / 3.0 * k as f64;
                Vec2::new(a.cos(), a.sin())
            })
            .collect();
        let mesh = PolyMesh::new(nodes, vec![(0..6).collect()]);
        let shoelace = mesh.element_area(0);
        let sum: f64 = decompose_into_sections(&mesh, 0)
            .unwrap()
            .iter()
            .map(|s| s.area())
            .sum();
        assert!((sum - shoelace).abs() <= 1e-12 * shoelace);
    }

    #[test]
    fn off_center_scaling_center_keeps_positive_sections() {
        let mut mesh = unit_square();
        mesh.scaling_centers[0] = Vec2::new(0.9, 0.5);
        let sections = decompose_into_sections(&mesh, 0).unwrap();
        let sum: f64 = sections.iter().map(|s| s.area()).sum();
        assert!(sections.iter().all(|s| s.area() > 0.0));
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn validate_flags_constructed_defects() {
        let mut mesh = unit_square();
        mesh.elements[0] = vec![0, 3, 2, 1]; // clockwise
        let report = validate_mesh(&mesh);
        assert_eq!(report.orientation_violations, vec![0]);

        let mut mesh = unit_square();
        mesh.elements[0] = vec![0, 1, 1, 2, 3];
        let report = validate_mesh(&mesh);
        assert_eq!(report.degenerate_loops, vec![0]);
    }

    #[test]
    fn six_polygon_mesh_is_clean() {
        let mesh = six_polygon_cantilever();
        let report = validate_mesh(&mesh);
        assert!(report.is_empty(), "{report:?}");
        assert!((mesh.total_area() - 2.0).abs() < 1e-12);
        assert_eq!(mesh.elements.len(), 6);
    }

    fn quarter_2x2() -> PolyMesh {
        let mut nodes = Vec::new();
        for j in 0..3 {
            for i in 0..3 {
                nodes.push(Vec2::new(25.0 * i as f64, 25.0 * j as f64));
            }
        }
        let elements = vec![
            vec![0, 1, 4, 3],
            vec![1, 2, 5, 4],
            vec![3, 4, 7, 6],
            vec![4, 5, 8, 7],
        ];
        PolyMesh::new(nodes, elements)
    }

    #[test]
    fn distortion_identity_and_roundtrip() {
        let mesh = quarter_2x2();
        let same = distort_center_node(&mesh, 0.0, ScalingCenterPolicy::Fixed).unwrap();
        assert_eq!(same.nodes, mesh.nodes);

        let fwd = distort_center_node(&mesh, 7.25, ScalingCenterPolicy::Moving).unwrap();
        let back = distort_center_node(&fwd, -7.25, ScalingCenterPolicy::Moving).unwrap();
        for (a, b) in back.nodes.iter().zip(&mesh.nodes) {
            assert!((a - b).norm() <= 1e-12);
        }
    }

    #[test]
    fn fixed_centers_reject_coincident_node() {
        let mesh = quarter_2x2();
        let err = distort_center_node(&mesh, 12.5, ScalingCenterPolicy::Fixed).unwrap_err();
        assert!(matches!(err, Error::SingularConfiguration(_)));
    }

    #[test]
    fn moving_centers_survive_the_coincidence_distortion() {
        let mesh = quarter_2x2();
        let moved = distort_center_node(&mesh, 12.5, ScalingCenterPolicy::Moving).unwrap();
        for e in 0..4 {
            let sections = decompose_into_sections(&moved, e).unwrap();
            assert!(sections.iter().all(|s| s.area() > 0.0));
        }
    }
}
