//! Clipped Voronoi meshing with density-weighted Lloyd relaxation.
//!
//! Seeds are sampled inside the domain, mirrored across nearby boundary
//! features, and each seed's cell is cut from a bounding box by bisector
//! half-planes against its neighbors. Mirror seeds make the cell edges follow
//! the domain boundary (chords on curved pieces). Lloyd iteration moves every
//! seed to the density-weighted centroid of its cell until the movement drops
//! below tolerance or the iteration budget is exhausted.

use super::domain::{DensityField, DomainSpec, Outer};
use super::PolyMesh;
use crate::error::{Error, Result};
use crate::geo::{self, Vec2};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn generate_voronoi_mesh(
    domain: &DomainSpec,
    n_elements: usize,
    density: &DensityField,
    max_lloyd_iters: usize,
    seed: u64,
) -> Result<PolyMesh> {
    generate_voronoi_mesh_detailed(domain, n_elements, density, max_lloyd_iters, seed)
        .map(|(mesh, _)| mesh)
}

/// Same as [`generate_voronoi_mesh`] but also returns the maximum seed
/// movement per Lloyd step.
pub fn generate_voronoi_mesh_detailed(
    domain: &DomainSpec,
    n_elements: usize,
    density: &DensityField,
    max_lloyd_iters: usize,
    seed: u64,
) -> Result<(PolyMesh, Vec<f64>)> {
    if n_elements == 0 {
        return Err(Error::InvalidArgument("n_elements must be at least 1".into()));
    }
    density.validate()?;
    let mut last_err = None;
    for attempt in 0..3 {
        match try_generate(domain, n_elements, density, max_lloyd_iters, seed + 1000 * attempt) {
            Ok(out) => return Ok(out),
            Err(e) => last_err = Some(e),
        }
    }
    Err(Error::MeshGeneration(format!(
        "no valid tessellation after 3 attempts (n = {n_elements}): {}",
        last_err.unwrap()
    )))
}

fn try_generate(
    domain: &DomainSpec,
    n: usize,
    density: &DensityField,
    max_iters: usize,
    seed: u64,
) -> Result<(PolyMesh, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diam = domain.diameter();
    let mut seeds = sample_seeds(domain, density, n, &mut rng)?;
    let area_est = domain_area_estimate(domain);
    let alpha = 1.5 * (area_est / n as f64).sqrt();
    let move_tol = 1e-7 * diam;

    let mut history = Vec::new();
    let mut cells: Vec<Vec<Vec2>> = Vec::new();
    for _ in 0..max_iters.max(1) {
        cells = voronoi_cells(domain, &seeds, alpha)?;
        let mut max_move: f64 = 0.0;
        let mut norm2 = 0.0;
        for (i, cell) in cells.iter().enumerate() {
            let c = weighted_centroid(cell, density);
            // keep seeds inside; a centroid may fall outside for boundary
            // cells of non-convex domains
            let c = if domain.signed_distance(c) < 0.0 { c } else { seeds[i] };
            let step = (c - seeds[i]).norm();
            max_move = max_move.max(step);
            norm2 += step * step;
            seeds[i] = c;
        }
        history.push(norm2.sqrt());
        if max_move < move_tol {
            break;
        }
    }
    if cells.is_empty() {
        cells = voronoi_cells(domain, &seeds, alpha)?;
    }

    let mut mesh = cells_to_mesh(&cells, diam)?;
    collapse_short_edges(&mut mesh, 0.08, domain);
    project_boundary_nodes(&mut mesh, domain);
    mesh.recenter();
    // a centroid can leave a boundary cell after projection; nudge back inside
    for e in 0..mesh.elements.len() {
        let pts = mesh.element_points(e);
        if !geo::point_in_polygon(mesh.scaling_centers[e], &pts) {
            mesh.scaling_centers[e] = interior_fallback(&pts);
        }
    }
    if mesh.elements.len() != n {
        return Err(Error::MeshGeneration(format!(
            "tessellation produced {} cells, expected {n}",
            mesh.elements.len()
        )));
    }
    let report = super::validate_mesh(&mesh);
    if !report.is_empty() {
        return Err(Error::MeshGeneration(format!("invalid tessellation: {report:?}")));
    }
    Ok((mesh, history))
}

fn domain_area_estimate(domain: &DomainSpec) -> f64 {
    let (lo, hi) = domain.bounding_box();
    let steps = 40;
    let mut inside = 0usize;
    for j in 0..steps {
        for i in 0..steps {
            let p = Vec2::new(
                lo.x + (hi.x - lo.x) * (i as f64 + 0.5) / steps as f64,
                lo.y + (hi.y - lo.y) * (j as f64 + 0.5) / steps as f64,
            );
            if domain.contains(p) {
                inside += 1;
            }
        }
    }
    (hi.x - lo.x) * (hi.y - lo.y) * inside as f64 / (steps * steps) as f64
}

fn sample_seeds(
    domain: &DomainSpec,
    density: &DensityField,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec2>> {
    let (lo, hi) = domain.bounding_box();
    // density ceiling for rejection sampling
    let mut dmax: f64 = 0.0;
    for j in 0..50 {
        for i in 0..50 {
            let p = Vec2::new(
                lo.x + (hi.x - lo.x) * (i as f64 + 0.5) / 50.0,
                lo.y + (hi.y - lo.y) * (j as f64 + 0.5) / 50.0,
            );
            if domain.contains(p) {
                dmax = dmax.max(density.eval(p));
            }
        }
    }
    if dmax <= 0.0 {
        return Err(Error::MeshGeneration("domain appears empty".into()));
    }
    let mut seeds = Vec::with_capacity(n);
    let mut budget = 200_000usize.max(4000 * n);
    while seeds.len() < n {
        if budget == 0 {
            return Err(Error::MeshGeneration(
                "seed sampling exhausted its rejection budget".into(),
            ));
        }
        budget -= 1;
        let p = Vec2::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
        if domain.signed_distance(p) < 0.0 && rng.random_range(0.0..dmax) <= density.eval(p) {
            seeds.push(p);
        }
    }
    Ok(seeds)
}

/// Boundary features a seed can be mirrored across.
enum Feature {
    /// Infinite line through `a` with unit outward normal `n`, eligibility
    /// limited to the segment [a, b].
    Segment { a: Vec2, b: Vec2 },
    /// Circle; `hole` flips the inside.
    Circle { c: Vec2, r: f64, hole: bool },
}

fn features(domain: &DomainSpec) -> Vec<Feature> {
    let mut out = Vec::new();
    match &domain.outer {
        Outer::Rectangle { bounds } => {
            let [x0, y0, x1, y1] = *bounds;
            let corners = [
                Vec2::new(x0, y0),
                Vec2::new(x1, y0),
                Vec2::new(x1, y1),
                Vec2::new(x0, y1),
            ];
            for i in 0..4 {
                out.push(Feature::Segment { a: corners[i], b: corners[(i + 1) % 4] });
            }
        }
        Outer::Circle { center, radius } => {
            out.push(Feature::Circle {
                c: Vec2::new(center[0], center[1]),
                r: *radius,
                hole: false,
            });
        }
        Outer::Polygon { points } => {
            let n = points.len();
            for i in 0..n {
                out.push(Feature::Segment {
                    a: Vec2::new(points[i][0], points[i][1]),
                    b: Vec2::new(points[(i + 1) % n][0], points[(i + 1) % n][1]),
                });
            }
        }
    }
    for h in &domain.holes {
        out.push(Feature::Circle {
            c: Vec2::new(h.center[0], h.center[1]),
            r: h.radius,
            hole: true,
        });
    }
    out
}

fn mirror_across(p: Vec2, f: &Feature, alpha: f64) -> Option<Vec2> {
    match f {
        Feature::Segment { a, b } => {
            let ab = b - a;
            let len2 = ab.norm_squared();
            let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
            let foot = a + t * ab;
            if (p - foot).norm() > alpha {
                return None;
            }
            // reflect across the infinite line
            let n = Vec2::new(ab.y, -ab.x) / len2.sqrt();
            let d = (p - a).dot(&n);
            Some(p - 2.0 * d * n)
        }
        Feature::Circle { c, r, hole } => {
            let rad = p - c;
            let dist = rad.norm();
            if dist < 1e-14 {
                return None;
            }
            let gap = if *hole { dist - r } else { r - dist };
            if gap.abs() > alpha {
                return None;
            }
            Some(c + rad * ((2.0 * r - dist) / dist).max(-10.0))
        }
    }
}

/// Clipped Voronoi cells of `seeds`, in seed order.
fn voronoi_cells(domain: &DomainSpec, seeds: &[Vec2], alpha: f64) -> Result<Vec<Vec<Vec2>>> {
    let feats = features(domain);
    let mut points = seeds.to_vec();
    for p in seeds {
        for f in &feats {
            if let Some(m) = mirror_across(*p, f, alpha) {
                // only mirrors that really left the domain separate the cell
                // from the boundary
                if domain.signed_distance(m) > 1e-12 * domain.diameter() {
                    points.push(m);
                }
            }
        }
    }

    let grid = PointGrid::build(&points, domain);
    let (lo, hi) = domain.bounding_box();
    let margin = (hi - lo).norm();
    let span_lo = lo - Vec2::new(margin, margin);
    let span_hi = hi + Vec2::new(margin, margin);
    let bbox = vec![
        Vec2::new(span_lo.x, span_lo.y),
        Vec2::new(span_hi.x, span_lo.y),
        Vec2::new(span_hi.x, span_hi.y),
        Vec2::new(span_lo.x, span_hi.y),
    ];

    let mut cells = Vec::with_capacity(seeds.len());
    for (i, &p) in seeds.iter().enumerate() {
        let mut cell = bbox.clone();
        let mut ring = 0usize;
        loop {
            let max_r2 = cell.iter().map(|v| (v - p).norm_squared()).fold(0.0, f64::max);
            let ring_min = grid.ring_min_distance(p, ring);
            if ring_min * ring_min > 4.0 * max_r2 {
                break;
            }
            let mut cands = grid.ring_members(p, ring);
            cands.sort_by(|&a, &b| {
                let da = (points[a] - p).norm_squared();
                let db = (points[b] - p).norm_squared();
                da.partial_cmp(&db).unwrap().then(a.cmp(&b))
            });
            for idx in cands {
                if idx == i {
                    continue;
                }
                let q = points[idx];
                let d2 = (q - p).norm_squared();
                let max_r2 = cell.iter().map(|v| (v - p).norm_squared()).fold(0.0, f64::max);
                if d2 > 4.0 * max_r2 {
                    break;
                }
                cell = clip_halfplane(&cell, p, q);
                if cell.len() < 3 {
                    return Err(Error::MeshGeneration(format!("cell {i} collapsed")));
                }
            }
            ring += 1;
            if ring > grid.max_ring() {
                break;
            }
        }
        cells.push(cell);
    }
    Ok(cells)
}

/// Keeps the part of `poly` closer to `p` than to `q`.
fn clip_halfplane(poly: &[Vec2], p: Vec2, q: Vec2) -> Vec<Vec2> {
    let m = 0.5 * (p + q);
    let n = q - p;
    let side = |v: Vec2| (v - m).dot(&n);
    let len = poly.len();
    let mut out = Vec::with_capacity(len + 2);
    for i in 0..len {
        let a = poly[i];
        let b = poly[(i + 1) % len];
        let sa = side(a);
        let sb = side(b);
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
            let t = sa / (sa - sb);
            out.push(a + t * (b - a));
        }
    }
    out
}

struct PointGrid {
    cell: f64,
    origin: Vec2,
    nx: usize,
    ny: usize,
    bins: Vec<Vec<usize>>,
}

impl PointGrid {
    fn build(points: &[Vec2], domain: &DomainSpec) -> Self {
        let (lo, hi) = domain.bounding_box();
        let margin = (hi - lo).norm();
        let origin = lo - Vec2::new(margin, margin);
        let extent = hi + Vec2::new(margin, margin) - origin;
        let target = (points.len() as f64).sqrt().max(1.0);
        let cell = (extent.x.max(extent.y) / target).max(1e-12);
        let nx = (extent.x / cell).ceil() as usize + 1;
        let ny = (extent.y / cell).ceil() as usize + 1;
        let mut bins = vec![Vec::new(); nx * ny];
        for (i, p) in points.iter().enumerate() {
            let (bx, by) = Self::bin_of(origin, cell, nx, ny, *p);
            bins[by * nx + bx].push(i);
        }
        PointGrid { cell, origin, nx, ny, bins }
    }

    fn bin_of(origin: Vec2, cell: f64, nx: usize, ny: usize, p: Vec2) -> (usize, usize) {
        let bx = (((p.x - origin.x) / cell).floor() as isize).clamp(0, nx as isize - 1) as usize;
        let by = (((p.y - origin.y) / cell).floor() as isize).clamp(0, ny as isize - 1) as usize;
        (bx, by)
    }

    fn max_ring(&self) -> usize {
        self.nx.max(self.ny)
    }

    /// Lower bound on the distance from `p` to any point in ring `k`.
    fn ring_min_distance(&self, _p: Vec2, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            (k as f64 - 1.0) * self.cell
        }
    }

    /// Indices stored in the square ring `k` around the bin of `p`.
    fn ring_members(&self, p: Vec2, k: usize) -> Vec<usize> {
        let (bx, by) = Self::bin_of(self.origin, self.cell, self.nx, self.ny, p);
        let mut out = Vec::new();
        let k = k as isize;
        let (bx, by) = (bx as isize, by as isize);
        for dy in -k..=k {
            for dx in -k..=k {
                if dx.abs().max(dy.abs()) != k {
                    continue;
                }
                let x = bx + dx;
                let y = by + dy;
                if x < 0 || y < 0 || x >= self.nx as isize || y >= self.ny as isize {
                    continue;
                }
                out.extend_from_slice(&self.bins[y as usize * self.nx + x as usize]);
            }
        }
        out
    }
}

fn weighted_centroid(cell: &[Vec2], density: &DensityField) -> Vec2 {
    let anchor = geo::polygon_centroid(cell);
    let n = cell.len();
    let mut wsum = 0.0;
    let mut csum = Vec2::zeros();
    for i in 0..n {
        let a = cell[i];
        let b = cell[(i + 1) % n];
        let tri_area = 0.5 * geo::cross(a - anchor, b - anchor);
        let mids = [0.5 * (anchor + a), 0.5 * (a + b), 0.5 * (b + anchor)];
        for m in mids {
            let w = tri_area / 3.0 * density.eval(m);
            wsum += w;
            csum += w * m;
        }
    }
    if wsum.abs() < f64::MIN_POSITIVE {
        anchor
    } else {
        csum / wsum
    }
}

/// Merges coincident cell corners into shared mesh nodes.
fn cells_to_mesh(cells: &[Vec<Vec2>], diam: f64) -> Result<PolyMesh> {
    use std::collections::HashMap;
    let tol = 1e-9 * diam;
    let q = tol.max(1e-300);
    let mut nodes: Vec<Vec2> = Vec::new();
    let mut lookup: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let mut elements = Vec::with_capacity(cells.len());
    for cell in cells {
        let mut loop_ = Vec::with_capacity(cell.len());
        for &p in cell {
            let key = ((p.x / q).round() as i64, (p.y / q).round() as i64);
            let mut found = None;
            'search: for dx in -1..=1i64 {
                for dy in -1..=1i64 {
                    if let Some(ids) = lookup.get(&(key.0 + dx, key.1 + dy)) {
                        for &id in ids {
                            if (nodes[id] - p).norm() <= tol {
                                found = Some(id);
                                break 'search;
                            }
                        }
                    }
                }
            }
            let id = found.unwrap_or_else(|| {
                nodes.push(p);
                lookup.entry(key).or_default().push(nodes.len() - 1);
                nodes.len() - 1
            });
            if loop_.last() != Some(&id) {
                loop_.push(id);
            }
        }
        while loop_.len() > 1 && loop_.first() == loop_.last() {
            loop_.pop();
        }
        if loop_.len() < 3 {
            return Err(Error::MeshGeneration("cell degenerated to fewer than 3 nodes".into()));
        }
        elements.push(loop_);
    }
    Ok(PolyMesh::new(nodes, elements))
}

/// Contracts edges much shorter than the local cell scale. Keeps the mesh
/// conforming by performing the contraction on global node indices; a merged
/// node snaps back onto the domain boundary whenever either endpoint sat on
/// it, so boundary lines stay intact for edge selectors.
fn collapse_short_edges(mesh: &mut PolyMesh, rel_tol: f64, domain: &DomainSpec) {
    let boundary_tol = 1e-6 * domain.diameter();
    for _pass in 0..3 {
        let mut parent: Vec<usize> = (0..mesh.nodes.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            let mut i = i;
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut any = false;
        for e in 0..mesh.elements.len() {
            if mesh.elements[e].len() <= 3 {
                continue;
            }
            let scale = rel_tol * mesh.element_area(e).abs().sqrt();
            let loop_ = mesh.elements[e].clone();
            let n = loop_.len();
            for i in 0..n {
                let a = find(&mut parent, loop_[i]);
                let b = find(&mut parent, loop_[(i + 1) % n]);
                if a == b {
                    continue;
                }
                if (mesh.nodes[a] - mesh.nodes[b]).norm() < scale {
                    let da = domain.signed_distance(mesh.nodes[a]).abs();
                    let db = domain.signed_distance(mesh.nodes[b]).abs();
                    let mut merged = 0.5 * (mesh.nodes[a] + mesh.nodes[b]);
                    if da <= boundary_tol && db > boundary_tol {
                        merged = mesh.nodes[a];
                    } else if db <= boundary_tol && da > boundary_tol {
                        merged = mesh.nodes[b];
                    } else if da <= boundary_tol && db <= boundary_tol {
                        for _ in 0..3 {
                            let d = domain.signed_distance(merged);
                            if d.abs() <= 1e-12 * boundary_tol {
                                break;
                            }
                            merged -= d * domain.sdf_gradient(merged);
                        }
                    }
                    let target = a.min(b);
                    let other = a.max(b);
                    mesh.nodes[target] = merged;
                    parent[other] = target;
                    any = true;
                }
            }
        }
        if !any {
            return;
        }
        let roots: Vec<usize> = (0..mesh.nodes.len()).map(|i| find(&mut parent, i)).collect();
        let mut remap = vec![usize::MAX; mesh.nodes.len()];
        let mut new_nodes = Vec::new();
        for (i, &r) in roots.iter().enumerate() {
            if r == i {
                remap[i] = new_nodes.len();
                new_nodes.push(mesh.nodes[i]);
            }
        }
        for loop_ in &mut mesh.elements {
            let mut rebuilt: Vec<usize> = loop_.iter().map(|&i| remap[roots[i]]).collect();
            rebuilt.dedup();
            while rebuilt.len() > 1 && rebuilt.first() == rebuilt.last() {
                rebuilt.pop();
            }
            *loop_ = rebuilt;
        }
        mesh.nodes = new_nodes;
        mesh.recenter();
    }
}

/// Pulls vertices that ended up marginally outside back onto the boundary.
fn project_boundary_nodes(mesh: &mut PolyMesh, domain: &DomainSpec) {
    for p in &mut mesh.nodes {
        for _ in 0..4 {
            let d = domain.signed_distance(*p);
            if d <= 0.0 {
                break;
            }
            *p -= d * domain.sdf_gradient(*p);
        }
    }
}

/// A point strictly inside a simple polygon, for centroid fallback.
fn interior_fallback(pts: &[Vec2]) -> Vec2 {
    let n = pts.len();
    // try triangle midpoints of the fan with the best interior score
    let mut best = (f64::NEG_INFINITY, geo::polygon_centroid(pts));
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let c = pts[(i + 2) % n];
        let m = (a + b + c) / 3.0;
        if geo::point_in_polygon(m, pts) {
            let score = (m - geo::polygon_centroid(pts)).norm();
            if -score > best.0 {
                best = (-score, m);
            }
        }
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{decompose_into_sections, validate_mesh};

    #[test]
    fn one_seed_in_the_unit_square_yields_the_square() {
        let domain = DomainSpec::unit_square();
        let mesh =
            generate_voronoi_mesh(&domain, 1, &DensityField::uniform(), 20, 42).unwrap();
        assert_eq!(mesh.elements.len(), 1);
        assert_eq!(mesh.elements[0].len(), 4);
        assert!((mesh.total_area() - 1.0).abs() < 1e-9);
        assert!((mesh.scaling_centers[0] - Vec2::new(0.5, 0.5)).norm() < 1e-7);
    }

    #[test]
    fn disk_mesh_with_28_cells() {
        let domain = DomainSpec::circle(0.0, 0.0, 1.0);
        let mesh =
            generate_voronoi_mesh(&domain, 28, &DensityField::uniform(), 40, 7).unwrap();
        assert_eq!(mesh.elements.len(), 28);
        let report = validate_mesh(&mesh);
        assert!(report.is_empty(), "{report:?}");
        let tol = 1e-9 * domain.diameter();
        for p in &mesh.nodes {
            assert!(domain.signed_distance(*p) <= tol);
        }
        // straight-edged cover of the disk loses only the chord slivers
        let area = mesh.total_area();
        assert!(area > 0.95 * std::f64::consts::PI && area < std::f64::consts::PI);
    }

    #[test]
    fn l_bracket_mesh_respects_holes() {
        let domain = DomainSpec::l_bracket();
        let density = DensityField {
            attractors: vec![(0.5, 0.5, 0.3), (0.5, 5.5, 0.3), (3.5, 5.5, 0.3)],
            background: 0.2,
        };
        let mesh = generate_voronoi_mesh(&domain, 300, &density, 30, 11).unwrap();
        assert_eq!(mesh.elements.len(), 300);
        let tol = 1e-9 * domain.diameter();
        for p in &mesh.nodes {
            assert!(
                domain.signed_distance(*p) <= tol,
                "vertex ({}, {}) outside domain by {}",
                p.x,
                p.y,
                domain.signed_distance(*p)
            );
        }
        for e in 0..mesh.elements.len() {
            decompose_into_sections(&mesh, e).unwrap();
        }
    }

    #[test]
    fn lloyd_movement_mostly_decreases() {
        let domain = DomainSpec::unit_square();
        let (_, history) = generate_voronoi_mesh_detailed(
            &domain,
            60,
            &DensityField::uniform(),
            60,
            3,
        )
        .unwrap();
        assert!(history.len() >= 5);
        let mut non_increasing = 0;
        for w in history.windows(2).skip(1) {
            if w[1] <= w[0] * (1.0 + 1e-9) {
                non_increasing += 1;
            }
        }
        let frac = non_increasing as f64 / (history.len() - 2).max(1) as f64;
        assert!(frac >= 0.95, "only {frac:.2} of Lloyd steps were non-increasing");
    }

    #[test]
    fn cells_are_convex_before_projection() {
        let domain = DomainSpec::unit_square();
        let mesh =
            generate_voronoi_mesh(&domain, 40, &DensityField::uniform(), 30, 9).unwrap();
        for e in 0..mesh.elements.len() {
            let pts = mesh.element_points(e);
            assert!(geo::is_convex(&pts, 1e-6), "cell {e} is not convex");
        }
    }

    #[test]
    fn short_edge_collapse_preserves_boundary_lines() {
        // a collapsed edge with one endpoint on a domain line must keep that
        // endpoint, or line selectors lose load edges
        let domain = DomainSpec::l_bracket();
        for seed in [7u64, 42] {
            let mesh =
                generate_voronoi_mesh(&domain, 1500, &DensityField::uniform(), 30, seed)
                    .unwrap();
            let tol = 1e-8 * mesh.diameter();
            let length: f64 = mesh
                .boundary_edges()
                .into_iter()
                .filter(|&(a, b)| {
                    (mesh.nodes[a].x - 4.0).abs() <= tol && (mesh.nodes[b].x - 4.0).abs() <= tol
                })
                .map(|(a, b)| (mesh.nodes[a] - mesh.nodes[b]).norm())
                .sum();
            assert!(
                (length - 1.0).abs() < 1e-9,
                "seed {seed}: load edge length {length}, expected 1"
            );
        }
    }

    #[test]
    fn zero_elements_is_an_argument_error() {
        let domain = DomainSpec::unit_square();
        let err = generate_voronoi_mesh(&domain, 0, &DensityField::uniform(), 10, 1).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn empty_domain_fails_with_diagnostics() {
        // hole swallows the whole disk: nothing to seed
        let mut domain = DomainSpec::circle(0.0, 0.0, 1.0);
        domain.holes.push(crate::mesh::domain::Circle { center: [0.0, 0.0], radius: 1.5 });
        let err = generate_voronoi_mesh(&domain, 10, &DensityField::uniform(), 10, 1).unwrap_err();
        match err {
            Error::MeshGeneration(msg) => assert!(msg.contains("3 attempts"), "{msg}"),
            other => panic!("expected generation failure, got {other}"),
        }
    }
}
