//! Output writers: legacy-ASCII VTK fields, CSV tables, and simple SVG charts.

use crate::analysis::StressResultants;
use crate::assembly::FieldResult;
use crate::error::Result;
use crate::mesh::PolyMesh;
use std::fmt::Write as _;
use std::path::Path;

/// Formats a float so that repeated runs emit identical bytes.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.17e}")
    }
}

/// Legacy ASCII unstructured grid with polygon cells, nodal plate DOFs, and
/// per-cell stress resultants.
pub fn write_vtk(
    path: &Path,
    mesh: &PolyMesh,
    result: Option<&FieldResult>,
    cell_stresses: Option<&[StressResultants]>,
) -> Result<()> {
    let mut out = String::new();
    out.push_str("# vtk DataFile Version 3.0\n");
    out.push_str("plateforge field output\n");
    out.push_str("ASCII\nDATASET UNSTRUCTURED_GRID\n");
    writeln!(out, "POINTS {} double", mesh.nodes.len()).unwrap();
    for p in &mesh.nodes {
        writeln!(out, "{} {} 0", fmt_f64(p.x), fmt_f64(p.y)).unwrap();
    }
    let list_len: usize = mesh.elements.iter().map(|e| e.len() + 1).sum();
    writeln!(out, "CELLS {} {}", mesh.elements.len(), list_len).unwrap();
    for loop_ in &mesh.elements {
        write!(out, "{}", loop_.len()).unwrap();
        for &i in loop_ {
            write!(out, " {i}").unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "CELL_TYPES {}", mesh.elements.len()).unwrap();
    for _ in &mesh.elements {
        out.push_str("7\n"); // VTK_POLYGON
    }
    if let Some(result) = result {
        writeln!(out, "POINT_DATA {}", mesh.nodes.len()).unwrap();
        let l = result.dof_map.layout;
        for (name, off) in [("w", l.w()), ("beta_x", l.bx()), ("beta_y", l.by())] {
            writeln!(out, "SCALARS {name} double 1\nLOOKUP_TABLE default").unwrap();
            for n in 0..mesh.nodes.len() {
                writeln!(out, "{}", fmt_f64(result.node_value(n, off))).unwrap();
            }
        }
    }
    if let Some(stresses) = cell_stresses {
        writeln!(out, "CELL_DATA {}", stresses.len()).unwrap();
        let comps: [(&str, fn(&StressResultants) -> f64); 5] = [
            ("m_xx", |s| s.m[0]),
            ("m_yy", |s| s.m[1]),
            ("m_xy", |s| s.m[2]),
            ("q_x", |s| s.q[0]),
            ("q_y", |s| s.q[1]),
        ];
        for (name, get) in comps {
            writeln!(out, "SCALARS {name} double 1\nLOOKUP_TABLE default").unwrap();
            for s in stresses {
                writeln!(out, "{}", fmt_f64(get(s))).unwrap();
            }
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// CSV with a header row; floats formatted deterministically.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// One named series of (x, y) points.
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

/// Minimal SVG line chart; axes may be logarithmic.
pub fn write_svg_chart(
    path: &Path,
    title: &str,
    series: &[Series],
    log_x: bool,
    log_y: bool,
) -> Result<()> {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const M: f64 = 60.0;
    let tx = |v: f64| if log_x { v.log10() } else { v };
    let ty = |v: f64| if log_y { v.log10() } else { v };
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for s in series {
        for &(x, y) in &s.points {
            if (!log_x || x > 0.0) && (!log_y || y > 0.0) {
                xs.push(tx(x));
                ys.push(ty(y));
            }
        }
    }
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let px = |x: f64| M + (tx(x) - x0) / (x1 - x0).max(1e-300) * (W - 2.0 * M);
    let py = |y: f64| H - M - (ty(y) - y0) / (y1 - y0).max(1e-300) * (H - 2.0 * M);

    let palette = ["#00549f", "#cc071e", "#57ab27", "#f6a800", "#612158", "#0098a1"];
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{title}</text>"#,
        W / 2.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<line x1="{M}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        H - M,
        W - M,
        H - M
    )
    .unwrap();
    writeln!(out, r#"<line x1="{M}" y1="{M}" x2="{M}" y2="{}" stroke="black"/>"#, H - M).unwrap();
    for (i, s) in series.iter().enumerate() {
        let color = palette[i % palette.len()];
        let mut d = String::new();
        for (k, &(x, y)) in s.points.iter().enumerate() {
            if (log_x && x <= 0.0) || (log_y && y <= 0.0) {
                continue;
            }
            let cmd = if k == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{:.2} {:.2} ", px(x), py(y)).unwrap();
        }
        writeln!(out, r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="1.5"/>"#)
            .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="{color}">{}</text>"#,
            W - M + 4.0,
            M + 16.0 * i as f64,
            s.name
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    std::fs::write(path, out)?;
    Ok(())
}

fn bounds(vals: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::six_polygon_cantilever;

    #[test]
    fn vtk_has_polygon_cells() {
        let mesh = six_polygon_cantilever();
        let dir = std::env::temp_dir().join("plateforge_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("mesh.vtk");
        write_vtk(&path, &mesh, None, None).unwrap();
        let body = std::fs::read_to_string(&path).unwrap();
        assert!(body.contains("DATASET UNSTRUCTURED_GRID"));
        assert!(body.contains("POINTS 11 double"));
        assert!(body.contains("CELL_TYPES 6"));
        assert!(body.lines().filter(|l| *l == "7").count() >= 6);
    }

    #[test]
    fn csv_is_deterministic() {
        let dir = std::env::temp_dir().join("plateforge_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let a = dir.join("a.csv");
        let b = dir.join("b.csv");
        let rows = vec![vec![1.0, 2.5e-3], vec![0.0, -1.0 / 3.0]];
        write_csv(&a, &["x", "y"], &rows).unwrap();
        write_csv(&b, &["x", "y"], &rows).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }

    #[test]
    fn svg_chart_renders_series() {
        let dir = std::env::temp_dir().join("plateforge_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("chart.svg");
        let series = vec![Series {
            name: "errors".into(),
            points: vec![(0.5, 0.25), (0.25, 0.0625), (0.125, 0.015625)],
        }];
        write_svg_chart(&path, "convergence", &series, true, true).unwrap();
        let body = std::fs::read_to_string(&path).unwrap();
        assert!(body.starts_with("<svg"));
        assert!(body.contains("errors"));
    }
}
