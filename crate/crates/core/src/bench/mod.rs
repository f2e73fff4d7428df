//! Benchmark runner: named cases with default parameters, stored reference
//! values, and pass/fail tolerances, emitting CSV, JSON, SVG, and VTK
//! artifacts.

pub mod cases;
pub mod reference;

pub use cases::{CantileverMesh, MeshKind, SweepPoint};
pub use reference::ReferenceData;

use crate::assembly::Formulation;
use crate::error::{Error, Result};
use crate::io::{write_csv, write_svg_chart, Series};
use crate::material::ThicknessMode;
use crate::mesh::ScalingCenterPolicy;
use crate::quadrature::QuadratureScheme;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// The named benchmark cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseId {
    ZeroEnergy,
    CantileverMoment,
    CantileverUdl,
    ClampedSquareUdl,
    Distortion,
    PoissonLocking,
    SquareLoadFunction,
    SimplySupported,
    Circular,
    LBracket,
    EnergyNorm,
}

impl CaseId {
    pub const ALL: [CaseId; 11] = [
        CaseId::ZeroEnergy,
        CaseId::CantileverMoment,
        CaseId::CantileverUdl,
        CaseId::ClampedSquareUdl,
        CaseId::Distortion,
        CaseId::PoissonLocking,
        CaseId::SquareLoadFunction,
        CaseId::SimplySupported,
        CaseId::Circular,
        CaseId::LBracket,
        CaseId::EnergyNorm,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseId::ZeroEnergy => "zero-energy",
            CaseId::CantileverMoment => "cantilever-moment",
            CaseId::CantileverUdl => "cantilever-udl",
            CaseId::ClampedSquareUdl => "clamped-square-udl",
            CaseId::Distortion => "distortion",
            CaseId::PoissonLocking => "poisson-locking",
            CaseId::SquareLoadFunction => "square-load-function",
            CaseId::SimplySupported => "simply-supported",
            CaseId::Circular => "circular",
            CaseId::LBracket => "l-bracket",
            CaseId::EnergyNorm => "energy-norm",
        }
    }
}

impl std::str::FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .iter()
            .find(|c| c.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown case id '{s}'")))
    }
}

/// Optional parameter overrides shared by all cases.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CaseOverrides {
    pub t: Option<Vec<f64>>,
    pub mesh: Option<MeshKind>,
    pub n: Option<Vec<usize>>,
    pub formulation: Option<Formulation>,
    pub quadrature: Option<QuadratureScheme>,
    pub thickness_mode: Option<ThicknessMode>,
    pub scaling_centers: Option<ScalingCenterPolicy>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

/// One tolerance check of a run.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn abs(name: impl Into<String>, value: f64, expected: f64, tol: f64) -> Self {
        CheckOutcome {
            name: name.into(),
            value,
            expected,
            tolerance: tol,
            passed: (value - expected).abs() <= tol,
        }
    }

    fn rel(name: impl Into<String>, value: f64, expected: f64, tol: f64) -> Self {
        CheckOutcome {
            name: name.into(),
            value,
            expected,
            tolerance: tol,
            passed: (value - expected).abs() <= tol * expected.abs(),
        }
    }

    fn le(name: impl Into<String>, value: f64, bound: f64) -> Self {
        CheckOutcome {
            name: name.into(),
            value,
            expected: bound,
            tolerance: 0.0,
            passed: value <= bound,
        }
    }

    fn ge(name: impl Into<String>, value: f64, bound: f64) -> Self {
        CheckOutcome {
            name: name.into(),
            value,
            expected: bound,
            tolerance: 0.0,
            passed: value >= bound,
        }
    }

    fn range(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        CheckOutcome {
            name: name.into(),
            value,
            expected: 0.5 * (lo + hi),
            tolerance: 0.5 * (hi - lo),
            passed: value >= lo && value <= hi,
        }
    }
}

/// Tabular results plus checks of a finished case.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub case: String,
    pub params: serde_json::Value,
    pub checks: Vec<CheckOutcome>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub wall_seconds: f64,
    pub passed: bool,
    #[serde(skip)]
    pub artifacts: Vec<PathBuf>,
}

impl RunReport {
    fn new(case: CaseId, params: serde_json::Value) -> Self {
        RunReport {
            case: case.name().to_string(),
            params,
            checks: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            wall_seconds: 0.0,
            passed: true,
            artifacts: Vec::new(),
        }
    }

    fn finish(mut self, start: Instant, out_dir: Option<&Path>) -> Result<Self> {
        self.wall_seconds = start.elapsed().as_secs_f64();
        self.passed = self.checks.iter().all(|c| c.passed);
        if let Some(dir) = out_dir {
            std::fs::create_dir_all(dir)?;
            let csv = dir.join(format!("{}.csv", self.case));
            let headers: Vec<&str> = self.columns.iter().map(|s| s.as_str()).collect();
            write_csv(&csv, &headers, &self.rows)?;
            self.artifacts.push(csv);
            let json = dir.join(format!("{}.json", self.case));
            std::fs::write(&json, serde_json::to_string_pretty(&self)?)?;
            self.artifacts.push(json);
        }
        Ok(self)
    }
}

fn sweep_series(points: &[SweepPoint]) -> Vec<(f64, f64)> {
    points.iter().map(|p| (p.dofs as f64, p.value)).collect()
}

/// The finest `keep` entries of an (h, error) sweep ordered coarse to fine;
/// rate fits run on the asymptotic tail so the coarse pre-asymptotic meshes
/// do not bias the slope.
fn fit_tail(points: &[(f64, f64)], keep: usize) -> &[(f64, f64)] {
    let start = points.len().saturating_sub(keep.max(3));
    &points[start..]
}

/// Probe table: one row per probe point plus a mean summary row.
fn write_probe_csv(
    dir: &Path,
    case: &str,
    rows: &[([f64; 2], [f64; 3])],
) -> Result<PathBuf> {
    let mut table: Vec<Vec<f64>> = rows
        .iter()
        .map(|(at, v)| vec![at[0], at[1], v[0], v[1], v[2]])
        .collect();
    let n = rows.len().max(1) as f64;
    let mut mean = vec![0.0; 5];
    for row in &table {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v / n;
        }
    }
    table.push(mean);
    let path = dir.join(format!("{case}-probes.csv"));
    write_csv(&path, &["x", "y", "w", "beta_x", "beta_y"], &table)?;
    Ok(path)
}

/// Runs one benchmark case with its default setup merged with overrides.
pub fn run_benchmark(
    case: CaseId,
    overrides: &CaseOverrides,
    out_dir: Option<&Path>,
) -> Result<RunReport> {
    let start = Instant::now();
    let reference = reference::load()?;
    if let Some(threads) = overrides.threads {
        crate::assembly::system::set_default_threads(threads);
    }
    let params = serde_json::to_value(overrides)?;
    let mut report = RunReport::new(case, params);
    match case {
        CaseId::ZeroEnergy => {
            report.columns = vec!["sides".into(), "zero_count".into(), "lambda_max".into()];
            let mut spectra_rows: Vec<Vec<f64>> = Vec::new();
            for (n, spectrum) in cases::zero_energy_spectra()? {
                for (i, ev) in spectrum.eigenvalues.iter().enumerate() {
                    spectra_rows.push(vec![n as f64, (i + 1) as f64, *ev]);
                }
                let lmax = spectrum.eigenvalues.last().copied().unwrap_or(0.0);
                report.rows.push(vec![n as f64, spectrum.zero_count as f64, lmax]);
                report.checks.push(CheckOutcome::abs(
                    format!("{n}-gon zero modes"),
                    spectrum.zero_count as f64,
                    3.0,
                    0.0,
                ));
                let expected: Option<&Vec<f64>> = match n {
                    3 => Some(&reference.zero_energy_triangle),
                    4 => Some(&reference.zero_energy_quadrangle),
                    _ => None,
                };
                if let Some(expected) = expected {
                    let nonzero: Vec<f64> = spectrum
                        .eigenvalues
                        .iter()
                        .copied()
                        .filter(|l| l.abs() > spectrum.tol_rel * lmax)
                        .collect();
                    let mut worst: f64 = 0.0;
                    for (got, want) in nonzero.iter().zip(expected) {
                        worst = worst.max(((got - want) / want).abs());
                    }
                    if nonzero.len() != expected.len() {
                        worst = f64::INFINITY;
                    }
                    report.checks.push(CheckOutcome::le(
                        format!("{n}-gon spectrum deviation"),
                        worst,
                        1e-3,
                    ));
                }
            }
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                let path = dir.join("zero-energy-spectra.csv");
                write_csv(&path, &["sides", "mode", "eigenvalue"], &spectra_rows)?;
                report.artifacts.push(path);
            }
        }
        CaseId::CantileverMoment => {
            let ts = overrides.t.clone().unwrap_or(vec![1.0, 0.1, 0.01, 0.001]);
            report.columns =
                vec!["t".into(), "standard_err_pct".into(), "ans_err".into(), "sixpoly_err".into()];
            for &t in &ts {
                let std_err =
                    cases::cantilever_moment_error(CantileverMesh::OneQuad, Formulation::Standard, t)?;
                let ans_err =
                    cases::cantilever_moment_error(CantileverMesh::OneQuad, Formulation::Ans, t)?;
                let poly_err =
                    cases::cantilever_moment_error(CantileverMesh::SixPoly, Formulation::Ans, t)?;
                report.rows.push(vec![t, 100.0 * std_err, ans_err, poly_err]);
                if let Some(expected) = reference.standard_error_pct(t) {
                    report.checks.push(CheckOutcome::abs(
                        format!("standard error % (t={t})"),
                        100.0 * std_err,
                        expected,
                        0.5,
                    ));
                }
                report.checks.push(CheckOutcome::le(
                    format!("assumed-strain |error| (t={t})"),
                    ans_err.abs(),
                    1e-7,
                ));
                report.checks.push(CheckOutcome::le(
                    format!("six-polygon |error| (t={t})"),
                    poly_err.abs(),
                    1e-6,
                ));
            }
        }
        CaseId::CantileverUdl => {
            let ts = overrides.t.clone().unwrap_or(vec![1.0, 0.1, 0.01, 0.001]);
            let ns = overrides.n.clone().unwrap_or(vec![1, 2, 4, 8, 16, 32]);
            report.columns = vec!["t".into(), "n".into(), "dofs".into(), "w_ratio".into()];
            let mut chart = Vec::new();
            for &t in &ts {
                let sweep =
                    cases::cantilever_udl_sweep(t, Formulation::Ans, QuadratureScheme::Full, &ns)?;
                for p in &sweep {
                    report.rows.push(vec![t, p.n as f64, p.dofs as f64, p.value]);
                }
                let last = sweep.last().unwrap();
                report.checks.push(CheckOutcome::abs(
                    format!("final w/w_ref (t={t})"),
                    last.value,
                    1.0,
                    0.005,
                ));
                chart.push(Series {
                    name: format!("t={t}"),
                    points: sweep_series(&sweep),
                });
            }
            // formulation comparison at t = 0.01 over the plotted sweep range;
            // far beyond it the under-integrated variants cross over because
            // they happen to reproduce the beam solution superconvergently
            let ns: Vec<usize> = ns.iter().copied().filter(|&n| n <= 16).collect();
            let ans =
                cases::cantilever_udl_sweep(0.01, Formulation::Ans, QuadratureScheme::Full, &ns)?;
            let red = cases::cantilever_udl_sweep(
                0.01,
                Formulation::Standard,
                QuadratureScheme::Reduced,
                &ns,
            )?;
            let sel = cases::cantilever_udl_sweep(
                0.01,
                Formulation::Standard,
                QuadratureScheme::SelectiveReduced,
                &ns,
            )?;
            for ((a, r), s) in ans.iter().zip(&red).zip(&sel) {
                let ea = (a.value - 1.0).abs();
                report.checks.push(CheckOutcome::le(
                    format!("ans <= reduced error (n={})", a.n),
                    ea,
                    (r.value - 1.0).abs() + 1e-12,
                ));
                report.checks.push(CheckOutcome::le(
                    format!("ans <= selective error (n={})", a.n),
                    ea,
                    (s.value - 1.0).abs() + 1e-12,
                ));
            }
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                let svg = dir.join("cantilever-udl.svg");
                write_svg_chart(&svg, "cantilever convergence", &chart, true, false)?;
                report.artifacts.push(svg);
            }
        }
        CaseId::ClampedSquareUdl => {
            let seed = overrides.seed.unwrap_or(2024);
            let ns = overrides.n.clone().unwrap_or(vec![2, 4, 8, 16]);
            report.columns =
                vec!["kind".into(), "n".into(), "elements".into(), "w_center".into()];
            let w_ref = reference.clamped_square_center_w;
            let mut finals = Vec::new();
            for (ki, kind) in [MeshKind::Quad, MeshKind::Tri, MeshKind::Poly]
                .into_iter()
                .enumerate()
            {
                let mut last = None;
                for &n in &ns {
                    let p = cases::clamped_square_center(kind, n, seed)?;
                    report.rows.push(vec![ki as f64, n as f64, p.n_elements as f64, p.value]);
                    last = Some(p);
                }
                finals.push((kind, last.unwrap()));
            }
            let quad16 = finals
                .iter()
                .find(|(k, _)| *k == MeshKind::Quad)
                .map(|(_, p)| p.value)
                .unwrap();
            report.checks.push(CheckOutcome::rel(
                "16x16 quad center deflection",
                quad16,
                w_ref,
                0.01,
            ));
            let err =
                |v: f64| (v - w_ref).abs();
            let eq = err(finals[0].1.value);
            let et = err(finals[1].1.value);
            let ep = err(finals[2].1.value);
            report.checks.push(CheckOutcome::le("quad error <= poly error", eq, ep + 1e-12));
            report.checks.push(CheckOutcome::le("poly error <= tri error", ep, et + 1e-12));
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                let probes: Vec<([f64; 2], [f64; 3])> =
                    finals.iter().map(|(_, p)| (p.at, p.probe)).collect();
                report.artifacts.push(write_probe_csv(dir, "clamped-square-udl", &probes)?);
                let (mesh, field, _) =
                    cases::clamped_square_solution(MeshKind::Quad, *ns.last().unwrap(), seed)?;
                let mat = cases::clamped_square_material();
                let stresses =
                    crate::analysis::cell_stresses(&mesh, &field, &mat, Formulation::Ans)?;
                let vtk = dir.join("clamped-square-udl.vtk");
                crate::io::write_vtk(&vtk, &mesh, Some(&field), Some(&stresses))?;
                report.artifacts.push(vtk);
            }
        }
        CaseId::Distortion => {
            let s_values: Vec<f64> = (-14..=14).map(|s| s as f64).collect();
            let mut s_all = s_values.clone();
            for extra in [-12.5, 12.5] {
                s_all.push(extra);
            }
            s_all.sort_by(|a, b| a.partial_cmp(b).unwrap());
            report.columns =
                vec!["s".into(), "w_fixed".into(), "w_moving".into(), "fixed_singular".into()];
            let fixed = cases::distortion_sweep(ScalingCenterPolicy::Fixed, &s_all);
            let moving = cases::distortion_sweep(ScalingCenterPolicy::Moving, &s_all);
            for (f, m) in fixed.iter().zip(&moving) {
                report.rows.push(vec![
                    f.s,
                    f.w.unwrap_or(f64::NAN),
                    m.w.unwrap_or(f64::NAN),
                    if f.w.is_none() { 1.0 } else { 0.0 },
                ]);
            }
            let at = |rows: &[cases::DistortionRow], s: f64| {
                rows.iter().find(|r| (r.s - s).abs() < 1e-12).cloned()
            };
            for s in [-12.5, 12.5] {
                let f = at(&fixed, s).unwrap();
                report.checks.push(CheckOutcome::abs(
                    format!("fixed centers singular at s={s}"),
                    if f.w.is_none() { 1.0 } else { 0.0 },
                    1.0,
                    0.0,
                ));
                let m = at(&moving, s).unwrap();
                report.checks.push(CheckOutcome::abs(
                    format!("moving centers solve at s={s}"),
                    if m.w.is_some() { 1.0 } else { 0.0 },
                    1.0,
                    0.0,
                ));
            }
            let f0 = at(&fixed, 0.0).unwrap().w.unwrap();
            let m0 = at(&moving, 0.0).unwrap().w.unwrap();
            report.checks.push(CheckOutcome::abs(
                "policies agree at s=0",
                (f0 - m0).abs(),
                0.0,
                1e-10,
            ));
            report.checks.push(CheckOutcome::rel(
                "undistorted deflection vs series value",
                f0,
                reference.point_load_w_thin,
                0.15,
            ));
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                let to_series = |rows: &[cases::DistortionRow], name: &str| Series {
                    name: name.to_string(),
                    points: rows
                        .iter()
                        .filter_map(|r| r.w.map(|w| (r.s, w)))
                        .collect(),
                };
                let svg = dir.join("distortion.svg");
                write_svg_chart(
                    &svg,
                    "deflection vs distortion",
                    &[to_series(&fixed, "fixed centers"), to_series(&moving, "moving centers")],
                    false,
                    false,
                )?;
                report.artifacts.push(svg);
            }
        }
        CaseId::PoissonLocking => {
            let ns = overrides.n.clone().unwrap_or(vec![2, 4, 8, 16, 32]);
            report.columns =
                vec!["mode".into(), "nu".into(), "n".into(), "dofs".into(), "w_ratio".into()];
            let lin = cases::poisson_locking_sweep(ThicknessMode::Linear, 0.3, &ns)?;
            let con = cases::poisson_locking_sweep(ThicknessMode::Constant, 0.3, &ns)?;
            for p in &lin {
                report.rows.push(vec![0.0, 0.3, p.n as f64, p.dofs as f64, p.value]);
            }
            for p in &con {
                report.rows.push(vec![1.0, 0.3, p.n as f64, p.dofs as f64, p.value]);
            }
            report.checks.push(CheckOutcome::abs(
                "linear mode converges to the reference",
                lin.last().unwrap().value,
                1.0,
                0.01,
            ));
            report.checks.push(CheckOutcome::abs(
                "constant mode locks to the known fraction",
                con.last().unwrap().value,
                reference.poisson_constant_mode_ratio,
                0.01,
            ));
            let lin0 = cases::poisson_locking_sweep(ThicknessMode::Linear, 0.0, &ns)?;
            let con0 = cases::poisson_locking_sweep(ThicknessMode::Constant, 0.0, &ns)?;
            for (a, b) in lin0.iter().zip(&con0) {
                report.rows.push(vec![0.0, 0.0, a.n as f64, a.dofs as f64, a.value]);
                report.rows.push(vec![1.0, 0.0, b.n as f64, b.dofs as f64, b.value]);
                report.checks.push(CheckOutcome::abs(
                    format!("modes agree at nu=0 (n={})", a.n),
                    ((a.value - b.value) / b.value).abs(),
                    0.0,
                    1e-9,
                ));
            }
        }
        CaseId::SquareLoadFunction => {
            let ts = overrides.t.clone().unwrap_or(vec![0.2, 0.1, 0.001]);
            let ns = overrides.n.clone().unwrap_or((1..=10).map(|k| 2 * k).collect());
            report.columns =
                vec!["t".into(), "n".into(), "h".into(), "l2".into(), "h1s".into(), "energy".into()];
            let mut chart = Vec::new();
            for &t in &ts {
                let mut l2_pts = Vec::new();
                let mut h1_pts = Vec::new();
                for &n in &ns {
                    let norms = cases::square_load_norms(t, n, Formulation::Ans)?;
                    report.rows.push(vec![
                        t,
                        n as f64,
                        norms.h,
                        norms.l2_rel,
                        norms.h1s_rel,
                        norms.energy_rel,
                    ]);
                    l2_pts.push((norms.h, norms.l2_rel));
                    h1_pts.push((norms.h, norms.h1s_rel));
                }
                let l2_fit = crate::analysis::fit_convergence_rate(fit_tail(&l2_pts, 6))?;
                let h1_fit = crate::analysis::fit_convergence_rate(fit_tail(&h1_pts, 6))?;
                report.checks.push(CheckOutcome::range(
                    format!("L2 rate (t={t})"),
                    l2_fit.slope,
                    1.8,
                    2.2,
                ));
                report.checks.push(CheckOutcome::range(
                    format!("H1s rate (t={t})"),
                    h1_fit.slope,
                    0.8,
                    1.2,
                ));
                chart.push(Series { name: format!("L2 t={t}"), points: l2_pts });
                chart.push(Series { name: format!("H1s t={t}"), points: h1_pts });
            }
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                let svg = dir.join("square-load-function.svg");
                write_svg_chart(&svg, "error norms vs mesh size", &chart, true, true)?;
                report.artifacts.push(svg);
            }
        }
        CaseId::SimplySupported => {
            let ts = overrides.t.clone().unwrap_or(vec![1.0, 0.01]);
            let ns = overrides.n.clone().unwrap_or(vec![4, 8, 16, 32]);
            report.columns = vec!["t".into(), "n".into(), "coefficient".into()];
            let mut probes: Vec<([f64; 2], [f64; 3])> = Vec::new();
            for &t in &ts {
                let mut last = 0.0;
                for &n in &ns {
                    let p =
                        cases::simply_supported_coefficient(t, n, cases::SimpleSupport::Soft)?;
                    report.rows.push(vec![t, n as f64, p.value]);
                    last = p.value;
                    probes.push((p.at, p.probe));
                }
                if let Some(expected) = reference.ss_coefficient(t) {
                    report.checks.push(CheckOutcome::rel(
                        format!("coefficient (t={t})"),
                        last,
                        expected,
                        0.01,
                    ));
                }
            }
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                report.artifacts.push(write_probe_csv(dir, "simply-supported", &probes)?);
            }
        }
        CaseId::Circular => {
            let ts = overrides.t.clone().unwrap_or(vec![0.1, 0.2]);
            let ns = overrides
                .n
                .clone()
                .unwrap_or(vec![16, 32, 64, 128, 256, 512, 1024]);
            let seed = overrides.seed.unwrap_or(4242);
            report.columns =
                vec!["t".into(), "elements".into(), "h".into(), "l2".into(), "h1s".into()];
            let mut chart = Vec::new();
            for &t in &ts {
                let mut l2_pts = Vec::new();
                let mut h1_pts = Vec::new();
                for &n in &ns {
                    let norms = cases::circular_norms(t, n, seed)?;
                    report.rows.push(vec![t, n as f64, norms.h, norms.l2_rel, norms.h1s_rel]);
                    l2_pts.push((norms.h, norms.l2_rel));
                    h1_pts.push((norms.h, norms.h1s_rel));
                }
                let l2_fit = crate::analysis::fit_convergence_rate(fit_tail(&l2_pts, 5))?;
                let h1_fit = crate::analysis::fit_convergence_rate(fit_tail(&h1_pts, 5))?;
                report.checks.push(CheckOutcome::range(
                    format!("L2 rate (t={t})"),
                    l2_fit.slope,
                    1.8,
                    2.2,
                ));
                report.checks.push(CheckOutcome::range(
                    format!("H1s rate (t={t})"),
                    h1_fit.slope,
                    0.8,
                    1.2,
                ));
                chart.push(Series { name: format!("L2 t={t}"), points: l2_pts });
                chart.push(Series { name: format!("H1s t={t}"), points: h1_pts });
            }
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                let svg = dir.join("circular.svg");
                write_svg_chart(&svg, "circular plate error norms", &chart, true, true)?;
                report.artifacts.push(svg);
            }
        }
        CaseId::LBracket => {
            let seed = overrides.seed.unwrap_or(99);
            report.columns = vec![
                "variant".into(),
                "elements".into(),
                "dofs".into(),
                "w".into(),
                "m_xx".into(),
            ];
            let w_ref = reference.l_bracket_w;
            let ans500 = cases::l_bracket_case(Formulation::Ans, 500, false, seed)?;
            report.rows.push(vec![0.0, 500.0, ans500.dofs as f64, ans500.w, ans500.m_xx]);
            report.checks.push(CheckOutcome::ge(
                "assumed strain reaches the reference with 500 cells",
                ans500.w / w_ref,
                0.98,
            ));
            let fine = cases::l_bracket_case(Formulation::Ans, 3000, false, seed)?;
            let std2000 = cases::l_bracket_case(Formulation::Standard, 2000, false, seed)?;
            report.rows.push(vec![1.0, 2000.0, std2000.dofs as f64, std2000.w, std2000.m_xx]);
            report.checks.push(CheckOutcome::le(
                "unremedied formulation stays locked at 2000 cells",
                std2000.w / w_ref,
                0.20,
            ));
            report.checks.push(CheckOutcome::le(
                "unremedied formulation vs converged deflection",
                std2000.w / fine.w,
                0.20,
            ));
            let uni300 = cases::l_bracket_case(Formulation::Ans, 300, false, seed)?;
            let ref300 = cases::l_bracket_case(Formulation::Ans, 300, true, seed)?;
            report.rows.push(vec![2.0, 300.0, uni300.dofs as f64, uni300.w, uni300.m_xx]);
            report.rows.push(vec![3.0, 300.0, ref300.dofs as f64, ref300.w, ref300.m_xx]);
            report.checks.push(CheckOutcome::le(
                "density refinement helps the deflection",
                (ref300.w - w_ref).abs(),
                (uni300.w - w_ref).abs() + 1e-12,
            ));
            report.rows.push(vec![4.0, 3000.0, fine.dofs as f64, fine.w, fine.m_xx]);
            report.checks.push(CheckOutcome::range(
                "probe moment on the uniform 3000-cell mesh",
                fine.m_xx,
                450.0,
                530.0,
            ));
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                let (mesh, field, _) =
                    cases::l_bracket_solution(Formulation::Ans, 3000, false, seed)?;
                let mat = cases::l_bracket_material();
                let probe = field.probe_plate(&mesh, crate::geo::Vec2::new(4.0 - 1e-9, 6.0 - 1e-9))?;
                report.artifacts.push(write_probe_csv(
                    dir,
                    "l-bracket",
                    &[([4.0, 6.0], probe)],
                )?);
                let stresses =
                    crate::analysis::cell_stresses(&mesh, &field, &mat, Formulation::Ans)?;
                let vtk = dir.join("l-bracket.vtk");
                crate::io::write_vtk(&vtk, &mesh, Some(&field), Some(&stresses))?;
                report.artifacts.push(vtk);
            }
        }
        CaseId::EnergyNorm => {
            let ns = overrides.n.clone().unwrap_or(vec![2, 4, 6, 8, 10]);
            let t = 0.2;
            report.columns = vec!["n".into(), "h".into(), "energy_norm".into()];
            for &n in &ns {
                let norms = cases::square_load_norms(t, n, Formulation::Ans)?;
                report.rows.push(vec![n as f64, norms.h, norms.energy_rel]);
                if let Some(expected) = reference.energy_norm(n) {
                    report.checks.push(CheckOutcome::abs(
                        format!("energy norm (n={n})"),
                        norms.energy_rel,
                        expected,
                        0.02,
                    ));
                }
            }
        }
    }
    report.finish(start, out_dir)
}

/// Runs one sweep per formulation and asserts the pointwise error ordering of
/// the assumed-strain variant where the sweep supports it.
pub fn compare_formulations(
    case: CaseId,
    formulations: &[(Formulation, QuadratureScheme)],
    out_dir: Option<&Path>,
) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(case, serde_json::json!({ "formulations": formulations.len() }));
    match case {
        CaseId::CantileverUdl => {
            // the plotted sweep range; see the single-case runner for the
            // superconvergent crossover beyond it
            let ns = vec![1, 2, 4, 8, 16];
            report.columns =
                vec!["series".into(), "n".into(), "dofs".into(), "w_ratio".into()];
            let mut series = Vec::new();
            for (i, &(f, q)) in formulations.iter().enumerate() {
                let sweep = cases::cantilever_udl_sweep(0.01, f, q, &ns)?;
                for p in &sweep {
                    report.rows.push(vec![i as f64, p.n as f64, p.dofs as f64, p.value]);
                }
                series.push(sweep);
            }
            if let Some(first) = series.first() {
                for (i, other) in series.iter().enumerate().skip(1) {
                    for (a, b) in first.iter().zip(other) {
                        report.checks.push(CheckOutcome::le(
                            format!("series 0 error <= series {i} error (n={})", a.n),
                            (a.value - 1.0).abs(),
                            (b.value - 1.0).abs() + 1e-12,
                        ));
                    }
                }
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "case {} does not support formulation sweeps",
                case.name()
            )))
        }
    }
    report.finish(start, out_dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_ids_roundtrip() {
        for id in CaseId::ALL {
            let parsed: CaseId = id.name().parse().unwrap();
            assert_eq!(parsed, id);
        }
        assert!("bogus".parse::<CaseId>().is_err());
    }
}
