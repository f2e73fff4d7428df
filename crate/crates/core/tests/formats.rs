//! External-surface checks: file schemas, CLI-visible formats, and rerun
//! determinism of the report artifacts.

use plateforge_core::bench::{run_benchmark, CaseId, CaseOverrides};
use plateforge_core::geo::Vec2;
use plateforge_core::mesh::{read_mesh_json, write_mesh_json, PolyMesh};

fn temp_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("plateforge_formats_{tag}"));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn mesh_json_schema_is_stable() {
    let mesh = PolyMesh::new(
        vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(0.0, 1.0),
        ],
        vec![vec![0, 1, 2, 3]],
    );
    let dir = temp_dir("schema");
    let path = dir.join("mesh.json");
    write_mesh_json(&mesh, &path).unwrap();
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["version"], 1);
    assert_eq!(value["nodes"][1][0], 2.0);
    assert_eq!(value["elements"][0], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(value["scaling_centers"][0], serde_json::json!([1.0, 0.5]));
    let back = read_mesh_json(&path).unwrap();
    assert_eq!(back, mesh);
}

#[test]
fn domain_spec_json_accepts_all_shapes() {
    use plateforge_core::mesh::DomainSpec;
    let rect: DomainSpec =
        serde_json::from_str(r#"{"type":"rectangle","bounds":[0,0,2,1]}"#).unwrap();
    assert!(rect.contains(Vec2::new(1.0, 0.5)));
    let circle: DomainSpec =
        serde_json::from_str(r#"{"type":"circle","center":[0,0],"radius":1}"#).unwrap();
    assert!(circle.contains(Vec2::new(0.5, 0.0)));
    let poly: DomainSpec = serde_json::from_str(
        r#"{"type":"polygon","points":[[0,0],[2,0],[2,2],[0,2]],"holes":[{"center":[1,1],"radius":0.25}]}"#,
    )
    .unwrap();
    assert!(poly.contains(Vec2::new(0.5, 0.5)));
    assert!(!poly.contains(Vec2::new(1.0, 1.0)));
}

#[test]
fn rerun_artifacts_are_byte_identical() {
    let a = temp_dir("det_a");
    let b = temp_dir("det_b");
    let overrides = CaseOverrides::default();
    let ra = run_benchmark(CaseId::CantileverMoment, &overrides, Some(&a)).unwrap();
    let rb = run_benchmark(CaseId::CantileverMoment, &overrides, Some(&b)).unwrap();
    assert!(ra.passed && rb.passed);
    let csv_a = std::fs::read(a.join("cantilever-moment.csv")).unwrap();
    let csv_b = std::fs::read(b.join("cantilever-moment.csv")).unwrap();
    assert_eq!(csv_a, csv_b, "report CSV differs between identical runs");
}

#[test]
fn zero_energy_artifacts_include_the_spectra() {
    let dir = temp_dir("spectra");
    let report =
        run_benchmark(CaseId::ZeroEnergy, &CaseOverrides::default(), Some(&dir)).unwrap();
    assert!(report.passed);
    let spectra = std::fs::read_to_string(dir.join("zero-energy-spectra.csv")).unwrap();
    assert!(spectra.starts_with("sides,mode,eigenvalue"));
    // six shapes, 3n modes each: 9+12+15+18+21+24 rows
    assert_eq!(spectra.lines().count() - 1, 99);
    let json = std::fs::read_to_string(dir.join("zero-energy.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["case"], "zero-energy");
    assert!(value["checks"].as_array().unwrap().len() >= 8);
}

#[test]
fn compare_formulations_emits_one_series_per_entry() {
    use plateforge_core::assembly::Formulation;
    use plateforge_core::quadrature::QuadratureScheme;
    let report = plateforge_core::bench::compare_formulations(
        CaseId::CantileverUdl,
        &[
            (Formulation::Ans, QuadratureScheme::Full),
            (Formulation::Standard, QuadratureScheme::Reduced),
            (Formulation::Standard, QuadratureScheme::SelectiveReduced),
        ],
        None,
    )
    .unwrap();
    assert!(report.passed, "ordering checks failed: {:?}", report.checks);
    // degenerate single-entry list runs without ordering checks
    let single = plateforge_core::bench::compare_formulations(
        CaseId::CantileverUdl,
        &[(Formulation::Ans, QuadratureScheme::Full)],
        None,
    )
    .unwrap();
    assert!(single.checks.is_empty());
    assert_eq!(
        single.rows.len(),
        report.rows.len() / 3,
        "single series should be one third of the three-way comparison"
    );
}
