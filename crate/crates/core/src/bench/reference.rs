//! Stored reference constants for the benchmark checks.
//!
//! The defaults are embedded; `PLATEFORGE_REF_DATA` may point at an alternate
//! JSON file with the same schema.

use crate::error::Result;
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Deserialize)]
pub struct ReferenceData {
    pub version: u32,
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
    pub cantilever_standard_error_pct: BTreeMap<String, f64>,
    pub clamped_square_center_w: f64,
    pub point_load_w_thin: f64,
    pub point_load_w_nu0: f64,
    pub poisson_constant_mode_ratio: f64,
    pub ss_coefficient: BTreeMap<String, f64>,
    pub l_bracket_w: f64,
    pub l_bracket_mxx_coarse: f64,
    pub l_bracket_mxx_fine_shell: f64,
    pub energy_norm_t02: BTreeMap<String, f64>,
    pub zero_energy_triangle: Vec<f64>,
    pub zero_energy_quadrangle: Vec<f64>,
}

const EMBEDDED: &str = include_str!("reference_data.json");

/// Loads the reference constants, honoring the env override.
pub fn load() -> Result<ReferenceData> {
    if let Ok(path) = std::env::var("PLATEFORGE_REF_DATA") {
        let body = std::fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&body)?);
    }
    Ok(serde_json::from_str(EMBEDDED)?)
}

impl ReferenceData {
    pub fn standard_error_pct(&self, t: f64) -> Option<f64> {
        self.cantilever_standard_error_pct.get(&trim_key(t)).copied()
    }

    pub fn ss_coefficient(&self, t: f64) -> Option<f64> {
        self.ss_coefficient.get(&trim_key(t)).copied()
    }

    pub fn energy_norm(&self, n: usize) -> Option<f64> {
        self.energy_norm_t02.get(&n.to_string()).copied()
    }
}

fn trim_key(t: f64) -> String {
    let s = format!("{t}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
