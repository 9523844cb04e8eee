//! Scenario configuration: JSON, schema-validated, with named function
//! presets so sweeps are machine-generatable.

use crate::battery::BATTERY_NAMES;
use crate::presets::PRESET_NAMES;
use dunkl_core::error::{Error, Result};
use dunkl_core::quadrature::QuadratureScheme;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfig {
    pub radius: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig {
            radius: 12.0,
            panels: 48,
            nodes_per_panel: 16,
        }
    }
}

impl SchemeConfig {
    pub fn build(&self) -> Result<QuadratureScheme> {
        QuadratureScheme::build(self.radius, self.panels, self.nodes_per_panel)
    }
}

/// Report tolerances; defaults are the library's own.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// relative slack on `gap >= -gap_rel * max(1, lhs)` before a row is a
    /// violation
    pub gap_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { gap_rel: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub format: OutputFormat,
    pub path: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            format: OutputFormat::Json,
            path: "report.json".to_string(),
        }
    }
}

pub const BOUND_NAMES: [&str; 5] = ["rosler", "fei", "sami", "lp_fractional", "sharp_fractional"];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub mu_list: Vec<f64>,
    /// `(alpha, beta)` pairs; a pair with `beta - alpha` in pi Z produces a
    /// per-row error entry, not a configuration error
    pub angle_pairs: Vec<(f64, f64)>,
    pub p_list: Vec<f64>,
    /// battery names or extremal preset names
    pub functions: Vec<String>,
    /// subset of bound kinds to run; all five when omitted
    #[serde(default)]
    pub bounds: Option<Vec<String>>,
    #[serde(default)]
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputConfig,
}

impl ScenarioConfig {
    /// The default verification scenario: the whole battery plus two
    /// extremal presets over the standard mu and angle grids.
    pub fn default_verify() -> Self {
        ScenarioConfig {
            mu_list: vec![-0.5, 0.0, 0.5, 1.5],
            angle_pairs: vec![
                (0.0, std::f64::consts::PI / 2.0),
                (std::f64::consts::PI / 4.0, 3.0 * std::f64::consts::PI / 4.0),
            ],
            p_list: vec![1.0, 1.5, 2.0],
            functions: {
                let mut f: Vec<String> = BATTERY_NAMES.iter().map(|s| s.to_string()).collect();
                f.push("chirped-form12".to_string());
                f.push("centered-gauss".to_string());
                f
            },
            bounds: None,
            scheme: SchemeConfig::default(),
            tolerances: Tolerances::default(),
            output: OutputConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu_list.is_empty() || self.functions.is_empty() {
            return Err(Error::Config(
                "mu_list and functions must be non-empty".into(),
            ));
        }
        for &m in &self.mu_list {
            if !(m >= -0.5) || !m.is_finite() {
                return Err(Error::Config(format!("mu = {m} violates mu >= -1/2")));
            }
        }
        for &p in &self.p_list {
            if !(1.0..=2.0).contains(&p) {
                return Err(Error::Config(format!("p = {p} outside [1, 2]")));
            }
        }
        for (a, b) in &self.angle_pairs {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::Config(format!("non-finite angle pair ({a}, {b})")));
            }
        }
        for f in &self.functions {
            if !BATTERY_NAMES.contains(&f.as_str()) && !PRESET_NAMES.contains(&f.as_str()) {
                return Err(Error::Config(format!(
                    "unknown function {f:?}; battery: {BATTERY_NAMES:?}, presets: {PRESET_NAMES:?}"
                )));
            }
        }
        if let Some(bounds) = &self.bounds {
            for b in bounds {
                if !BOUND_NAMES.contains(&b.as_str()) {
                    return Err(Error::Config(format!(
                        "unknown bound kind {b:?}; known: {BOUND_NAMES:?}"
                    )));
                }
            }
        }
        if !(self.tolerances.gap_rel > 0.0) {
            return Err(Error::Config("gap_rel tolerance must be positive".into()));
        }
        self.scheme.build().map(|_| ())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config parse: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_validates() {
        ScenarioConfig::default_verify().validate().unwrap();
    }

    #[test]
    fn p_outside_range_is_rejected() {
        let mut c = ScenarioConfig::default_verify();
        c.p_list = vec![3.0];
        assert!(c.validate().is_err());
    }

    #[test]
    fn unknown_function_is_rejected() {
        let mut c = ScenarioConfig::default_verify();
        c.functions = vec!["mystery".into()];
        assert!(c.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = ScenarioConfig::default_verify();
        let text = serde_json::to_string_pretty(&c).unwrap();
        let back = ScenarioConfig::from_json(&text).unwrap();
        assert_eq!(back.mu_list, c.mu_list);
        assert_eq!(back.functions, c.functions);
    }

    #[test]
    fn degenerate_pair_is_not_a_config_error() {
        let mut c = ScenarioConfig::default_verify();
        c.angle_pairs = vec![(0.0, std::f64::consts::PI)];
        assert!(c.validate().is_ok());
    }
}
