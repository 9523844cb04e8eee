//! Report rows and their JSON / CSV serializations.
//!
//! The CSV column set is fixed so downstream tooling can recompute any
//! right-hand side offline from a row alone:
//!
//! ```text
//! function,mu,alpha,beta,p,bound,lhs,rhs,gap,rel_gap,a_term,cov,abs_cov,
//! disp2_f,disp2_Df,warnings
//! ```
//!
//! JSON rows carry the full breakdown (parity energies and the Lp
//! prefactor on top of the CSV columns). Rows are emitted in configuration
//! order and floats print in shortest round-trip form, so identical runs
//! produce identical bytes; with metadata suppressed the whole file is
//! byte-reproducible.

use crate::config::{SchemeConfig, Tolerances};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportRow {
    pub function: String,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_term: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cov: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_cov: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disp2_f: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disp2_df: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefactor: Option<f64>,
    pub violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportMeta {
    pub tolerances: Tolerances,
    pub scheme: SchemeConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ReportSummary {
    pub rows: usize,
    pub violations: usize,
    pub row_errors: usize,
    pub consistency_errors: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<ReportMeta>,
    pub summary: ReportSummary,
    pub rows: Vec<ReportRow>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(
            "function,mu,alpha,beta,p,bound,lhs,rhs,gap,rel_gap,a_term,cov,abs_cov,disp2_f,disp2_Df,warnings\n",
        );
        for row in &self.rows {
            let num = |v: Option<f64>| v.map(|x| format!("{x}")).unwrap_or_default();
            let mut notes: Vec<String> = Vec::new();
            if let Some(err) = &row.error {
                notes.push(format!("ERROR: {err}"));
            }
            notes.extend(row.warnings.iter().cloned());
            let notes = notes.join("; ").replace(',', ";");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                row.function,
                row.mu,
                row.alpha,
                row.beta,
                row.p,
                row.bound,
                num(row.lhs),
                num(row.rhs),
                num(row.gap),
                num(row.rel_gap),
                num(row.a_term),
                num(row.cov),
                num(row.abs_cov),
                num(row.disp2_f),
                num(row.disp2_df),
                notes,
            ));
        }
        out
    }
}

/// Functional-sweep row (the `sweep` subcommand).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub function: String,
    pub mu: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_pos: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_freq: Option<f64>,
    /// dispersions on the p grid 1, 1.25, 1.5, 1.75, 2
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub disp_p: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cov: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_cov: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_term: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<ReportMeta>,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(
            "function,mu,norm2,mean_pos,mean_freq,disp_p1,disp_p1_25,disp_p1_5,disp_p1_75,disp_p2,even_energy,odd_energy,cov,abs_cov,a_term,error\n",
        );
        for row in &self.rows {
            let num = |v: Option<f64>| v.map(|x| format!("{x}")).unwrap_or_default();
            let disp = |i: usize| {
                row.disp_p
                    .get(i)
                    .map(|x| format!("{x}"))
                    .unwrap_or_default()
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                row.function,
                row.mu,
                num(row.norm2),
                num(row.mean_pos),
                num(row.mean_freq),
                disp(0),
                disp(1),
                disp(2),
                disp(3),
                disp(4),
                num(row.even_energy),
                num(row.odd_energy),
                num(row.cov),
                num(row.abs_cov),
                num(row.a_term),
                row.error.clone().unwrap_or_default().replace(',', ";"),
            ));
        }
        out
    }
}
