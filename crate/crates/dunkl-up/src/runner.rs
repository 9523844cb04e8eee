//! Expands a scenario into report rows and evaluates them in parallel.
//!
//! Kernel plans are built once per distinct (mu, angle) pair and shared;
//! rows are computed independently and collected in configuration order,
//! so the output bytes are independent of the thread count.

use crate::config::{OutputFormat, ScenarioConfig, BOUND_NAMES};
use crate::presets::resolve_function;
use crate::report::{ReportMeta, ReportRow, ReportSummary, SweepReport, SweepRow, VerifyReport};
use dunkl_core::bounds::{evaluate_bound_with_plans, BoundKind, BoundSpec};
use dunkl_core::error::{Error, Result};
use dunkl_core::functionals::summarize;
use dunkl_core::quadrature::QuadratureScheme;
use dunkl_core::special::MuParam;
use dunkl_core::transforms::{FracOrder, FracPlan};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

const QUARTER: f64 = std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone)]
struct RowSpec {
    function: String,
    mu: f64,
    alpha: f64,
    beta: f64,
    p: f64,
    kind: BoundKind,
}

fn kind_list(config: &ScenarioConfig) -> Result<Vec<BoundKind>> {
    let names: Vec<&str> = match &config.bounds {
        Some(list) => list.iter().map(|s| s.as_str()).collect(),
        None => BOUND_NAMES.to_vec(),
    };
    names
        .iter()
        .map(|n| match *n {
            "rosler" => Ok(BoundKind::Rosler),
            "fei" => Ok(BoundKind::Fei),
            "sami" => Ok(BoundKind::Sami),
            "lp_fractional" => Ok(BoundKind::LpFractional),
            "sharp_fractional" => Ok(BoundKind::SharpFractional),
            other => Err(Error::Config(format!("unknown bound kind {other:?}"))),
        })
        .collect()
}

fn expand_rows(config: &ScenarioConfig) -> Result<Vec<RowSpec>> {
    let kinds = kind_list(config)?;
    let mut rows = Vec::new();
    for function in &config.functions {
        for &mu in &config.mu_list {
            // the Dunkl-pair bounds do not depend on the angle grid
            if kinds.contains(&BoundKind::Rosler) {
                rows.push(RowSpec {
                    function: function.clone(),
                    mu,
                    alpha: 0.0,
                    beta: QUARTER,
                    p: 2.0,
                    kind: BoundKind::Rosler,
                });
            }
            if kinds.contains(&BoundKind::Fei) {
                rows.push(RowSpec {
                    function: function.clone(),
                    mu,
                    alpha: 0.0,
                    beta: QUARTER,
                    p: 2.0,
                    kind: BoundKind::Fei,
                });
            }
            for &(alpha, beta) in &config.angle_pairs {
                if kinds.contains(&BoundKind::Sami) {
                    rows.push(RowSpec {
                        function: function.clone(),
                        mu,
                        alpha,
                        beta,
                        p: 2.0,
                        kind: BoundKind::Sami,
                    });
                }
                if kinds.contains(&BoundKind::SharpFractional) {
                    rows.push(RowSpec {
                        function: function.clone(),
                        mu,
                        alpha,
                        beta,
                        p: 2.0,
                        kind: BoundKind::SharpFractional,
                    });
                }
                if kinds.contains(&BoundKind::LpFractional) {
                    for &p in &config.p_list {
                        rows.push(RowSpec {
                            function: function.clone(),
                            mu,
                            alpha,
                            beta,
                            p,
                            kind: BoundKind::LpFractional,
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

type PlanKey = (u64, u64);

fn plan_key(mu: f64, alpha: f64) -> PlanKey {
    (mu.to_bits(), alpha.to_bits())
}

fn build_plans(
    rows: &[RowSpec],
    scheme: &QuadratureScheme,
) -> Result<BTreeMap<PlanKey, Arc<FracPlan>>> {
    let mut keys: BTreeSet<PlanKey> = BTreeSet::new();
    for row in rows {
        let spec_angles = match row.kind {
            BoundKind::Rosler | BoundKind::Fei => (0.0, QUARTER),
            _ => (row.alpha, row.beta),
        };
        keys.insert(plan_key(row.mu, spec_angles.0));
        keys.insert(plan_key(row.mu, spec_angles.1));
        keys.insert(plan_key(row.mu, QUARTER));
    }
    let built: Result<Vec<(PlanKey, Arc<FracPlan>)>> = keys
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|key| {
            let mu = MuParam::new(f64::from_bits(key.0))?;
            let order = FracOrder::classify(f64::from_bits(key.1))?;
            let plan = FracPlan::new(mu, order, scheme)?;
            Ok((key, Arc::new(plan)))
        })
        .collect();
    Ok(built?.into_iter().collect())
}

fn bound_spec(row: &RowSpec, mu: MuParam) -> Result<BoundSpec> {
    match row.kind {
        BoundKind::Rosler => Ok(BoundSpec::rosler(mu)),
        BoundKind::Fei => Ok(BoundSpec::fei(mu)),
        BoundKind::Sami => BoundSpec::sami(mu, row.alpha, row.beta),
        BoundKind::LpFractional => BoundSpec::lp_fractional(mu, row.alpha, row.beta, row.p),
        BoundKind::SharpFractional => BoundSpec::sharp_fractional(mu, row.alpha, row.beta),
    }
}

fn blank_row(spec: &RowSpec) -> ReportRow {
    ReportRow {
        function: spec.function.clone(),
        mu: spec.mu,
        alpha: spec.alpha,
        beta: spec.beta,
        p: spec.p,
        bound: spec.kind.name().to_string(),
        lhs: None,
        rhs: None,
        gap: None,
        rel_gap: None,
        a_term: None,
        cov: None,
        abs_cov: None,
        disp2_f: None,
        disp2_df: None,
        even_energy: None,
        odd_energy: None,
        prefactor: None,
        violation: false,
        error: None,
        warnings: Vec::new(),
    }
}

/// Is this row error a broken theorem hypothesis (run continues, exit
/// unaffected) or a numerical consistency problem (run fails)?
fn is_consistency_error(err: &Error) -> bool {
    matches!(err, Error::Accuracy(_) | Error::Numeric(_))
}

pub struct RunOutcome {
    pub report: VerifyReport,
    /// true when validity violations or consistency errors occurred
    pub failed: bool,
}

pub fn run_verify(
    config: &ScenarioConfig,
    pool: &rayon::ThreadPool,
    no_meta: bool,
) -> Result<RunOutcome> {
    config.validate()?;
    let scheme = Arc::new(config.scheme.build()?);
    let rows = expand_rows(config)?;

    // resolve every (function, mu) once, up front; unknown names are
    // configuration errors caught by validate()
    let mut functions = BTreeMap::new();
    for f in &config.functions {
        for &m in &config.mu_list {
            let mu = MuParam::new(m)?;
            let tf = resolve_function(f, mu, &scheme)?;
            functions.insert((f.clone(), m.to_bits()), Arc::new(tf));
        }
    }

    let (plans, report_rows) = pool.install(|| -> Result<_> {
        let plans = build_plans(&rows, &scheme)?;
        let gap_rel = config.tolerances.gap_rel;
        let report_rows: Vec<ReportRow> = rows
            .par_iter()
            .map(|spec| {
                let mut row = blank_row(spec);
                let mu = match MuParam::new(spec.mu) {
                    Ok(m) => m,
                    Err(e) => {
                        row.error = Some(e.to_string());
                        return row;
                    }
                };
                let bspec = match bound_spec(spec, mu) {
                    Ok(b) => b,
                    Err(e) => {
                        row.error = Some(e.to_string());
                        return row;
                    }
                };
                let f = &functions[&(spec.function.clone(), spec.mu.to_bits())];
                let (ea, eb) = bspec.effective_angles();
                let plan_a = &plans[&plan_key(spec.mu, ea)];
                let plan_b = &plans[&plan_key(spec.mu, eb)];
                let plan_q = &plans[&plan_key(spec.mu, QUARTER)];
                match evaluate_bound_with_plans(
                    &f.handle, &f.polar, &bspec, &scheme, plan_a, plan_b, plan_q,
                ) {
                    Ok(r) => {
                        row.lhs = Some(r.lhs);
                        row.rhs = Some(r.rhs);
                        row.gap = Some(r.gap);
                        row.rel_gap = Some(r.rel_gap);
                        row.a_term = Some(r.components.a_term);
                        row.cov = Some(r.components.cov);
                        row.abs_cov = Some(r.components.abs_cov);
                        row.disp2_f = Some(r.components.disp2_f);
                        row.disp2_df = Some(r.components.disp2_df);
                        row.even_energy = Some(r.components.even_energy);
                        row.odd_energy = Some(r.components.odd_energy);
                        row.prefactor = Some(r.prefactor);
                        row.violation = r.gap < -gap_rel * r.lhs.abs().max(1.0);
                        row.warnings = r.warnings;
                    }
                    Err(e) => {
                        row.error = Some(e.to_string());
                        if is_consistency_error(&e) {
                            row.warnings.push("consistency".to_string());
                        }
                    }
                }
                row
            })
            .collect();
        Ok((plans, report_rows))
    })?;
    drop(plans);

    let violations = report_rows.iter().filter(|r| r.violation).count();
    let row_errors = report_rows.iter().filter(|r| r.error.is_some()).count();
    let consistency_errors = report_rows
        .iter()
        .filter(|r| r.error.is_some() && r.warnings.iter().any(|w| w == "consistency"))
        .count();

    let meta = if no_meta {
        None
    } else {
        Some(ReportMeta {
            tolerances: config.tolerances,
            scheme: config.scheme,
            threads: Some(pool.current_num_threads()),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .ok()
                .map(|d| d.as_secs()),
        })
    };

    let report = VerifyReport {
        meta,
        summary: ReportSummary {
            rows: report_rows.len(),
            violations,
            row_errors,
            consistency_errors,
        },
        rows: report_rows,
    };
    Ok(RunOutcome {
        failed: violations > 0 || consistency_errors > 0,
        report,
    })
}

/// Functional sweep: one row of scalar functionals per (function, mu).
pub fn run_sweep(
    config: &ScenarioConfig,
    pool: &rayon::ThreadPool,
    no_meta: bool,
) -> Result<SweepReport> {
    config.validate()?;
    let scheme = Arc::new(config.scheme.build()?);
    let mut pairs = Vec::new();
    for f in &config.functions {
        for &m in &config.mu_list {
            pairs.push((f.clone(), m));
        }
    }
    let rows: Vec<SweepRow> = pool.install(|| {
        pairs
            .par_iter()
            .map(|(name, m)| {
                let mut row = SweepRow {
                    function: name.clone(),
                    mu: *m,
                    norm2: None,
                    mean_pos: None,
                    mean_freq: None,
                    disp_p: Vec::new(),
                    even_energy: None,
                    odd_energy: None,
                    cov: None,
                    abs_cov: None,
                    a_term: None,
                    error: None,
                };
                let result = MuParam::new(*m).and_then(|mu| {
                    let f = resolve_function(name, mu, &scheme)?;
                    summarize(&f.handle, &f.polar, mu, &scheme)
                });
                match result {
                    Ok(s) => {
                        row.norm2 = Some(s.norm2);
                        row.mean_pos = Some(s.mean_pos);
                        row.mean_freq = Some(s.mean_freq);
                        row.disp_p = s.disp_p.iter().map(|&(_, d)| d).collect();
                        row.even_energy = Some(s.even_energy);
                        row.odd_energy = Some(s.odd_energy);
                        row.cov = Some(s.cov);
                        row.abs_cov = Some(s.abs_cov);
                        row.a_term = Some(s.a_term);
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
                row
            })
            .collect()
    });
    let meta = if no_meta {
        None
    } else {
        Some(ReportMeta {
            tolerances: config.tolerances,
            scheme: config.scheme,
            threads: Some(pool.current_num_threads()),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .ok()
                .map(|d| d.as_secs()),
        })
    };
    Ok(SweepReport { meta, rows })
}

/// Renders a verify report in the configured format.
pub fn render_verify(report: &VerifyReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    }
}

pub fn render_sweep(report: &SweepReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ScenarioConfig {
        let mut c = ScenarioConfig::default_verify();
        c.mu_list = vec![-0.5, 0.5];
        c.functions = vec!["gauss".into(), "chirped-gauss".into()];
        c.angle_pairs = vec![(0.0, QUARTER)];
        c.p_list = vec![1.0, 2.0];
        c.scheme.panels = 24;
        c.scheme.radius = 10.0;
        c
    }

    #[test]
    fn small_run_passes_and_counts_rows() {
        let config = small_config();
        let pool = crate::build_pool(Some(2));
        let outcome = run_verify(&config, &pool, true).unwrap();
        assert!(!outcome.failed);
        // per (f, mu): rosler + fei + 1 pair * (sami + sharp + 2 lp) = 6
        assert_eq!(outcome.report.summary.rows, 2 * 2 * 6);
        assert_eq!(outcome.report.summary.violations, 0);
        assert!(outcome.report.rows.iter().all(|r| r.error.is_none()));
    }

    #[test]
    fn degenerate_pair_errors_the_row_and_run_continues() {
        let mut config = small_config();
        config.angle_pairs = vec![(0.0, std::f64::consts::PI), (0.0, QUARTER)];
        let pool = crate::build_pool(Some(2));
        let outcome = run_verify(&config, &pool, true).unwrap();
        assert!(!outcome.failed, "hypothesis violations do not fail the run");
        let errored: Vec<_> = outcome
            .report
            .rows
            .iter()
            .filter(|r| r.error.is_some())
            .collect();
        assert!(!errored.is_empty());
        assert!(errored
            .iter()
            .all(|r| r.error.as_ref().unwrap().contains("pi Z")));
        // the good pair still produced full rows
        assert!(outcome
            .report
            .rows
            .iter()
            .any(|r| r.error.is_none() && r.lhs.is_some()));
    }

    #[test]
    fn sweep_produces_summaries() {
        let config = small_config();
        let pool = crate::build_pool(Some(2));
        let report = run_sweep(&config, &pool, true).unwrap();
        assert_eq!(report.rows.len(), 4);
        for row in &report.rows {
            assert!(row.error.is_none(), "{:?}", row.error);
            assert!((row.norm2.unwrap() - 1.0).abs() < 1e-8);
            assert_eq!(row.disp_p.len(), 5);
        }
    }
}
