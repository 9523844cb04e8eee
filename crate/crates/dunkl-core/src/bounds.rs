//! Right-hand sides of the four uncertainty lower bounds, and the honest
//! left-hand-side pipeline that measures dispersion products through the
//! actual transform stack.
//!
//! With `B = (mu+1/2)(||f_e||^2 - ||f_o||^2) + 1/2` and the mixed second
//! moment `M = cos a cos b Delta^2(f) + sin(a+b) Cov + sin a sin b
//! Delta^2(D f)`:
//!
//! * Rosler:           `B^2`
//! * covariance form:  `A^2 + COV^2`
//! * fractional:       `sin^2(a-b) B^2`
//! * Lp fractional:    `prefactor(p) * ( sin^2(b-a) A^2 + M^2 )`
//! * sharp fractional: `sin^2(a-b) (B^2 + COV^2 - Cov^2) + M^2`
//!
//! The left side is always `Delta^2_{mu,p}(D^a f) Delta^2_{mu,p}(D^b f)`
//! computed by transform-then-dispersion; the closed-form moment lemmas are
//! cross-checks, never the measurement.

use crate::error::{Error, Result};
use crate::functionals::{dispersion, summarize, FunctionalSummary};
use crate::math;
use crate::operators::{FunctionHandle, PolarHandle};
use crate::quadrature::QuadratureScheme;
use crate::special::{gamma_fn, MuParam};
use crate::transforms::{warning_strings, FracOrder, FracPlan, OrderKind};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Rosler,
    Fei,
    Sami,
    LpFractional,
    SharpFractional,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Rosler => "rosler",
            BoundKind::Fei => "fei",
            BoundKind::Sami => "sami",
            BoundKind::LpFractional => "lp_fractional",
            BoundKind::SharpFractional => "sharp_fractional",
        }
    }
}

/// A fully validated bound evaluation request.
#[derive(Debug, Clone, Copy)]
pub struct BoundSpec {
    pub kind: BoundKind,
    pub mu: MuParam,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
}

impl BoundSpec {
    pub fn rosler(mu: MuParam) -> Self {
        BoundSpec {
            kind: BoundKind::Rosler,
            mu,
            alpha: 0.0,
            beta: math::PI / 2.0,
            p: 2.0,
        }
    }

    pub fn fei(mu: MuParam) -> Self {
        BoundSpec {
            kind: BoundKind::Fei,
            mu,
            alpha: 0.0,
            beta: math::PI / 2.0,
            p: 2.0,
        }
    }

    pub fn sami(mu: MuParam, alpha: f64, beta: f64) -> Result<Self> {
        let spec = BoundSpec {
            kind: BoundKind::Sami,
            mu,
            alpha,
            beta,
            p: 2.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn lp_fractional(mu: MuParam, alpha: f64, beta: f64, p: f64) -> Result<Self> {
        let spec = BoundSpec {
            kind: BoundKind::LpFractional,
            mu,
            alpha,
            beta,
            p,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn sharp_fractional(mu: MuParam, alpha: f64, beta: f64) -> Result<Self> {
        let spec = BoundSpec {
            kind: BoundKind::SharpFractional,
            mu,
            alpha,
            beta,
            p: 2.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1.0..=2.0).contains(&self.p) {
            return Err(Error::Domain(format!(
                "bound dispersions are defined for p in [1, 2], got {}",
                self.p
            )));
        }
        if self.kind != BoundKind::LpFractional && self.p != 2.0 {
            return Err(Error::Domain(format!(
                "{} is a p = 2 bound, got p = {}",
                self.kind.name(),
                self.p
            )));
        }
        match self.kind {
            BoundKind::Rosler | BoundKind::Fei => {}
            _ => {
                // the theorems require beta - alpha outside pi Z
                let d = FracOrder::classify(self.beta - self.alpha)?;
                if d.kind() != OrderKind::Generic {
                    return Err(Error::Contract(format!(
                        "beta - alpha = {} lies in pi Z; the bound hypothesis excludes it",
                        self.beta - self.alpha
                    )));
                }
            }
        }
        Ok(())
    }

    /// The transform pair actually measured on the left side.
    pub fn effective_angles(&self) -> (f64, f64) {
        match self.kind {
            BoundKind::Rosler | BoundKind::Fei => (0.0, math::PI / 2.0),
            _ => (self.alpha, self.beta),
        }
    }
}

/// The scalar ingredients every right-hand side is assembled from.
#[derive(Debug, Clone, Copy)]
pub struct BoundInputs {
    pub a_term: f64,
    pub cov: f64,
    pub abs_cov: f64,
    pub disp2_f: f64,
    pub disp2_df: f64,
    pub even_energy: f64,
    pub odd_energy: f64,
}

impl BoundInputs {
    pub fn from_summary(summary: &FunctionalSummary, disp2_df: f64) -> Result<Self> {
        let disp2_f = summary
            .disp_p
            .iter()
            .find(|(p, _)| *p == 2.0)
            .map(|(_, d)| d * d)
            .ok_or_else(|| {
                Error::Contract("summary is missing the p = 2 dispersion".into())
            })?;
        Ok(BoundInputs {
            a_term: summary.a_term,
            cov: summary.cov,
            abs_cov: summary.abs_cov,
            disp2_f,
            disp2_df,
            even_energy: summary.even_energy,
            odd_energy: summary.odd_energy,
        })
    }

    /// `B = (mu+1/2)(||f_e||^2 - ||f_o||^2) + 1/2`.
    fn parity_bracket(&self, mu: MuParam) -> f64 {
        mu.reflection() * (self.even_energy - self.odd_energy) + 0.5
    }

    /// `M = cos a cos b Delta^2(f) + sin(a+b) Cov + sin a sin b Delta^2(Df)`.
    fn mixed_moment(&self, alpha: f64, beta: f64) -> f64 {
        math::cos(alpha) * math::cos(beta) * self.disp2_f
            + math::sin(alpha + beta) * self.cov
            + math::sin(alpha) * math::sin(beta) * self.disp2_df
    }
}

pub fn rosler_rhs(inputs: &BoundInputs, mu: MuParam) -> f64 {
    let b = inputs.parity_bracket(mu);
    b * b
}

pub fn fei_rhs(inputs: &BoundInputs) -> f64 {
    inputs.a_term * inputs.a_term + inputs.abs_cov * inputs.abs_cov
}

pub fn sami_rhs(inputs: &BoundInputs, mu: MuParam, alpha: f64, beta: f64) -> Result<f64> {
    require_generic_pair(alpha, beta)?;
    let s = math::sin(alpha - beta);
    Ok(s * s * rosler_rhs(inputs, mu))
}

pub fn lp_fractional_rhs(
    inputs: &BoundInputs,
    mu: MuParam,
    alpha: f64,
    beta: f64,
    p: f64,
) -> Result<f64> {
    require_generic_pair(alpha, beta)?;
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [1, 2], got {p}")));
    }
    let s = math::sin(beta - alpha);
    let exponent = 2.0 / p - 1.0;
    let gamma = gamma_fn(mu.value() + 1.0).expect("mu + 1 > 0");
    let prefactor = math::powf(s.abs(), 2.0 * (mu.value() + 1.0) * exponent)
        / math::powf(math::powf(2.0, mu.value() + 1.0) * gamma, 2.0 * exponent);
    let m = inputs.mixed_moment(alpha, beta);
    Ok(prefactor * (s * s * inputs.a_term * inputs.a_term + m * m))
}

pub fn sharp_fractional_rhs(
    inputs: &BoundInputs,
    mu: MuParam,
    alpha: f64,
    beta: f64,
) -> Result<f64> {
    require_generic_pair(alpha, beta)?;
    let s = math::sin(alpha - beta);
    let b = inputs.parity_bracket(mu);
    let m = inputs.mixed_moment(alpha, beta);
    Ok(s * s * (b * b + inputs.abs_cov * inputs.abs_cov - inputs.cov * inputs.cov) + m * m)
}

fn require_generic_pair(alpha: f64, beta: f64) -> Result<()> {
    let d = FracOrder::classify(beta - alpha)?;
    if d.kind() != OrderKind::Generic {
        return Err(Error::Contract(format!(
            "beta - alpha = {} lies in pi Z; the bound hypothesis excludes it",
            beta - alpha
        )));
    }
    Ok(())
}

/// One evaluated bound with its full component breakdown.
#[derive(Debug, Clone)]
pub struct UncertaintyReport {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub rel_gap: f64,
    pub components: BoundInputs,
    pub prefactor: f64,
    pub warnings: Vec<String>,
}

/// Reporting tolerance: the theorems are exact, two stacked quadratures are
/// not. Violations beyond this are flagged, never clipped.
pub fn gap_tolerance(lhs: f64) -> f64 {
    1e-6 * lhs.abs().max(1.0)
}

fn side_dispersion2(
    f: &FunctionHandle,
    plan: &FracPlan,
    p: f64,
    scheme: &QuadratureScheme,
    warnings: &mut Vec<String>,
) -> Result<f64> {
    let (d2, w) = transform_dispersion2(f, plan, p, scheme)?;
    warnings.extend(w);
    Ok(d2)
}

/// `Delta^2_{mu,p}(D^alpha f)` measured through the honest pipeline:
/// apply the plan, center at the measured mean, integrate. This is the
/// left-hand-side primitive of every bound evaluation.
pub fn transform_dispersion2(
    f: &FunctionHandle,
    plan: &FracPlan,
    p: f64,
    scheme: &QuadratureScheme,
) -> Result<(f64, Vec<String>)> {
    let out = plan.apply_handle(f, scheme)?;
    let warnings = warning_strings(&out.warnings);
    let mu = plan.mu();
    // Transformed samples carry the truncation loss of the output tails
    // (the glued extremals are only C^1, so their transforms decay
    // algebraically); take the mean of the measured density rather than
    // gating on an exact unit norm.
    let center = weighted_mean(&out.samples.values, mu, scheme)?;
    let d = dispersion(&out.samples.values, mu, p, center, scheme)?;
    Ok((d * d, warnings))
}

/// Mean of |F|^2 dmu normalized by its own measured mass.
fn weighted_mean(values: &[crate::C64], mu: MuParam, scheme: &QuadratureScheme) -> Result<f64> {
    let mut mass = 0.0;
    let mut first = 0.0;
    let e = mu.weight_exponent();
    for ((&v, &x), &w) in values.iter().zip(scheme.nodes()).zip(scheme.weights()) {
        let m = w * math::powf(x.abs(), e) * v.norm_sqr();
        mass += m;
        first += x * m;
    }
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::Numeric(format!(
            "transformed samples have unusable mass {mass}"
        )));
    }
    Ok(first / mass)
}

fn check_plan(plan: &FracPlan, mu: MuParam, angle: f64, what: &str) -> Result<()> {
    if plan.mu() != mu || plan.order().alpha() != angle {
        return Err(Error::Contract(format!(
            "{what} plan does not match the bound spec (mu {:?} vs {:?}, alpha {} vs {})",
            plan.mu(),
            mu,
            plan.order().alpha(),
            angle
        )));
    }
    Ok(())
}

/// Evaluates one bound with caller-provided plans for the two sides and for
/// the quarter turn (used for the `Delta^2(D_mu f)` component).
pub fn evaluate_bound_with_plans(
    f: &FunctionHandle,
    pf: &PolarHandle,
    spec: &BoundSpec,
    scheme: &QuadratureScheme,
    plan_alpha: &FracPlan,
    plan_beta: &FracPlan,
    plan_quarter: &FracPlan,
) -> Result<UncertaintyReport> {
    spec.validate()?;
    let (ea, eb) = spec.effective_angles();
    check_plan(plan_alpha, spec.mu, ea, "alpha-side")?;
    check_plan(plan_beta, spec.mu, eb, "beta-side")?;
    check_plan(plan_quarter, spec.mu, math::PI / 2.0, "quarter-turn")?;

    let mut warnings = Vec::new();
    let summary = summarize(f, pf, spec.mu, scheme)?;
    let disp2_df = side_dispersion2(f, plan_quarter, 2.0, scheme, &mut Vec::new())?;
    let inputs = BoundInputs::from_summary(&summary, disp2_df)?;

    let lhs_a = side_dispersion2(f, plan_alpha, spec.p, scheme, &mut warnings)?;
    let lhs_b = side_dispersion2(f, plan_beta, spec.p, scheme, &mut warnings)?;
    let lhs = lhs_a * lhs_b;

    let (rhs, prefactor) = match spec.kind {
        BoundKind::Rosler => (rosler_rhs(&inputs, spec.mu), 1.0),
        BoundKind::Fei => (fei_rhs(&inputs), 1.0),
        BoundKind::Sami => (sami_rhs(&inputs, spec.mu, spec.alpha, spec.beta)?, 1.0),
        BoundKind::LpFractional => {
            let rhs = lp_fractional_rhs(&inputs, spec.mu, spec.alpha, spec.beta, spec.p)?;
            let s = math::sin(spec.beta - spec.alpha);
            let exponent = 2.0 / spec.p - 1.0;
            let gamma = gamma_fn(spec.mu.value() + 1.0).expect("mu + 1 > 0");
            let prefactor = math::powf(s.abs(), 2.0 * (spec.mu.value() + 1.0) * exponent)
                / math::powf(
                    math::powf(2.0, spec.mu.value() + 1.0) * gamma,
                    2.0 * exponent,
                );
            (rhs, prefactor)
        }
        BoundKind::SharpFractional => (
            sharp_fractional_rhs(&inputs, spec.mu, spec.alpha, spec.beta)?,
            1.0,
        ),
    };

    let gap = lhs - rhs;
    warnings.dedup();
    Ok(UncertaintyReport {
        lhs,
        rhs,
        gap,
        rel_gap: gap / lhs.abs().max(f64::MIN_POSITIVE),
        components: inputs,
        prefactor,
        warnings,
    })
}

/// Self-contained evaluation; builds the three plans on the spot.
pub fn evaluate_bound(
    f: &FunctionHandle,
    pf: &PolarHandle,
    spec: &BoundSpec,
    scheme: &QuadratureScheme,
) -> Result<UncertaintyReport> {
    spec.validate()?;
    let (ea, eb) = spec.effective_angles();
    let quarter = FracPlan::new(spec.mu, FracOrder::classify(math::PI / 2.0)?, scheme)?;
    let plan_a = if ea == math::PI / 2.0 {
        None
    } else {
        Some(FracPlan::new(spec.mu, FracOrder::classify(ea)?, scheme)?)
    };
    let plan_b = if eb == math::PI / 2.0 {
        None
    } else {
        Some(FracPlan::new(spec.mu, FracOrder::classify(eb)?, scheme)?)
    };
    evaluate_bound_with_plans(
        f,
        pf,
        spec,
        scheme,
        plan_a.as_ref().unwrap_or(&quarter),
        plan_b.as_ref().unwrap_or(&quarter),
        &quarter,
    )
}
