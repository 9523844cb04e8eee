//! Scalar functionals of the uncertainty framework.
//!
//! All of them live on the weighted measure and assume the standing
//! normalization `||f||_{mu,2} = 1` (enforced to 1e-8 where a theorem needs
//! it). For `f = rho e^{i phi}` the two recurring pointwise brackets are
//!
//! ```text
//! amp(x)   = T_mu rho(x) + (mu+1/2)/x * rho(-x) (1 - cos[phi(x)-phi(-x)])
//! A(x)     = T_mu phi(x) + (mu+1/2)/x * ( sin[phi(x)-phi(-x)] rho(-x)/rho(x)
//!                                          - (phi(x)-phi(-x)) )
//! ```
//!
//! (`A` is evaluated in the algebraically identical reduced form
//! `phi' + (mu+1/2) sin(dphi) rho(-x) / (x rho(x))`, which avoids the raw
//! phase difference and is therefore immune to 2 pi wraps). The frequency
//! mean has the polar expression
//!
//! ```text
//! <x>_{D_mu f} = int phi' rho^2 dmu + (mu+1/2) int rho(x) rho(-x) sin(dphi)/x dmu
//! ```
//!
//! used by the covariance cross-form and the moment lemmas.

use crate::error::{Error, Result};
use crate::math;
use crate::operators::{apply_t_mu, FunctionHandle, PolarHandle, X_EPS};
use crate::quadrature::{
    integrate_weighted, integrate_weighted_real, integrate_weighted_samples, DomainTag,
    QuadratureScheme, SampledFunction,
};
use crate::special::MuParam;
use crate::C64;

use alloc::format;
use alloc::vec::Vec;

/// Tolerance for the standing normalization ||f||_{mu,2} = 1.
pub const NORM_TOL: f64 = 1e-8;

/// p-grid on which dispersion reports are produced.
pub const DISPERSION_P_GRID: [f64; 5] = [1.0, 1.25, 1.5, 1.75, 2.0];

/// `(int |f|^p |x|^{2mu+1} dx)^{1/p}` for sampled values.
pub fn lp_norm(values: &[C64], mu: MuParam, p: f64, scheme: &QuadratureScheme) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("lp_norm requires p >= 1, got {p}")));
    }
    let total = if p == 2.0 {
        let sq: Vec<C64> = values.iter().map(|v| C64::new(v.norm_sqr(), 0.0)).collect();
        integrate_weighted_samples(&sq, mu, scheme)?.re
    } else {
        let pw: Vec<C64> = values
            .iter()
            .map(|v| C64::new(math::powf(math::cabs(*v), p), 0.0))
            .collect();
        integrate_weighted_samples(&pw, mu, scheme)?.re
    };
    Ok(math::powf(total.max(0.0), 1.0 / p))
}

/// Same for a function handle.
pub fn lp_norm_fn(
    f: &FunctionHandle,
    mu: MuParam,
    p: f64,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    let samples = SampledFunction::from_fn(scheme, DomainTag::Position, |x| f.eval(x));
    lp_norm(&samples.values, mu, p, scheme)
}

fn require_unit_norm(norm: f64, what: &str) -> Result<()> {
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Contract(format!(
            "{what} requires ||f||_{{mu,2}} = 1, measured {norm}"
        )));
    }
    Ok(())
}

/// `<x>_f = int x |f|^2 dmu` for a unit-norm sample vector.
pub fn mean_position(values: &[C64], mu: MuParam, scheme: &QuadratureScheme) -> Result<f64> {
    let norm = lp_norm(values, mu, 2.0, scheme)?;
    require_unit_norm(norm, "mean_position")?;
    let moment: Vec<C64> = values
        .iter()
        .zip(scheme.nodes())
        .map(|(v, &x)| C64::new(x * v.norm_sqr(), 0.0))
        .collect();
    Ok(integrate_weighted_samples(&moment, mu, scheme)?.re)
}

/// Frequency mean with its diagnostic imaginary residue.
#[derive(Debug, Clone, Copy)]
pub struct MeanFrequency {
    pub value: f64,
    pub imag_residue: f64,
}

/// `<x>_{D_mu f} = int (-i T_mu f)(x) conj(f(x)) dmu`, real part; the
/// imaginary part must be noise and is surfaced as a diagnostic.
pub fn mean_frequency(
    f: &FunctionHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<MeanFrequency> {
    let samples = SampledFunction::from_fn(scheme, DomainTag::Position, |x| f.eval(x));
    let norm = lp_norm(&samples.values, mu, 2.0, scheme)?;
    require_unit_norm(norm, "mean_frequency")?;
    let integral = integrate_weighted(
        |x| {
            let tf = apply_t_mu(f, mu, x).unwrap_or(C64::new(f64::NAN, 0.0));
            C64::new(0.0, -1.0) * tf * f.eval(x).conj()
        },
        mu,
        scheme,
    )?;
    let residue = integral.im.abs();
    if residue > 1e-6 {
        return Err(Error::Accuracy(format!(
            "frequency mean carries imaginary residue {residue:e}; insufficient decay or resolution"
        )));
    }
    Ok(MeanFrequency {
        value: integral.re,
        imag_residue: residue,
    })
}

/// Centered p-dispersion `Delta_{mu,p}` about a caller-supplied center.
pub fn dispersion(
    values: &[C64],
    mu: MuParam,
    p: f64,
    center: f64,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::Domain(format!(
            "dispersion is defined for p in [1, 2], got {p}"
        )));
    }
    let pw: Vec<C64> = values
        .iter()
        .zip(scheme.nodes())
        .map(|(v, &x)| {
            let m = (x - center).abs() * math::cabs(*v);
            C64::new(math::powf(m, p), 0.0)
        })
        .collect();
    let total = integrate_weighted_samples(&pw, mu, scheme)?.re;
    Ok(math::powf(total.max(0.0), 1.0 / p))
}

/// `(||f_e||^2, ||f_o||^2)` via the exact node pairing of the symmetric grid.
pub fn even_odd_energies(
    values: &[C64],
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<(f64, f64)> {
    if values.len() != scheme.len() {
        return Err(Error::Contract(
            "sample count does not match the scheme".into(),
        ));
    }
    let n = values.len();
    let even: Vec<C64> = (0..n)
        .map(|k| {
            let e = (values[k] + values[n - 1 - k]) * 0.5;
            C64::new(e.norm_sqr(), 0.0)
        })
        .collect();
    let odd: Vec<C64> = (0..n)
        .map(|k| {
            let o = (values[k] - values[n - 1 - k]) * 0.5;
            C64::new(o.norm_sqr(), 0.0)
        })
        .collect();
    Ok((
        integrate_weighted_samples(&even, mu, scheme)?.re,
        integrate_weighted_samples(&odd, mu, scheme)?.re,
    ))
}

/// The phase bracket `A(x)`; see the module docs. Errors if the amplitude
/// vanishes where the reflection term is active.
pub fn phase_bracket(pf: &PolarHandle, mu: MuParam, x: f64) -> Result<f64> {
    let coeff = mu.reflection();
    if coeff == 0.0 {
        return Ok(pf.phi_deriv(x));
    }
    if x.abs() < X_EPS {
        return Ok(pf.phi_deriv(x) + coeff * (pf.phi_deriv(x) + pf.phi_deriv(-x)));
    }
    let r = pf.rho(x);
    if r == 0.0 {
        return Err(Error::Numeric(format!(
            "amplitude vanishes at x = {x}; phase bracket undefined there"
        )));
    }
    let dphi = pf.phi(x) - pf.phi(-x);
    Ok(pf.phi_deriv(x) + coeff * math::sin(dphi) * pf.rho(-x) / (x * r))
}

/// The amplitude bracket `T_mu rho + (mu+1/2)/x rho(-x)(1 - cos dphi)`.
pub fn amp_bracket(pf: &PolarHandle, mu: MuParam, x: f64) -> f64 {
    let coeff = mu.reflection();
    if x.abs() < X_EPS {
        // reflection quotient limit; the (1 - cos) part is O(x) and dropped
        return pf.rho_deriv(x) + coeff * (pf.rho_deriv(x) + pf.rho_deriv(-x));
    }
    let t_rho = pf.rho_deriv(x) + coeff * (pf.rho(x) - pf.rho(-x)) / x;
    let dphi = pf.phi(x) - pf.phi(-x);
    t_rho + coeff * pf.rho(-x) * (1.0 - math::cos(dphi)) / x
}

/// Weighted L2 norm of the polar amplitude.
pub fn polar_norm(pf: &PolarHandle, mu: MuParam, scheme: &QuadratureScheme) -> Result<f64> {
    let sq = integrate_weighted_real(|x| pf.rho(x) * pf.rho(x), mu, scheme)?;
    Ok(math::sqrt(sq.max(0.0)))
}

/// `<x>_f` from the polar representation.
pub fn polar_mean_position(
    pf: &PolarHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    integrate_weighted_real(|x| x * pf.rho(x) * pf.rho(x), mu, scheme)
}

/// `<x>_{D_mu f}` from the polar representation (no transform involved).
pub fn polar_mean_frequency(
    pf: &PolarHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    let base = integrate_weighted_real(|x| pf.phi_deriv(x) * pf.rho(x) * pf.rho(x), mu, scheme)?;
    let coeff = mu.reflection();
    if coeff == 0.0 {
        return Ok(base);
    }
    let refl = integrate_weighted_real(
        |x| {
            if x.abs() < X_EPS {
                pf.rho(x) * pf.rho(-x) * (pf.phi_deriv(x) + pf.phi_deriv(-x))
            } else {
                let dphi = pf.phi(x) - pf.phi(-x);
                pf.rho(x) * pf.rho(-x) * math::sin(dphi) / x
            }
        },
        mu,
        scheme,
    )?;
    Ok(base + coeff * refl)
}

/// Both measured means `(<x>_f, <x>_{D_mu f})` of a polar function.
pub fn polar_means(pf: &PolarHandle, mu: MuParam, scheme: &QuadratureScheme) -> Result<(f64, f64)> {
    Ok((
        polar_mean_position(pf, mu, scheme)?,
        polar_mean_frequency(pf, mu, scheme)?,
    ))
}

/// Signed covariance in both printed forms.
#[derive(Debug, Clone, Copy)]
pub struct Covariance {
    /// `int x phi' rho^2 dmu - <x>_f <x>_{D_mu f}`
    pub value: f64,
    /// `int (x - <x>_f)(A(x) - <x>_{D_mu f}) rho^2 dmu`
    pub alt_form: f64,
}

/// Both covariance forms, without the consistency gate.
pub fn covariance_forms(
    pf: &PolarHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<Covariance> {
    let norm = polar_norm(pf, mu, scheme)?;
    require_unit_norm(norm, "covariance")?;
    let m1 = polar_mean_position(pf, mu, scheme)?;
    let m2 = polar_mean_frequency(pf, mu, scheme)?;
    let primary =
        integrate_weighted_real(|x| x * pf.phi_deriv(x) * pf.rho(x) * pf.rho(x), mu, scheme)?
            - m1 * m2;
    let mut bad_node = None;
    let alt = integrate_weighted_real(
        |x| match phase_bracket(pf, mu, x) {
            Ok(a) => (x - m1) * (a - m2) * pf.rho(x) * pf.rho(x),
            Err(_) => {
                bad_node = Some(x);
                f64::NAN
            }
        },
        mu,
        scheme,
    )?;
    if let Some(x) = bad_node {
        return Err(Error::Numeric(format!(
            "amplitude vanishes at node x = {x} while evaluating the covariance bracket"
        )));
    }
    Ok(Covariance {
        value: primary,
        alt_form: alt,
    })
}

/// Signed covariance `Cov_mu(f)`, cross-checked between its two forms.
pub fn covariance(pf: &PolarHandle, mu: MuParam, scheme: &QuadratureScheme) -> Result<Covariance> {
    let cov = covariance_forms(pf, mu, scheme)?;
    if (cov.value - cov.alt_form).abs() > 1e-6 {
        return Err(Error::Accuracy(format!(
            "covariance forms disagree: {} vs {}",
            cov.value, cov.alt_form
        )));
    }
    Ok(cov)
}

/// Absolute covariance `COV_mu(f) = int |(x - <x>_f)(A(x) - <x>_D)| rho^2 dmu`.
pub fn abs_covariance(pf: &PolarHandle, mu: MuParam, scheme: &QuadratureScheme) -> Result<f64> {
    let norm = polar_norm(pf, mu, scheme)?;
    require_unit_norm(norm, "abs_covariance")?;
    let m1 = polar_mean_position(pf, mu, scheme)?;
    let m2 = polar_mean_frequency(pf, mu, scheme)?;
    let mut bad_node = None;
    let v = integrate_weighted_real(
        |x| match phase_bracket(pf, mu, x) {
            Ok(a) => ((x - m1) * (a - m2)).abs() * pf.rho(x) * pf.rho(x),
            Err(_) => {
                bad_node = Some(x);
                f64::NAN
            }
        },
        mu,
        scheme,
    )?;
    if let Some(x) = bad_node {
        return Err(Error::Numeric(format!(
            "amplitude vanishes at node x = {x} while evaluating the absolute covariance"
        )));
    }
    Ok(v)
}

/// The parity term `A = (mu+1/2) int rho(x) rho(-x) cos[dphi] dmu + 1/2`.
pub fn a_term(pf: &PolarHandle, mu: MuParam, scheme: &QuadratureScheme) -> Result<f64> {
    let norm = polar_norm(pf, mu, scheme)?;
    require_unit_norm(norm, "a_term")?;
    let coeff = mu.reflection();
    if coeff == 0.0 {
        return Ok(0.5);
    }
    let integral = integrate_weighted_real(
        |x| {
            let dphi = pf.phi(x) - pf.phi(-x);
            pf.rho(x) * pf.rho(-x) * math::cos(dphi)
        },
        mu,
        scheme,
    )?;
    Ok(coeff * integral + 0.5)
}

/// The two integrals whose sum is `Delta^2_{mu,2}(D_mu f)`:
/// the amplitude part `int amp(x)^2 dmu` and the phase part
/// `int (A(x) - <x>_D)^2 rho^2 dmu`.
pub fn lemma31_decomposition(
    pf: &PolarHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<(f64, f64)> {
    let norm = polar_norm(pf, mu, scheme)?;
    require_unit_norm(norm, "lemma31_decomposition")?;
    let m2 = polar_mean_frequency(pf, mu, scheme)?;
    let amp = integrate_weighted_real(
        |x| {
            let a = amp_bracket(pf, mu, x);
            a * a
        },
        mu,
        scheme,
    )?;
    let mut bad_node = None;
    let phase = integrate_weighted_real(
        |x| match phase_bracket(pf, mu, x) {
            Ok(a) => {
                let d = a - m2;
                d * d * pf.rho(x) * pf.rho(x)
            }
            Err(_) => {
                bad_node = Some(x);
                f64::NAN
            }
        },
        mu,
        scheme,
    )?;
    if let Some(x) = bad_node {
        return Err(Error::Numeric(format!(
            "amplitude vanishes at node x = {x} in the frequency-dispersion decomposition"
        )));
    }
    Ok((amp, phase))
}

/// `Delta^2_{mu,2}(f)` about the measured position mean, from polar data.
pub fn polar_position_dispersion2(
    pf: &PolarHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    let m1 = polar_mean_position(pf, mu, scheme)?;
    integrate_weighted_real(
        |x| (x - m1) * (x - m1) * pf.rho(x) * pf.rho(x),
        mu,
        scheme,
    )
}

/// Closed-form frequency moments of the chirped function
/// `g = e^{i x^2 cot(alpha)/2} f`:
///
/// ```text
/// <x>_{D(g)}      = cot(alpha) <x>_f + <x>_{D(f)}
/// Delta^2(D(g))   = Delta^2(D(f)) + 2 cot(alpha) Cov(f) + cot^2(alpha) Delta^2(f)
/// ```
pub fn lemma32_chirp_shift(
    pf: &PolarHandle,
    mu: MuParam,
    cot_alpha: f64,
    scheme: &QuadratureScheme,
) -> Result<(f64, f64)> {
    if !cot_alpha.is_finite() {
        return Err(Error::Contract(format!(
            "chirp shift needs a finite cot(alpha), got {cot_alpha}"
        )));
    }
    let (m1, m2) = polar_means(pf, mu, scheme)?;
    let cov = covariance(pf, mu, scheme)?.value;
    let (amp, phase) = lemma31_decomposition(pf, mu, scheme)?;
    let disp2_df = amp + phase;
    let disp2_f = polar_position_dispersion2(pf, mu, scheme)?;
    Ok((
        cot_alpha * m1 + m2,
        disp2_df + 2.0 * cot_alpha * cov + cot_alpha * cot_alpha * disp2_f,
    ))
}

/// Closed-form moments of the fractional transform:
///
/// ```text
/// <x>_{D^a f}      = cos(a) <x>_f + sin(a) <x>_{D f}
/// Delta^2(D^a f)   = cos^2 a Delta^2(f) + 2 cos a sin a Cov(f) + sin^2 a Delta^2(D f)
/// ```
pub fn lemma33_fractional_moments(
    pf: &PolarHandle,
    mu: MuParam,
    alpha: f64,
    scheme: &QuadratureScheme,
) -> Result<(f64, f64)> {
    let (m1, m2) = polar_means(pf, mu, scheme)?;
    let cov = covariance(pf, mu, scheme)?.value;
    let (amp, phase) = lemma31_decomposition(pf, mu, scheme)?;
    let disp2_df = amp + phase;
    let disp2_f = polar_position_dispersion2(pf, mu, scheme)?;
    let (c, s) = (math::cos(alpha), math::sin(alpha));
    Ok((
        c * m1 + s * m2,
        c * c * disp2_f + 2.0 * c * s * cov + s * s * disp2_df,
    ))
}

/// All scalar functionals of one function at one mu.
#[derive(Debug, Clone)]
pub struct FunctionalSummary {
    pub norm2: f64,
    pub mean_pos: f64,
    pub mean_freq: f64,
    /// `(p, Delta_{mu,p}(f))` on the report grid.
    pub disp_p: Vec<(f64, f64)>,
    pub even_energy: f64,
    pub odd_energy: f64,
    pub cov: f64,
    pub abs_cov: f64,
    pub a_term: f64,
}

/// Computes the full summary. Requires the paired handle/polar
/// representations of the same unit-norm function.
pub fn summarize(
    f: &FunctionHandle,
    pf: &PolarHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<FunctionalSummary> {
    let samples = SampledFunction::from_fn(scheme, DomainTag::Position, |x| f.eval(x));
    let norm2 = lp_norm(&samples.values, mu, 2.0, scheme)?;
    require_unit_norm(norm2, "summarize")?;
    let mean_pos = mean_position(&samples.values, mu, scheme)?;
    let mean_freq = mean_frequency(f, mu, scheme)?.value;
    let mut disp_p = Vec::with_capacity(DISPERSION_P_GRID.len());
    for &p in DISPERSION_P_GRID.iter() {
        disp_p.push((p, dispersion(&samples.values, mu, p, mean_pos, scheme)?));
    }
    let (even_energy, odd_energy) = even_odd_energies(&samples.values, mu, scheme)?;
    let cov = covariance(pf, mu, scheme)?.value;
    let abs_cov = abs_covariance(pf, mu, scheme)?;
    let a = a_term(pf, mu, scheme)?;
    Ok(FunctionalSummary {
        norm2,
        mean_pos,
        mean_freq,
        disp_p,
        even_energy,
        odd_energy,
        cov,
        abs_cov,
        a_term: a,
    })
}

/// Rescales a paired representation to unit weighted L2 norm; returns the
/// scaled pair and the factor that was applied.
pub fn normalize(
    f: &FunctionHandle,
    pf: &PolarHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<(FunctionHandle, PolarHandle, f64)> {
    let norm = lp_norm_fn(f, mu, 2.0, scheme)?;
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Numeric(format!(
            "cannot normalize a function of weighted norm {norm}"
        )));
    }
    let factor = 1.0 / norm;
    Ok((
        f.scaled(C64::new(factor, 0.0)),
        pf.scaled_amplitude(factor),
        factor,
    ))
}

/// Max reconstruction error `|f - rho e^{i phi}|` over the scheme nodes.
pub fn polar_consistency(
    f: &FunctionHandle,
    pf: &PolarHandle,
    scheme: &QuadratureScheme,
) -> f64 {
    scheme
        .nodes()
        .iter()
        .map(|&x| math::cabs(f.eval(x) - pf.reconstruct(x)))
        .fold(0.0, f64::max)
}
