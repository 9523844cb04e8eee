//! The Dunkl transform `D_mu` and the fractional family `D_mu^alpha`.
//!
//! ```text
//! D_mu f(w) = (2^{mu+1} Gamma(mu+1))^{-1} int f(x) E_mu(-iwx) |x|^{2mu+1} dx
//! ```
//!
//! and, for alpha with (2n-1) pi < alpha < (2n+1) pi away from the exact
//! multiples,
//!
//! ```text
//! D_mu^alpha f(w) = N_{mu,n} int e^{i(x^2+w^2) cot(alpha)/2}
//!                   E_mu(-i w x / sin alpha) f(x) |x|^{2mu+1} dx,
//! N_{mu,n} = e^{i(mu+1)((alpha - 2n pi) - sgn(sin alpha) pi/2)}
//!            / (Gamma(mu+1) (2 |sin alpha|)^{mu+1}),
//! ```
//!
//! with the exact branches `f` at alpha = 2n pi and `f(-.)` at
//! alpha = (2n+1) pi. Frequency samples live on the same node set as the
//! position scheme, so transformed data can be re-integrated without
//! interpolation. Everything is O(N^2) direct summation in fixed node
//! order; identical inputs give identical bits.

use crate::error::{Error, Result};
use crate::math;
use crate::operators::FunctionHandle;
use crate::quadrature::{DomainTag, QuadratureScheme, SampledFunction, SchemeKey};
use crate::special::{gamma_fn, plane_wave, MuParam};
use crate::C64;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Window for classifying an angle as an exact multiple of pi. Below this
/// distance cot(alpha) has no usable double-precision meaning.
pub const ALPHA_EPS: f64 = 1e-8;

/// Below this |sin alpha| the default scheme no longer resolves the chirp;
/// evaluation proceeds but carries a warning.
pub const CHIRP_RESOLUTION_SIN: f64 = 0.05;

/// Degenerate-or-not classification of a fractional order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Generic,
    /// alpha = 2n pi: the transform is the identity, exactly.
    Identity,
    /// alpha = (2n+1) pi: the transform is the parity operator, exactly.
    Parity,
}

/// A classified fractional order: the angle, its branch index n with
/// (2n-1) pi < alpha < (2n+1) pi (or the exact multiple for degenerate
/// kinds), and the kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
    branch: i64,
    kind: OrderKind,
}

impl FracOrder {
    pub fn classify(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("non-finite order {alpha}")));
        }
        let two_pi = 2.0 * math::PI;
        let n = math::round(alpha / two_pi);
        if (alpha - two_pi * n).abs() <= ALPHA_EPS {
            return Ok(FracOrder {
                alpha,
                branch: n as i64,
                kind: OrderKind::Identity,
            });
        }
        let m = math::round((alpha - math::PI) / two_pi);
        if (alpha - (2.0 * m + 1.0) * math::PI).abs() <= ALPHA_EPS {
            return Ok(FracOrder {
                alpha,
                branch: m as i64,
                kind: OrderKind::Parity,
            });
        }
        Ok(FracOrder {
            alpha,
            branch: n as i64,
            kind: OrderKind::Generic,
        })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn branch(&self) -> i64 {
        self.branch
    }

    #[inline]
    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn negated(&self) -> Self {
        FracOrder::classify(-self.alpha).expect("finite angle stays finite")
    }

    fn require_generic(&self) -> Result<()> {
        if self.kind != OrderKind::Generic {
            return Err(Error::Contract(format!(
                "order alpha = {} is an exact branch; the requested operation needs a generic angle",
                self.alpha
            )));
        }
        Ok(())
    }

    /// `N_{mu,n}` for a generic order:
    /// `e^{i(mu+1)((alpha - 2n pi) - sgn(sin alpha) pi/2)} / (Gamma(mu+1) (2|sin alpha|)^{mu+1})`.
    ///
    /// The phase sign is the one that makes the family a one-parameter
    /// group (D^a D^b = D^{a+b}), continuous at the exact branches, and
    /// equal to the classical fractional Fourier transform at mu = -1/2;
    /// the opposite sign fails all three.
    pub fn normalizer(&self, mu: MuParam) -> Result<C64> {
        self.require_generic()?;
        let s = math::sin(self.alpha);
        let hat = if s > 0.0 { 1.0 } else { -1.0 };
        let theta = (mu.value() + 1.0)
            * ((self.alpha - 2.0 * math::PI * self.branch as f64) - hat * math::PI / 2.0);
        let gamma = gamma_fn(mu.value() + 1.0).expect("mu + 1 > 0");
        let magnitude = 1.0 / (gamma * math::powf(2.0 * s.abs(), mu.value() + 1.0));
        Ok(math::cis(theta) * magnitude)
    }
}

/// How a transform result was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformPath {
    Direct,
    ChirpFactored,
    ExactBranch,
}

/// Non-fatal quality flags attached to transform output.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// |f(+-R)| exceeded 1e-10 of the peak: truncation is visible.
    TailDecay { ratio: f64 },
    /// |sin alpha| below the resolution band of the default scheme.
    ChirpResolution { sin_alpha: f64 },
}

impl core::fmt::Display for Warning {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Warning::TailDecay { ratio } => {
                write!(f, "tail decay ratio {ratio:.2e} exceeds 1e-10 of peak")
            }
            Warning::ChirpResolution { sin_alpha } => write!(
                f,
                "|sin alpha| = {sin_alpha:.3e} under-resolves the chirp on the default scheme"
            ),
        }
    }
}

/// Output of a fractional transform.
#[derive(Debug, Clone)]
pub struct TransformResult {
    pub samples: SampledFunction,
    pub normalizer: C64,
    pub path: TransformPath,
    pub warnings: Vec<Warning>,
}

/// Precomputed machinery for one (mu, order, scheme) triple: the kernel
/// matrix E_mu(-i w_j x_k / sin alpha), the shared chirp vector and the
/// measure weights. Build once, apply to many functions.
pub struct FracPlan {
    mu: MuParam,
    order: FracOrder,
    scheme_key: SchemeKey,
    n: usize,
    kernel: Vec<C64>,
    chirp: Vec<C64>,
    meas_w: Vec<f64>,
    normalizer: C64,
    build_warnings: Vec<Warning>,
}

impl FracPlan {
    pub fn new(mu: MuParam, order: FracOrder, scheme: &QuadratureScheme) -> Result<Self> {
        let n = scheme.len();
        let mut build_warnings = Vec::new();
        if order.kind() != OrderKind::Generic {
            return Ok(FracPlan {
                mu,
                order,
                scheme_key: scheme.key(),
                n,
                kernel: Vec::new(),
                chirp: Vec::new(),
                meas_w: Vec::new(),
                normalizer: C64::new(1.0, 0.0),
                build_warnings,
            });
        }

        let s = math::sin(order.alpha());
        if s.abs() < CHIRP_RESOLUTION_SIN {
            build_warnings.push(Warning::ChirpResolution { sin_alpha: s.abs() });
        }
        let cot = math::cos(order.alpha()) / s;
        let inv_s = 1.0 / s;

        // The node grid is symmetric and the frequency grid equals it, so the
        // kernel matrix is determined by its positive-positive block:
        // E_mu(-i(-t)) = conj(E_mu(-it)).
        let half = n / 2;
        let pos = &scheme.nodes()[half..];
        let mut base = alloc::vec![C64::new(0.0, 0.0); half * half];
        for a in 0..half {
            for b in a..half {
                let v = plane_wave(mu, pos[a] * pos[b] * inv_s);
                base[a * half + b] = v;
                base[b * half + a] = v;
            }
        }
        let mut kernel = alloc::vec![C64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let (ja, jpos) = if j < half {
                (half - 1 - j, false)
            } else {
                (j - half, true)
            };
            for k in 0..n {
                let (ka, kpos) = if k < half {
                    (half - 1 - k, false)
                } else {
                    (k - half, true)
                };
                let v = base[ja * half + ka];
                kernel[j * n + k] = if jpos == kpos { v } else { v.conj() };
            }
        }

        let chirp: Vec<C64> = scheme
            .nodes()
            .iter()
            .map(|&x| math::cis(0.5 * cot * x * x))
            .collect();
        let meas_w = scheme.measure_weights(mu);
        let normalizer = order.normalizer(mu)?;

        Ok(FracPlan {
            mu,
            order,
            scheme_key: scheme.key(),
            n,
            kernel,
            chirp,
            meas_w,
            normalizer,
            build_warnings,
        })
    }

    #[inline]
    pub fn mu(&self) -> MuParam {
        self.mu
    }

    #[inline]
    pub fn order(&self) -> FracOrder {
        self.order
    }

    #[inline]
    pub fn normalizer(&self) -> C64 {
        self.normalizer
    }

    /// Applies the transform to samples on the paired scheme.
    pub fn apply(&self, input: &SampledFunction, scheme: &QuadratureScheme) -> Result<TransformResult> {
        if scheme.key() != self.scheme_key {
            return Err(Error::Contract(
                "plan was built for a different scheme".into(),
            ));
        }
        input.check_scheme(scheme)?;
        let mut warnings = self.build_warnings.clone();
        if let Some(w) = tail_warning(input) {
            warnings.push(w);
        }

        let values = match self.order.kind() {
            OrderKind::Identity => input.values.clone(),
            OrderKind::Parity => {
                let n = self.n;
                (0..n).map(|j| input.values[n - 1 - j]).collect()
            }
            OrderKind::Generic => {
                let n = self.n;
                let mut g = Vec::with_capacity(n);
                for (k, v) in input.values.iter().enumerate() {
                    if !v.re.is_finite() || !v.im.is_finite() {
                        return Err(Error::Numeric(format!("non-finite input sample at node {k}")));
                    }
                    g.push(*v * self.chirp[k] * self.meas_w[k]);
                }
                let mut out = Vec::with_capacity(n);
                for j in 0..n {
                    let row = &self.kernel[j * n..(j + 1) * n];
                    let mut acc = C64::new(0.0, 0.0);
                    let mut comp = C64::new(0.0, 0.0);
                    for (gk, kk) in g.iter().zip(row) {
                        let y = *gk * *kk - comp;
                        let t = acc + y;
                        comp = (t - acc) - y;
                        acc = t;
                    }
                    let v = self.normalizer * self.chirp[j] * acc;
                    if !v.re.is_finite() || !v.im.is_finite() {
                        return Err(Error::Numeric(format!(
                            "non-finite transform output at node {j}"
                        )));
                    }
                    out.push(v);
                }
                out
            }
        };

        Ok(TransformResult {
            samples: SampledFunction {
                values,
                domain: DomainTag::Frequency,
                scheme_key: self.scheme_key,
            },
            normalizer: self.normalizer,
            path: if self.order.kind() == OrderKind::Generic {
                TransformPath::Direct
            } else {
                TransformPath::ExactBranch
            },
            warnings,
        })
    }

    pub fn apply_handle(
        &self,
        f: &FunctionHandle,
        scheme: &QuadratureScheme,
    ) -> Result<TransformResult> {
        let samples = SampledFunction::from_fn(scheme, DomainTag::Position, |x| f.eval(x));
        self.apply(&samples, scheme)
    }
}

fn tail_warning(input: &SampledFunction) -> Option<Warning> {
    let peak = input.max_abs();
    if peak == 0.0 {
        return None;
    }
    let n = input.values.len();
    let tail = math::cabs(input.values[0]).max(math::cabs(input.values[n - 1]));
    let ratio = tail / peak;
    if ratio > 1e-10 {
        Some(Warning::TailDecay { ratio })
    } else {
        None
    }
}

/// `D_mu f` sampled on the scheme nodes: plain direct summation, no plan.
/// This is the reference path the fractional machinery is checked against.
pub fn dunkl_transform_samples(
    input: &SampledFunction,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<SampledFunction> {
    input.check_scheme(scheme)?;
    let gamma = gamma_fn(mu.value() + 1.0).expect("mu + 1 > 0");
    let norm = 1.0 / (math::powf(2.0, mu.value() + 1.0) * gamma);
    let meas = scheme.measure_weights(mu);
    let nodes = scheme.nodes();
    let mut out = Vec::with_capacity(scheme.len());
    for &w in nodes {
        let mut acc = C64::new(0.0, 0.0);
        let mut comp = C64::new(0.0, 0.0);
        for (k, &x) in nodes.iter().enumerate() {
            let v = input.values[k];
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Numeric(format!("non-finite input sample at node {k}")));
            }
            let y = v * plane_wave(mu, w * x) * meas[k] - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        out.push(acc * norm);
    }
    Ok(SampledFunction {
        values: out,
        domain: DomainTag::Frequency,
        scheme_key: scheme.key(),
    })
}

/// `D_mu f` for a function handle.
pub fn dunkl_transform(
    f: &FunctionHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<SampledFunction> {
    let samples = SampledFunction::from_fn(scheme, DomainTag::Position, |x| f.eval(x));
    dunkl_transform_samples(&samples, mu, scheme)
}

/// `D_mu^alpha` applied to samples; builds a throwaway plan. Sweeps should
/// build a [`FracPlan`] once and reuse it.
pub fn fractional_dunkl_transform(
    input: &SampledFunction,
    mu: MuParam,
    order: FracOrder,
    scheme: &QuadratureScheme,
) -> Result<TransformResult> {
    FracPlan::new(mu, order, scheme)?.apply(input, scheme)
}

/// `D_mu^alpha f` for a function handle.
pub fn fractional_dunkl_transform_fn(
    f: &FunctionHandle,
    mu: MuParam,
    order: FracOrder,
    scheme: &QuadratureScheme,
) -> Result<TransformResult> {
    let samples = SampledFunction::from_fn(scheme, DomainTag::Position, |x| f.eval(x));
    fractional_dunkl_transform(&samples, mu, order, scheme)
}

/// The chirp factorization route:
///
/// ```text
/// D_mu^alpha f(w) = e^{i(mu+1)((a - 2n pi) - sgn(sin a) pi/2)} / |sin a|^{mu+1}
///                   * e^{i w^2 cot(a)/2} * D_mu(g)(w / sin a),
/// g(x) = e^{i x^2 cot(a)/2} f(x).
/// ```
///
/// An independent composition used to cross-validate the direct kernel path.
pub fn fractional_via_chirp(
    input: &SampledFunction,
    mu: MuParam,
    order: FracOrder,
    scheme: &QuadratureScheme,
) -> Result<TransformResult> {
    order.require_generic()?;
    input.check_scheme(scheme)?;
    let alpha = order.alpha();
    let s = math::sin(alpha);
    let cot = math::cos(alpha) / s;
    let hat = if s > 0.0 { 1.0 } else { -1.0 };
    // same phase convention as FracOrder::normalizer
    let theta = (mu.value() + 1.0)
        * ((alpha - 2.0 * math::PI * order.branch() as f64) - hat * math::PI / 2.0);
    let phase = math::cis(theta) / math::powf(s.abs(), mu.value() + 1.0);

    let gamma = gamma_fn(mu.value() + 1.0).expect("mu + 1 > 0");
    let dunkl_norm = 1.0 / (math::powf(2.0, mu.value() + 1.0) * gamma);
    let meas = scheme.measure_weights(mu);
    let nodes = scheme.nodes();

    let g: Vec<C64> = nodes
        .iter()
        .zip(&input.values)
        .map(|(&x, &v)| v * math::cis(0.5 * cot * x * x))
        .collect();

    let mut warnings = Vec::new();
    if s.abs() < CHIRP_RESOLUTION_SIN {
        warnings.push(Warning::ChirpResolution { sin_alpha: s.abs() });
    }
    if let Some(w) = tail_warning(input) {
        warnings.push(w);
    }

    let mut out = Vec::with_capacity(scheme.len());
    for &w in nodes {
        let target = w / s; // D_mu(g) evaluated at w / sin alpha
        let mut acc = C64::new(0.0, 0.0);
        let mut comp = C64::new(0.0, 0.0);
        for (k, &x) in nodes.iter().enumerate() {
            let y = g[k] * plane_wave(mu, target * x) * meas[k] - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        let v = phase * math::cis(0.5 * cot * w * w) * acc * dunkl_norm;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Numeric(format!("non-finite chirp-path output at w = {w}")));
        }
        out.push(v);
    }

    Ok(TransformResult {
        samples: SampledFunction {
            values: out,
            domain: DomainTag::Frequency,
            scheme_key: scheme.key(),
        },
        normalizer: order.normalizer(mu)?,
        path: TransformPath::ChirpFactored,
        warnings,
    })
}

/// Inverse of `D_mu^alpha`, i.e. `D_mu^{-alpha}` applied to the result.
pub fn inverse_fractional(
    result: &SampledFunction,
    mu: MuParam,
    order: FracOrder,
    scheme: &QuadratureScheme,
) -> Result<SampledFunction> {
    result.check_scheme(scheme)?;
    let back = FracPlan::new(mu, order.negated(), scheme)?.apply(result, scheme)?;
    Ok(SampledFunction {
        values: back.samples.values,
        domain: DomainTag::Position,
        scheme_key: scheme.key(),
    })
}

/// Sup-norm over the scheme nodes of `D^alpha(D^beta f) - D^{alpha+beta} f`.
pub fn group_law_residual(
    f: &FunctionHandle,
    mu: MuParam,
    alpha: f64,
    beta: f64,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    let order_b = FracOrder::classify(beta)?;
    let order_a = FracOrder::classify(alpha)?;
    let order_ab = FracOrder::classify(alpha + beta)?;

    let input = SampledFunction::from_fn(scheme, DomainTag::Position, |x| f.eval(x));
    let first = FracPlan::new(mu, order_b, scheme)?.apply(&input, scheme)?;
    let intermediate = SampledFunction {
        values: first.samples.values,
        domain: DomainTag::Position,
        scheme_key: scheme.key(),
    };
    let composed = FracPlan::new(mu, order_a, scheme)?.apply(&intermediate, scheme)?;
    let single = FracPlan::new(mu, order_ab, scheme)?.apply(&input, scheme)?;

    let mut sup: f64 = 0.0;
    for (a, b) in composed
        .samples
        .values
        .iter()
        .zip(&single.samples.values)
    {
        sup = sup.max(math::cabs(*a - *b));
    }
    Ok(sup)
}

/// Human-readable warning list (used by the report layer).
pub fn warning_strings(warnings: &[Warning]) -> Vec<String> {
    warnings.iter().map(|w| format!("{w}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_weighted_samples;

    fn mu(m: f64) -> MuParam {
        MuParam::new(m).unwrap()
    }

    fn gaussian_handle() -> FunctionHandle {
        FunctionHandle::with_deriv(
            |x| C64::new(math::exp(-0.5 * x * x), 0.0),
            |x| C64::new(-x * math::exp(-0.5 * x * x), 0.0),
        )
    }

    #[test]
    fn classification() {
        assert_eq!(FracOrder::classify(0.0).unwrap().kind(), OrderKind::Identity);
        assert_eq!(
            FracOrder::classify(2.0 * math::PI).unwrap().kind(),
            OrderKind::Identity
        );
        assert_eq!(FracOrder::classify(math::PI).unwrap().kind(), OrderKind::Parity);
        assert_eq!(FracOrder::classify(-math::PI).unwrap().kind(), OrderKind::Parity);
        let o = FracOrder::classify(3.0 * math::PI / 2.0).unwrap();
        assert_eq!(o.kind(), OrderKind::Generic);
        assert_eq!(o.branch(), 1);
        let o = FracOrder::classify(-math::PI / 3.0).unwrap();
        assert_eq!(o.kind(), OrderKind::Generic);
        assert_eq!(o.branch(), 0);
        assert_eq!(
            FracOrder::classify(math::PI + 1e-9).unwrap().kind(),
            OrderKind::Parity
        );
    }

    #[test]
    fn normalizer_magnitude_invariant() {
        for (m, a) in [(0.5, math::PI / 4.0), (1.5, 2.0), (0.0, -1.0)] {
            let order = FracOrder::classify(a).unwrap();
            let n = order.normalizer(mu(m)).unwrap();
            let want = 1.0
                / (gamma_fn(m + 1.0).unwrap()
                    * math::powf(2.0 * math::sin(a).abs(), m + 1.0));
            assert!((math::cabs(n) - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn gaussian_is_fixed_point_of_dunkl() {
        let scheme = QuadratureScheme::production_default();
        let f = gaussian_handle();
        for m in [-0.5, 0.0, 1.0] {
            let out = dunkl_transform(&f, mu(m), &scheme).unwrap();
            for (k, &w) in scheme.nodes().iter().enumerate() {
                if w.abs() <= 8.0 {
                    let want = math::exp(-0.5 * w * w);
                    let err = math::cabs(out.values[k] - C64::new(want, 0.0));
                    assert!(err < 1e-9, "mu={m} w={w}: err {err:e}");
                }
            }
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let scheme = QuadratureScheme::build(6.0, 8, 8).unwrap();
        let z = SampledFunction::from_fn(&scheme, DomainTag::Position, |_| C64::new(0.0, 0.0));
        let out = dunkl_transform_samples(&z, mu(0.5), &scheme).unwrap();
        assert!(out.values.iter().all(|v| math::cabs(*v) == 0.0));
    }

    #[test]
    fn quarter_turn_coincides_with_dunkl() {
        let scheme = QuadratureScheme::production_default();
        let f = gaussian_handle();
        for m in [-0.5, 0.5, 1.5] {
            let direct = dunkl_transform(&f, mu(m), &scheme).unwrap();
            let order = FracOrder::classify(math::PI / 2.0).unwrap();
            let frac = fractional_dunkl_transform_fn(&f, mu(m), order, &scheme).unwrap();
            let mut sup: f64 = 0.0;
            for (a, b) in frac.samples.values.iter().zip(&direct.values) {
                sup = sup.max(math::cabs(*a - *b));
            }
            assert!(sup < 1e-10, "mu={m}: sup {sup:e}");
        }
    }

    #[test]
    fn exact_branches() {
        let scheme = QuadratureScheme::build(8.0, 16, 8).unwrap();
        let input = SampledFunction::from_fn(&scheme, DomainTag::Position, |x| {
            C64::new(math::exp(-0.5 * x * x), 0.3 * x)
        });
        let id = fractional_dunkl_transform(&input, mu(0.7), FracOrder::classify(0.0).unwrap(), &scheme)
            .unwrap();
        assert_eq!(id.path, TransformPath::ExactBranch);
        assert_eq!(id.samples.values, input.values);

        let par =
            fractional_dunkl_transform(&input, mu(0.7), FracOrder::classify(math::PI).unwrap(), &scheme)
                .unwrap();
        for (j, v) in par.samples.values.iter().enumerate() {
            assert_eq!(*v, input.values[scheme.len() - 1 - j]);
        }
    }

    #[test]
    fn chirp_path_matches_direct() {
        let scheme = QuadratureScheme::production_default();
        let f = gaussian_handle();
        let input = SampledFunction::from_fn(&scheme, DomainTag::Position, |x| f.eval(x));
        for (m, a) in [(0.0, math::PI / 4.0), (1.0, -math::PI / 3.0), (0.5, 2.0)] {
            let order = FracOrder::classify(a).unwrap();
            let direct = fractional_dunkl_transform(&input, mu(m), order, &scheme).unwrap();
            let chirped = fractional_via_chirp(&input, mu(m), order, &scheme).unwrap();
            assert_eq!(chirped.path, TransformPath::ChirpFactored);
            let mut sup: f64 = 0.0;
            for (x, y) in direct
                .samples
                .values
                .iter()
                .zip(&chirped.samples.values)
            {
                sup = sup.max(math::cabs(*x - *y));
            }
            assert!(sup < 1e-8, "mu={m} alpha={a}: sup {sup:e}");
        }
    }

    #[test]
    fn chirp_path_rejects_exact_branches() {
        let scheme = QuadratureScheme::build(6.0, 8, 8).unwrap();
        let input = SampledFunction::from_fn(&scheme, DomainTag::Position, |_| C64::new(1.0, 0.0));
        let err = fractional_via_chirp(&input, mu(0.0), FracOrder::classify(0.0).unwrap(), &scheme);
        assert!(matches!(err, Err(Error::Contract(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let scheme = QuadratureScheme::production_default();
        let f = gaussian_handle();
        let m = mu(0.5);
        let order = FracOrder::classify(0.9).unwrap();
        let fwd = fractional_dunkl_transform_fn(&f, m, order, &scheme).unwrap();
        let back = inverse_fractional(&fwd.samples, m, order, &scheme).unwrap();
        let mut sup: f64 = 0.0;
        for (k, &x) in scheme.nodes().iter().enumerate() {
            sup = sup.max(math::cabs(back.values[k] - f.eval(x)));
        }
        assert!(sup < 1e-5, "round-trip sup {sup:e}");
        assert_eq!(back.domain, DomainTag::Position);
    }

    #[test]
    fn classical_inverse_round_trip() {
        // alpha = pi/2 at mu = -1/2 is the classical Fourier pair
        let scheme = QuadratureScheme::production_default();
        let f = gaussian_handle();
        let m = mu(-0.5);
        let order = FracOrder::classify(math::PI / 2.0).unwrap();
        let fwd = fractional_dunkl_transform_fn(&f, m, order, &scheme).unwrap();
        let back = inverse_fractional(&fwd.samples, m, order, &scheme).unwrap();
        for (k, &x) in scheme.nodes().iter().enumerate() {
            let err = math::cabs(back.values[k] - f.eval(x));
            assert!(err < 1e-6, "x={x}: err {err:e}");
        }
    }

    #[test]
    fn group_law() {
        let scheme = QuadratureScheme::production_default();
        let f = gaussian_handle();
        let r = group_law_residual(&f, mu(0.0), math::PI / 4.0, math::PI / 4.0, &scheme).unwrap();
        assert!(r < 1e-5, "pi/4+pi/4: {r:e}");
        let r = group_law_residual(&f, mu(0.5), 0.3, -0.3, &scheme).unwrap();
        assert!(r < 1e-5, "0.3-0.3: {r:e}");
        let r = group_law_residual(&f, mu(1.0), math::PI / 2.0, math::PI / 2.0, &scheme).unwrap();
        assert!(r < 1e-5, "pi/2+pi/2: {r:e}");
    }

    #[test]
    fn plancherel_and_unitarity() {
        let scheme = QuadratureScheme::production_default();
        let f = gaussian_handle();
        for m in [-0.5, 0.0, 1.5] {
            let mp = mu(m);
            let input = SampledFunction::from_fn(&scheme, DomainTag::Position, |x| f.eval(x));
            let norm_in = integrate_weighted_samples(
                &input.values.iter().map(|v| v * v.conj()).collect::<Vec<_>>(),
                mp,
                &scheme,
            )
            .unwrap()
            .re
            .sqrt();
            for a in [math::PI / 2.0, 1.0] {
                let out =
                    fractional_dunkl_transform(&input, mp, FracOrder::classify(a).unwrap(), &scheme)
                        .unwrap();
                let norm_out = integrate_weighted_samples(
                    &out.samples
                        .values
                        .iter()
                        .map(|v| v * v.conj())
                        .collect::<Vec<_>>(),
                    mp,
                    &scheme,
                )
                .unwrap()
                .re
                .sqrt();
                assert!(
                    (norm_out - norm_in).abs() < 1e-6 * norm_in,
                    "mu={m} alpha={a}: {norm_out} vs {norm_in}"
                );
            }
        }
    }

    #[test]
    fn derivative_intertwining() {
        // D_mu(T_mu f)(w) = i w D_mu(f)(w)
        let scheme = QuadratureScheme::production_default();
        let f = gaussian_handle();
        for m in [-0.5, 0.5] {
            let mp = mu(m);
            let tf = SampledFunction::from_fn(&scheme, DomainTag::Position, |x| {
                crate::operators::apply_t_mu(&f, mp, x).unwrap()
            });
            let lhs = dunkl_transform_samples(&tf, mp, &scheme).unwrap();
            let rhs = dunkl_transform(&f, mp, &scheme).unwrap();
            for (k, &w) in scheme.nodes().iter().enumerate() {
                if w.abs() <= 8.0 {
                    let want = C64::new(0.0, w) * rhs.values[k];
                    let err = math::cabs(lhs.values[k] - want);
                    assert!(err < 1e-7, "mu={m} w={w}: {err:e}");
                }
            }
        }
    }

    #[test]
    fn tail_warning_is_attached() {
        let scheme = QuadratureScheme::build(4.0, 8, 8).unwrap();
        // too-wide Gaussian: visible tails at R = 4
        let input = SampledFunction::from_fn(&scheme, DomainTag::Position, |x| {
            C64::new(math::exp(-0.05 * x * x), 0.0)
        });
        let out = fractional_dunkl_transform(
            &input,
            mu(0.0),
            FracOrder::classify(math::PI / 2.0).unwrap(),
            &scheme,
        )
        .unwrap();
        assert!(out
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::TailDecay { .. })));
    }

    #[test]
    fn mismatched_scheme_is_rejected() {
        let s1 = QuadratureScheme::build(6.0, 8, 8).unwrap();
        let s2 = QuadratureScheme::build(6.0, 8, 16).unwrap();
        let input = SampledFunction::from_fn(&s1, DomainTag::Position, |_| C64::new(1.0, 0.0));
        assert!(matches!(
            inverse_fractional(&input, mu(0.0), FracOrder::classify(0.4).unwrap(), &s2),
            Err(Error::Contract(_))
        ));
    }
}
