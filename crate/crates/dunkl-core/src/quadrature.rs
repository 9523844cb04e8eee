//! Composite Gauss–Legendre quadrature for the weighted measure
//! `|x|^{2mu+1} dx` on a truncated line `[-R, R]`.
//!
//! The rule stores plain Lebesgue weights; the measure weight is applied by
//! the integrator, so one scheme serves every `mu`. Panels are laid out so
//! that x = 0 is always a panel boundary (the weight has a cusp there for
//! non-half-integer `mu`), and the node set is bit-exactly symmetric: the
//! negative half is the mirrored negation of the positive half.
//!
//! No adaptivity anywhere; accuracy is gated by doubling the panel count.

use crate::error::{Error, Result};
use crate::math;
use crate::special::MuParam;
use crate::C64;

use alloc::format;
use alloc::vec::Vec;

/// Identity of a scheme, used to check that sampled data and schemes pair up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeKey {
    radius_bits: u64,
    panels: u32,
    nodes_per_panel: u32,
}

/// Which side of a transform a sample vector lives on. Pure bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainTag {
    Position,
    Frequency,
}

/// Truncated, paneled Gauss–Legendre rule.
#[derive(Debug, Clone)]
pub struct QuadratureScheme {
    radius: f64,
    panels: usize,
    nodes_per_panel: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureScheme {
    /// Composite rule over `[-radius, radius]` with `panels` equal panels of
    /// `nodes_per_panel` Gauss–Legendre points each. `panels` must be even so
    /// the panels split symmetrically about 0.
    pub fn build(radius: f64, panels: usize, nodes_per_panel: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Config(format!(
                "scheme radius must be positive, got {radius}"
            )));
        }
        if panels == 0 || !panels.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "panel count must be positive and even, got {panels}"
            )));
        }
        if !(4..=64).contains(&nodes_per_panel) {
            return Err(Error::Config(format!(
                "nodes per panel must lie in [4, 64], got {nodes_per_panel}"
            )));
        }

        let (gl_nodes, gl_weights) = gauss_legendre(nodes_per_panel);
        let half_panels = panels / 2;
        let h = radius / half_panels as f64;

        // right half [0, R], then mirror
        let mut right_nodes = Vec::with_capacity(half_panels * nodes_per_panel);
        let mut right_weights = Vec::with_capacity(half_panels * nodes_per_panel);
        for p in 0..half_panels {
            let a = p as f64 * h;
            for (xi, wi) in gl_nodes.iter().zip(&gl_weights) {
                right_nodes.push(a + 0.5 * h * (xi + 1.0));
                right_weights.push(0.5 * h * wi);
            }
        }

        let n = panels * nodes_per_panel;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for k in (0..right_nodes.len()).rev() {
            nodes.push(-right_nodes[k]);
            weights.push(right_weights[k]);
        }
        nodes.extend_from_slice(&right_nodes);
        weights.extend_from_slice(&right_weights);

        Ok(QuadratureScheme {
            radius,
            panels,
            nodes_per_panel,
            nodes,
            weights,
        })
    }

    /// The production default: R = 12, 48 panels of 16 nodes (768 nodes).
    /// Resolves the transform chirp down to |sin alpha| ~ 0.05.
    pub fn production_default() -> Self {
        QuadratureScheme::build(12.0, 48, 16).expect("default parameters are valid")
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.radius
    }

    #[inline]
    pub fn panels(&self) -> usize {
        self.panels
    }

    #[inline]
    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Index of the node at `-x_k`; the node set is exactly symmetric.
    #[inline]
    pub fn mirror_index(&self, k: usize) -> usize {
        self.nodes.len() - 1 - k
    }

    pub fn key(&self) -> SchemeKey {
        SchemeKey {
            radius_bits: self.radius.to_bits(),
            panels: self.panels as u32,
            nodes_per_panel: self.nodes_per_panel as u32,
        }
    }

    /// Measure weights `w_k |x_k|^{2mu+1}` for a given mu.
    pub fn measure_weights(&self, mu: MuParam) -> Vec<f64> {
        let e = mu.weight_exponent();
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * math::powf(x.abs(), e))
            .collect()
    }
}

/// Function values on the nodes of a scheme.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    pub values: Vec<C64>,
    pub domain: DomainTag,
    pub scheme_key: SchemeKey,
}

impl SampledFunction {
    pub fn from_fn<F>(scheme: &QuadratureScheme, domain: DomainTag, f: F) -> Self
    where
        F: Fn(f64) -> C64,
    {
        SampledFunction {
            values: scheme.nodes().iter().map(|&x| f(x)).collect(),
            domain,
            scheme_key: scheme.key(),
        }
    }

    pub fn check_scheme(&self, scheme: &QuadratureScheme) -> Result<()> {
        if self.scheme_key != scheme.key() || self.values.len() != scheme.len() {
            return Err(Error::Contract(
                "sampled function does not belong to this scheme".into(),
            ));
        }
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .map(|v| math::cabs(*v))
            .fold(0.0, f64::max)
    }
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    #[inline]
    fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// `sum_k w_k f(x_k) |x_k|^{2mu+1}` in fixed ascending-node order.
pub fn integrate_weighted_samples(
    values: &[C64],
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<C64> {
    if values.len() != scheme.len() {
        return Err(Error::Contract(format!(
            "sample count {} does not match scheme node count {}",
            values.len(),
            scheme.len()
        )));
    }
    let e = mu.weight_exponent();
    let mut re = Kahan::default();
    let mut im = Kahan::default();
    for (k, (&x, &w)) in scheme.nodes().iter().zip(scheme.weights()).enumerate() {
        let v = values[k];
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Numeric(format!(
                "non-finite sample at node {k} (x = {x})"
            )));
        }
        let m = w * math::powf(x.abs(), e);
        re.add(v.re * m);
        im.add(v.im * m);
    }
    Ok(C64::new(re.sum, im.sum))
}

/// Same, evaluating a function handle at the nodes.
pub fn integrate_weighted<F>(mut f: F, mu: MuParam, scheme: &QuadratureScheme) -> Result<C64>
where
    F: FnMut(f64) -> C64,
{
    let e = mu.weight_exponent();
    let mut re = Kahan::default();
    let mut im = Kahan::default();
    for (k, (&x, &w)) in scheme.nodes().iter().zip(scheme.weights()).enumerate() {
        let v = f(x);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Numeric(format!(
                "non-finite integrand at node {k} (x = {x})"
            )));
        }
        let m = w * math::powf(x.abs(), e);
        re.add(v.re * m);
        im.add(v.im * m);
    }
    Ok(C64::new(re.sum, im.sum))
}

/// Real-valued integrand convenience.
pub fn integrate_weighted_real<F>(mut f: F, mu: MuParam, scheme: &QuadratureScheme) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    integrate_weighted(|x| C64::new(f(x), 0.0), mu, scheme).map(|v| v.re)
}

/// Gauss–Legendre nodes and weights on [-1, 1], ascending, via Newton
/// iteration on the Legendre recurrence. Deterministic.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0f64; n];
    let mut weights = alloc::vec![0.0f64; n];
    for i in 0..n.div_ceil(2) {
        // root of P_n closest to this Chebyshev angle
        let mut x = math::cos(math::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_with_deriv(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // i-th guess descends from +1; store ascending with mirror symmetry
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if !n.is_multiple_of(2) {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_deriv(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
