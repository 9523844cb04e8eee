//! The Dunkl operator `T_mu` and its algebraic identities.
//!
//! `T_mu f(x) = f'(x) + (mu + 1/2) (f(x) - f(-x)) / x`, with the removable
//! singularity at x = 0 replaced by its limit: `(f(x) - f(-x))/x -> 2 f_o'(0)`,
//! evaluated as the even part of the supplied derivative.

use crate::error::{Error, Result};
use crate::math;
use crate::quadrature::{integrate_weighted, QuadratureScheme};
use crate::special::MuParam;
use crate::C64;

use alloc::sync::Arc;

/// Window around x = 0 in which difference quotients use their limits.
pub const X_EPS: f64 = 1e-6;

type EvalFn = dyn Fn(f64) -> C64 + Send + Sync;
type RealFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A complex-valued function of a real variable, with an optional analytic
/// classical derivative. Derivatives are supplied, never approximated.
#[derive(Clone)]
pub struct FunctionHandle {
    eval: Arc<EvalFn>,
    deriv: Option<Arc<EvalFn>>,
}

impl core::fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("deriv", &self.deriv.is_some())
            .finish()
    }
}

impl FunctionHandle {
    pub fn new<F>(eval: F) -> Self
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        FunctionHandle {
            eval: Arc::new(eval),
            deriv: None,
        }
    }

    pub fn with_deriv<F, D>(eval: F, deriv: D) -> Self
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
        D: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        FunctionHandle {
            eval: Arc::new(eval),
            deriv: Some(Arc::new(deriv)),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> C64 {
        (self.eval)(x)
    }

    #[inline]
    pub fn has_deriv(&self) -> bool {
        self.deriv.is_some()
    }

    pub fn deriv_at(&self, x: f64) -> Result<C64> {
        match &self.deriv {
            Some(d) => Ok(d(x)),
            None => Err(Error::Contract(
                "operation requires the classical derivative, which this handle does not carry"
                    .into(),
            )),
        }
    }

    /// The handle for `y -> y f(y)`, with derivative `f + y f'`.
    pub fn times_x(&self) -> Result<FunctionHandle> {
        let e = Arc::clone(&self.eval);
        let d = self
            .deriv
            .clone()
            .ok_or_else(|| Error::Contract("times_x requires a derivative".into()))?;
        let e2 = Arc::clone(&self.eval);
        Ok(FunctionHandle::with_deriv(
            move |x| e(x) * x,
            move |x| e2(x) + d(x) * x,
        ))
    }

    /// Pointwise product, with the product-rule derivative when both carry one.
    pub fn product(&self, other: &FunctionHandle) -> FunctionHandle {
        let fe = Arc::clone(&self.eval);
        let ge = Arc::clone(&other.eval);
        match (&self.deriv, &other.deriv) {
            (Some(fd), Some(gd)) => {
                let fd = Arc::clone(fd);
                let gd = Arc::clone(gd);
                let fe2 = Arc::clone(&self.eval);
                let ge2 = Arc::clone(&other.eval);
                FunctionHandle::with_deriv(
                    move |x| fe(x) * ge(x),
                    move |x| fd(x) * ge2(x) + fe2(x) * gd(x),
                )
            }
            _ => FunctionHandle::new(move |x| fe(x) * ge(x)),
        }
    }

    /// Multiplies by the unit-modulus chirp `e^{i c x^2 / 2}`.
    pub fn chirped(&self, c: f64) -> FunctionHandle {
        let e = Arc::clone(&self.eval);
        match &self.deriv {
            Some(d) => {
                let d = Arc::clone(d);
                let e2 = Arc::clone(&self.eval);
                FunctionHandle::with_deriv(
                    move |x| e(x) * math::cis(0.5 * c * x * x),
                    move |x| {
                        let ch = math::cis(0.5 * c * x * x);
                        (d(x) + e2(x) * C64::new(0.0, c * x)) * ch
                    },
                )
            }
            None => FunctionHandle::new(move |x| e(x) * math::cis(0.5 * c * x * x)),
        }
    }

    /// Scales by a complex constant.
    pub fn scaled(&self, c: C64) -> FunctionHandle {
        let e = Arc::clone(&self.eval);
        match &self.deriv {
            Some(d) => {
                let d = Arc::clone(d);
                FunctionHandle::with_deriv(move |x| e(x) * c, move |x| d(x) * c)
            }
            None => FunctionHandle::new(move |x| e(x) * c),
        }
    }
}

/// Amplitude–phase representation `f = rho e^{i phi}` with the four supplied
/// derivatives. `rho >= 0`; for sign-changing real functions the phase
/// carries the sign as a locally constant 0/pi step.
#[derive(Clone)]
pub struct PolarHandle {
    rho: Arc<RealFn>,
    phi: Arc<RealFn>,
    rho_deriv: Arc<RealFn>,
    phi_deriv: Arc<RealFn>,
}

impl core::fmt::Debug for PolarHandle {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("PolarHandle").finish()
    }
}

impl PolarHandle {
    pub fn new<R, P, RD, PD>(rho: R, phi: P, rho_deriv: RD, phi_deriv: PD) -> Self
    where
        R: Fn(f64) -> f64 + Send + Sync + 'static,
        P: Fn(f64) -> f64 + Send + Sync + 'static,
        RD: Fn(f64) -> f64 + Send + Sync + 'static,
        PD: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PolarHandle {
            rho: Arc::new(rho),
            phi: Arc::new(phi),
            rho_deriv: Arc::new(rho_deriv),
            phi_deriv: Arc::new(phi_deriv),
        }
    }

    #[inline]
    pub fn rho(&self, x: f64) -> f64 {
        (self.rho)(x)
    }

    #[inline]
    pub fn phi(&self, x: f64) -> f64 {
        (self.phi)(x)
    }

    #[inline]
    pub fn rho_deriv(&self, x: f64) -> f64 {
        (self.rho_deriv)(x)
    }

    #[inline]
    pub fn phi_deriv(&self, x: f64) -> f64 {
        (self.phi_deriv)(x)
    }

    /// `rho(x) e^{i phi(x)}`.
    #[inline]
    pub fn reconstruct(&self, x: f64) -> C64 {
        math::cis(self.phi(x)) * self.rho(x)
    }

    /// Rescales the amplitude (used by normalization).
    pub fn scaled_amplitude(&self, factor: f64) -> PolarHandle {
        let r = Arc::clone(&self.rho);
        let rd = Arc::clone(&self.rho_deriv);
        let p = Arc::clone(&self.phi);
        let pd = Arc::clone(&self.phi_deriv);
        PolarHandle {
            rho: Arc::new(move |x| r(x) * factor),
            phi: p,
            rho_deriv: Arc::new(move |x| rd(x) * factor),
            phi_deriv: pd,
        }
    }
}

/// `T_mu f(x)`.
pub fn apply_t_mu(f: &FunctionHandle, mu: MuParam, x: f64) -> Result<C64> {
    let d = f.deriv_at(x)?;
    let quotient = if x.abs() < X_EPS {
        // limit of (f(x)-f(-x))/x: twice the odd part's slope, i.e. the even
        // part of f' at x
        f.deriv_at(x)? + f.deriv_at(-x)?
    } else {
        (f.eval(x) - f.eval(-x)) / x
    };
    Ok(d + quotient * mu.reflection())
}

/// Residual `|T_mu(fg) - (T_mu f) g - f (T_mu g)|` at a point.
///
/// The difference part of `T_mu` is not a derivation, so this vanishes in
/// general only when at least one factor is even; the residual is reported,
/// never asserted.
pub fn product_rule_residual(
    f: &FunctionHandle,
    g: &FunctionHandle,
    mu: MuParam,
    x: f64,
) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Contract(
            "product rule probe is defined away from x = 0".into(),
        ));
    }
    let fg = f.product(g);
    let lhs = apply_t_mu(&fg, mu, x)?;
    let rhs = apply_t_mu(f, mu, x)? * g.eval(x) + f.eval(x) * apply_t_mu(g, mu, x)?;
    Ok(math::cabs(lhs - rhs))
}

/// `(x T_mu - T_mu x) f(x)`; equals `-f(x) - (2mu+1) f(-x)`.
pub fn commutator_minus(f: &FunctionHandle, mu: MuParam, x: f64) -> Result<C64> {
    let xf = f.times_x()?;
    Ok(apply_t_mu(f, mu, x)? * x - apply_t_mu(&xf, mu, x)?)
}

/// `(x T_mu + T_mu x) f(x)`; equals `2 x f'(x) + 2(mu+1) f(x)`.
pub fn commutator_plus(f: &FunctionHandle, mu: MuParam, x: f64) -> Result<C64> {
    let xf = f.times_x()?;
    Ok(apply_t_mu(f, mu, x)? * x + apply_t_mu(&xf, mu, x)?)
}

/// `|int T_mu f . g dmu + int f . T_mu g dmu|` — the anti-symmetry defect.
pub fn antisymmetry_residual(
    f: &FunctionHandle,
    g: &FunctionHandle,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    if !f.has_deriv() || !g.has_deriv() {
        return Err(Error::Contract(
            "anti-symmetry residual needs derivatives on both handles".into(),
        ));
    }
    let a = integrate_weighted(
        |x| apply_t_mu(f, mu, x).unwrap_or(C64::new(f64::NAN, 0.0)) * g.eval(x),
        mu,
        scheme,
    )?;
    let b = integrate_weighted(
        |x| f.eval(x) * apply_t_mu(g, mu, x).unwrap_or(C64::new(f64::NAN, 0.0)),
        mu,
        scheme,
    )?;
    Ok(math::cabs(a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{dunkl_kernel, dunkl_kernel_deriv, SeriesControl};

    fn mu(m: f64) -> MuParam {
        MuParam::new(m).unwrap()
    }

    fn gaussian(scale: f64) -> FunctionHandle {
        FunctionHandle::with_deriv(
            move |x| C64::new(math::exp(-scale * x * x), 0.0),
            move |x| C64::new(-2.0 * scale * x * math::exp(-scale * x * x), 0.0),
        )
    }

    /// x -> E_mu(b x) with its exact derivative.
    fn kernel_wave(m: MuParam, b: C64) -> FunctionHandle {
        let ctl = SeriesControl::default();
        FunctionHandle::with_deriv(
            move |x| dunkl_kernel(m, b * x, &ctl).unwrap(),
            move |x| dunkl_kernel_deriv(m, b * x, &ctl).unwrap() * b,
        )
    }

    #[test]
    fn even_square_kills_difference_term() {
        let f = FunctionHandle::with_deriv(
            |x| C64::new(x * x, 0.0),
            |x| C64::new(2.0 * x, 0.0),
        );
        for m in [-0.5, 0.0, 1.5] {
            let v = apply_t_mu(&f, mu(m), 3.0).unwrap();
            assert!(math::cabs(v - C64::new(6.0, 0.0)) < 1e-12, "mu={m}");
        }
    }

    #[test]
    fn identity_function_direct_substitution() {
        // f = x: T_mu f = 1 + 2(mu + 1/2) = 2mu + 2
        let f = FunctionHandle::with_deriv(|x| C64::new(x, 0.0), |_| C64::new(1.0, 0.0));
        let v = apply_t_mu(&f, mu(0.5), 1.7).unwrap();
        assert!(math::cabs(v - C64::new(3.0, 0.0)) < 1e-12);
    }

    #[test]
    fn reduction_to_classical_derivative() {
        let f = gaussian(0.5);
        for x in [0.3, -1.2, 4.0] {
            let v = apply_t_mu(&f, mu(-0.5), x).unwrap();
            let want = f.deriv_at(x).unwrap();
            assert_eq!(v, want, "x={x}");
        }
    }

    #[test]
    fn near_zero_uses_the_limit() {
        // odd function x e^{-x^2}: (f(x)-f(-x))/x -> 2 f'(0) = 2
        let f = FunctionHandle::with_deriv(
            |x| C64::new(x * math::exp(-x * x), 0.0),
            |x| C64::new((1.0 - 2.0 * x * x) * math::exp(-x * x), 0.0),
        );
        let v = apply_t_mu(&f, mu(0.5), 1e-9).unwrap();
        // f'(0) + (mu+1/2) * 2 f'(0) = 1 + 2 = 3
        assert!(math::cabs(v - C64::new(3.0, 0.0)) < 1e-9, "{v}");
    }

    #[test]
    fn eigen_equation_for_the_kernel() {
        // T_mu E_mu(b .) = b E_mu(b .)
        let m = mu(0.8);
        let b = C64::new(0.4, 0.2);
        let f = kernel_wave(m, b);
        let x = 1.1;
        let got = apply_t_mu(&f, m, x).unwrap();
        let want = dunkl_kernel(m, b * x, &SeriesControl::default()).unwrap() * b;
        assert!(math::cabs(got - want) < 1e-12 * (1.0 + math::cabs(want)));
    }

    #[test]
    fn product_rule_even_factors() {
        let f = FunctionHandle::with_deriv(
            |x| C64::new(x * x, 0.0),
            |x| C64::new(2.0 * x, 0.0),
        );
        let g = gaussian(1.0);
        let r = product_rule_residual(&f, &g, mu(0.5), 1.0).unwrap();
        assert!(r < 1e-10, "residual {r}");
    }

    #[test]
    fn product_rule_constants() {
        let one = FunctionHandle::with_deriv(|_| C64::new(1.0, 0.0), |_| C64::new(0.0, 0.0));
        let r = product_rule_residual(&one, &one, mu(1.0), 2.0).unwrap();
        assert!(r < 1e-15);
    }

    #[test]
    fn product_rule_fails_for_two_odd_factors() {
        // documents that the stated identity is not a derivation
        let f = FunctionHandle::with_deriv(|x| C64::new(x, 0.0), |_| C64::new(1.0, 0.0));
        let r = product_rule_residual(&f, &f, mu(1.0), 2.0).unwrap();
        assert!(r > 1e-2, "expected a visible residual, got {r}");
    }

    #[test]
    fn commutator_minus_examples() {
        // mu = -1/2: classical [x, d/dx] = -1
        let f = gaussian(0.5);
        let x = 0.7;
        let v = commutator_minus(&f, mu(-0.5), x).unwrap();
        let want = -f.eval(x);
        assert!(math::cabs(v - want) < 1e-12);

        // mu = 1, even f: -(1 + 3) f(1)
        let v = commutator_minus(&f, mu(1.0), 1.0).unwrap();
        let want = f.eval(1.0) * -4.0;
        assert!(math::cabs(v - want) < 1e-12);

        // odd f = x e^{-x^2}: -f(1) - 2 f(-1) = f(1) at mu = 0.5
        let f = FunctionHandle::with_deriv(
            |x| C64::new(x * math::exp(-x * x), 0.0),
            |x| C64::new((1.0 - 2.0 * x * x) * math::exp(-x * x), 0.0),
        );
        let v = commutator_minus(&f, mu(0.5), 1.0).unwrap();
        assert!(math::cabs(v - f.eval(1.0)) < 1e-12);
    }

    #[test]
    fn commutator_plus_examples() {
        // f = 1: 2(mu+1)
        let one = FunctionHandle::with_deriv(|_| C64::new(1.0, 0.0), |_| C64::new(0.0, 0.0));
        for m in [-0.5, 0.0, 1.5] {
            let v = commutator_plus(&one, mu(m), 2.0).unwrap();
            assert!(math::cabs(v - C64::new(2.0 * (m + 1.0), 0.0)) < 1e-12);
        }
        // f = e^{-x^2/2}, mu = 0, x = 1: 2 x f' + 2 f = 0
        let f = gaussian(0.5);
        let v = commutator_plus(&f, mu(0.0), 1.0).unwrap();
        assert!(math::cabs(v) < 1e-12);
        // f = x^2, mu = 0.5, x = 1: 4 + 3 = 7
        let f = FunctionHandle::with_deriv(
            |x| C64::new(x * x, 0.0),
            |x| C64::new(2.0 * x, 0.0),
        );
        let v = commutator_plus(&f, mu(0.5), 1.0).unwrap();
        assert!(math::cabs(v - C64::new(7.0, 0.0)) < 1e-12);
    }

    #[test]
    fn commutator_identities_pointwise_on_nodes() {
        let s = QuadratureScheme::production_default();
        let f = gaussian(0.5);
        for m in [-0.5, 0.0, 0.5, 1.5] {
            let mp = mu(m);
            for &x in s.nodes() {
                let lhs = commutator_minus(&f, mp, x).unwrap();
                let want = -f.eval(x) - f.eval(-x) * (2.0 * m + 1.0);
                assert!(math::cabs(lhs - want) < 1e-9, "minus mu={m} x={x}");
                let lhs = commutator_plus(&f, mp, x).unwrap();
                let want = f.deriv_at(x).unwrap() * 2.0 * x + f.eval(x) * (2.0 * (m + 1.0));
                assert!(math::cabs(lhs - want) < 1e-9, "plus mu={m} x={x}");
            }
        }
    }

    #[test]
    fn antisymmetry_on_decaying_pairs() {
        let s = QuadratureScheme::production_default();
        let f = gaussian(0.5);
        let g = gaussian(0.5);
        let r = antisymmetry_residual(&f, &g, mu(0.5), &s).unwrap();
        assert!(r < 1e-10, "residual {r}");

        let f = gaussian(1.0);
        let g = FunctionHandle::with_deriv(
            |x| C64::new(x * math::exp(-x * x), 0.0),
            |x| C64::new((1.0 - 2.0 * x * x) * math::exp(-x * x), 0.0),
        );
        let r = antisymmetry_residual(&f, &g, mu(1.0), &s).unwrap();
        assert!(r < 1e-10, "residual {r}");

        let zero = FunctionHandle::with_deriv(|_| C64::new(0.0, 0.0), |_| C64::new(0.0, 0.0));
        let r = antisymmetry_residual(&zero, &zero, mu(0.5), &s).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn parity_exchange() {
        // T_mu maps even to odd and odd to even
        let s = QuadratureScheme::production_default();
        let even = gaussian(0.5);
        let odd = FunctionHandle::with_deriv(
            |x| C64::new(x * math::exp(-x * x), 0.0),
            |x| C64::new((1.0 - 2.0 * x * x) * math::exp(-x * x), 0.0),
        );
        let m = mu(0.7);
        for &x in s.nodes().iter().step_by(17) {
            let te = apply_t_mu(&even, m, x).unwrap() + apply_t_mu(&even, m, -x).unwrap();
            assert!(math::cabs(te) < 1e-10, "even->odd at {x}");
            let to = apply_t_mu(&odd, m, x).unwrap() - apply_t_mu(&odd, m, -x).unwrap();
            assert!(math::cabs(to) < 1e-10, "odd->even at {x}");
        }
    }

    #[test]
    fn missing_derivative_is_a_contract_error() {
        let f = FunctionHandle::new(|x| C64::new(x, 0.0));
        assert!(matches!(
            apply_t_mu(&f, mu(0.0), 1.0),
            Err(Error::Contract(_))
        ));
    }
}
