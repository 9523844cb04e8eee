//! The fixed battery of smooth, rapidly decaying test functions used by
//! every verification sweep: Gaussians (centered, wide, shifted), a chirped
//! Gaussian, a polynomial-modulated Gaussian and an odd Gaussian.
//!
//! Every member is normalized to `||f||_{mu,2} = 1` for the requested `mu`
//! and carries both representations: the complex handle with its analytic
//! derivative, and the amplitude–phase pair. Sign-changing real members put
//! the sign into a locally constant 0/pi phase so the amplitude stays
//! non-negative.

use dunkl_core::error::{Error, Result};
use dunkl_core::functionals::normalize;
use dunkl_core::operators::{FunctionHandle, PolarHandle};
use dunkl_core::quadrature::QuadratureScheme;
use dunkl_core::special::MuParam;
use dunkl_core::C64;

pub const BATTERY_NAMES: [&str; 6] = [
    "gauss",
    "gauss-wide",
    "gauss-shifted",
    "chirped-gauss",
    "poly-gauss",
    "odd-gauss",
];

/// A named, unit-norm test function in both representations.
#[derive(Clone)]
pub struct TestFunction {
    pub name: String,
    pub handle: FunctionHandle,
    pub polar: PolarHandle,
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TestFunction({})", self.name)
    }
}

fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

fn raw_battery(name: &str) -> Option<(FunctionHandle, PolarHandle)> {
    match name {
        "gauss" => Some((
            FunctionHandle::with_deriv(
                |x| C64::new((-0.5 * x * x).exp(), 0.0),
                |x| C64::new(-x * (-0.5 * x * x).exp(), 0.0),
            ),
            PolarHandle::new(
                |x| (-0.5 * x * x).exp(),
                |_| 0.0,
                |x| -x * (-0.5 * x * x).exp(),
                |_| 0.0,
            ),
        )),
        "gauss-wide" => Some((
            FunctionHandle::with_deriv(
                |x| C64::new((-0.25 * x * x).exp(), 0.0),
                |x| C64::new(-0.5 * x * (-0.25 * x * x).exp(), 0.0),
            ),
            PolarHandle::new(
                |x| (-0.25 * x * x).exp(),
                |_| 0.0,
                |x| -0.5 * x * (-0.25 * x * x).exp(),
                |_| 0.0,
            ),
        )),
        "gauss-shifted" => Some((
            FunctionHandle::with_deriv(
                |x| C64::new((-0.5 * (x - 1.0) * (x - 1.0)).exp(), 0.0),
                |x| C64::new(-(x - 1.0) * (-0.5 * (x - 1.0) * (x - 1.0)).exp(), 0.0),
            ),
            PolarHandle::new(
                |x| (-0.5 * (x - 1.0) * (x - 1.0)).exp(),
                |_| 0.0,
                |x| -(x - 1.0) * (-0.5 * (x - 1.0) * (x - 1.0)).exp(),
                |_| 0.0,
            ),
        )),
        // e^{-x^2/2} e^{i x^2/4}: phase derivative x/2, nonzero covariance
        "chirped-gauss" => Some((
            FunctionHandle::with_deriv(
                |x| cis(0.25 * x * x) * (-0.5 * x * x).exp(),
                |x| cis(0.25 * x * x) * (-0.5 * x * x).exp() * C64::new(-x, 0.5 * x),
            ),
            PolarHandle::new(
                |x| (-0.5 * x * x).exp(),
                |x| 0.25 * x * x,
                |x| -x * (-0.5 * x * x).exp(),
                |x| 0.5 * x,
            ),
        )),
        "poly-gauss" => Some((
            FunctionHandle::with_deriv(
                |x| C64::new((1.0 + 0.3 * x * x) * (-0.5 * x * x).exp(), 0.0),
                |x| {
                    C64::new(
                        (0.6 * x - x * (1.0 + 0.3 * x * x)) * (-0.5 * x * x).exp(),
                        0.0,
                    )
                },
            ),
            PolarHandle::new(
                |x| (1.0 + 0.3 * x * x) * (-0.5 * x * x).exp(),
                |_| 0.0,
                |x| (0.6 * x - x * (1.0 + 0.3 * x * x)) * (-0.5 * x * x).exp(),
                |_| 0.0,
            ),
        )),
        // x e^{-x^2/2}: amplitude |x| e^{-x^2/2}, phase pi on the negative axis
        "odd-gauss" => Some((
            FunctionHandle::with_deriv(
                |x| C64::new(x * (-0.5 * x * x).exp(), 0.0),
                |x| C64::new((1.0 - x * x) * (-0.5 * x * x).exp(), 0.0),
            ),
            PolarHandle::new(
                |x| x.abs() * (-0.5 * x * x).exp(),
                |x| if x < 0.0 { std::f64::consts::PI } else { 0.0 },
                |x| x.signum() * (1.0 - x * x) * (-0.5 * x * x).exp(),
                |_| 0.0,
            ),
        )),
        _ => None,
    }
}

/// Builds one battery member normalized for the given `mu`.
pub fn battery_function(
    name: &str,
    mu: MuParam,
    scheme: &QuadratureScheme,
) -> Result<TestFunction> {
    let (handle, polar) = raw_battery(name).ok_or_else(|| {
        Error::Config(format!(
            "unknown battery function {name:?}; known: {BATTERY_NAMES:?}"
        ))
    })?;
    let (handle, polar, _) = normalize(&handle, &polar, mu, scheme)?;
    Ok(TestFunction {
        name: name.to_string(),
        handle,
        polar,
    })
}

/// The whole battery for one `mu`.
pub fn battery(mu: MuParam, scheme: &QuadratureScheme) -> Result<Vec<TestFunction>> {
    BATTERY_NAMES
        .iter()
        .map(|name| battery_function(name, mu, scheme))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dunkl_core::functionals::{lp_norm_fn, polar_consistency};

    #[test]
    fn all_members_are_unit_norm_and_consistent() {
        let scheme = QuadratureScheme::production_default();
        for m in [-0.5, 0.0, 0.5, 1.5] {
            let mu = MuParam::new(m).unwrap();
            for f in battery(mu, &scheme).unwrap() {
                let n = lp_norm_fn(&f.handle, mu, 2.0, &scheme).unwrap();
                assert!((n - 1.0).abs() < 1e-12, "{} at mu={m}: norm {n}", f.name);
                let err = polar_consistency(&f.handle, &f.polar, &scheme);
                assert!(err < 1e-12, "{} at mu={m}: polar error {err:e}", f.name);
            }
        }
    }

    #[test]
    fn unknown_name_is_a_config_error() {
        let scheme = QuadratureScheme::build(4.0, 4, 8).unwrap();
        assert!(battery_function("nope", MuParam::new(0.0).unwrap(), &scheme).is_err());
    }

    #[test]
    fn supplied_derivatives_match_central_differences() {
        let scheme = QuadratureScheme::production_default();
        let mu = MuParam::new(0.5).unwrap();
        let h = 1e-5;
        for f in battery(mu, &scheme).unwrap() {
            for &x in scheme.nodes().iter().step_by(23) {
                let d = f.handle.deriv_at(x).unwrap();
                let fd = (f.handle.eval(x + h) - f.handle.eval(x - h)) / (2.0 * h);
                let err = (d - fd).norm_sqr().sqrt();
                assert!(err < 1e-8, "{} at x={x}: |d - fd| = {err:e}", f.name);
            }
        }
    }
}
