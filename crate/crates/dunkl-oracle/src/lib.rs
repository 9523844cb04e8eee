//! Brute-force reference implementations for the test suites.
//!
//! Deliberately the dumbest algorithms that can reach the target accuracy:
//! dense composite trapezoid with compensated summation, and direct
//! classical Fourier summation. Nothing here may call into the main
//! crates — the whole point is an independent computation path.

use num_complex::Complex64;

/// Test-side accuracy knobs.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Point-count multiplier relative to the scheme under test. At least 4.
    pub density_multiplier: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            density_multiplier: 8,
        }
    }
}

impl OracleConfig {
    pub fn validated(self) -> Self {
        assert!(
            self.density_multiplier >= 4,
            "oracle density multiplier must be >= 4"
        );
        self
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

/// Trapezoid rule for `int_{-R}^{R} f(x) |x|^{2mu+1} dx`.
///
/// `n_points` is rounded up to the next odd count so that x = 0 lands on a
/// grid point (the weight has a corner there for most mu).
pub fn oracle_integrate<F>(f: F, mu: f64, radius: f64, n_points: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let n = if n_points.is_multiple_of(2) {
        n_points + 1
    } else {
        n_points
    };
    let h = 2.0 * radius / (n - 1) as f64;
    let mut re = Kahan::default();
    let mut im = Kahan::default();
    let exponent = 2.0 * mu + 1.0;
    for k in 0..n {
        let x = -radius + h * k as f64;
        let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        let weight = if x == 0.0 && exponent == 0.0 {
            1.0
        } else {
            x.abs().powf(exponent)
        };
        let v = f(x) * (w * weight);
        re.add(v.re);
        im.add(v.im);
    }
    Complex64::new(re.sum * h, im.sum * h)
}

/// Real-valued convenience wrapper.
pub fn oracle_integrate_real<F>(f: F, mu: f64, radius: f64, n_points: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    oracle_integrate(|x| Complex64::new(f(x), 0.0), mu, radius, n_points).re
}

/// Classical Fourier transform `(2 pi)^{-1/2} int f(x) e^{-iwx} dx` by dense
/// direct summation; used only for mu = -1/2 cross-checks.
pub fn oracle_classical_ft<F>(f: F, w: f64, radius: f64, n_points: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let n = if n_points.is_multiple_of(2) {
        n_points + 1
    } else {
        n_points
    };
    let h = 2.0 * radius / (n - 1) as f64;
    let mut re = Kahan::default();
    let mut im = Kahan::default();
    for k in 0..n {
        let x = -radius + h * k as f64;
        let trap = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        let phase = Complex64::new((w * x).cos(), -(w * x).sin());
        let v = f(x) * phase * trap;
        re.add(v.re);
        im.add(v.im);
    }
    Complex64::new(re.sum, im.sum) * h / (2.0 * std::f64::consts::PI).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_identity_at_mu_zero() {
        // int e^{-x^2} |x| dx = Gamma(1) = 1
        let v = oracle_integrate_real(|x| (-x * x).exp(), 0.0, 12.0, 400_001);
        assert!((v - 1.0).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn odd_integrand_vanishes() {
        let v = oracle_integrate(
            |x| Complex64::new(x * (-x * x).exp(), 0.0),
            0.5,
            10.0,
            50_001,
        );
        assert!(v.re.abs() < 1e-12 && v.im.abs() < 1e-12);
    }

    #[test]
    fn gaussian_is_fourier_fixed_point() {
        // f = e^{-x^2/2} has hat f = e^{-w^2/2} in this normalization
        for w in [0.0, 0.5, 1.5, 4.0] {
            let got = oracle_classical_ft(
                |x| Complex64::new((-0.5 * x * x).exp(), 0.0),
                w,
                12.0,
                16_385,
            );
            let want = (-0.5 * w * w).exp();
            assert!((got.re - want).abs() < 1e-10, "w={w}: {got}");
            assert!(got.im.abs() < 1e-12);
        }
    }

    #[test]
    fn shifted_gaussian_modulates() {
        // f(x) = e^{-(x-1)^2/2}  =>  hat f(w) = e^{-iw} e^{-w^2/2}
        let w = 2.0;
        let got = oracle_classical_ft(
            |x| Complex64::new((-0.5 * (x - 1.0) * (x - 1.0)).exp(), 0.0),
            w,
            14.0,
            16_385,
        );
        let want = Complex64::new((w).cos(), -(w).sin()) * (-0.5 * w * w).exp();
        assert!((got - want).norm() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn zero_maps_to_zero() {
        let got = oracle_classical_ft(|_| Complex64::new(0.0, 0.0), 1.0, 12.0, 4_097);
        assert_eq!(got, Complex64::new(0.0, 0.0));
    }
}
