//! Scalar math shims and error-carrying (double-double) arithmetic.
//!
//! Every transcendental call in the crate goes through this module so that
//! `no_std` builds and `std` test builds evaluate the exact same `libm`
//! code paths.

use crate::C64;

pub const PI: f64 = core::f64::consts::PI;

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

/// e^{i theta}
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::new(cos(theta), sin(theta))
}

/// |z| without relying on num-complex float features.
#[inline]
pub fn cabs(z: C64) -> f64 {
    hypot(z.re, z.im)
}

#[inline]
pub fn carg(z: C64) -> f64 {
    atan2(z.im, z.re)
}

/// e^z for complex z.
#[cfg_attr(not(test), allow(dead_code))]
#[inline]
pub fn cexp(z: C64) -> C64 {
    let r = exp(z.re);
    C64::new(r * cos(z.im), r * sin(z.im))
}

// ---------------------------------------------------------------------------
// Double-double arithmetic.
//
// The alternating Bessel series cancels catastrophically once the argument
// passes ~15: partial sums grow like e^{|t|} while the value stays O(1).
// Carrying an error term through the recurrence keeps the summation accurate
// up to the asymptotic switch-over. Products are split Dekker-style, so no
// FMA is required and results are identical on every target.
// ---------------------------------------------------------------------------

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Dd {
        let (p, e) = two_prod(self.hi, other);
        let e = e + self.lo * other;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Quotient accurate to ~2 ulps of a double-double.
    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from(q3))
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ONE: CDd = CDd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from(z: C64) -> CDd {
        CDd {
            re: Dd::from(z.re),
            im: Dd::from(z.im),
        }
    }

    /// Exact square of a complex double.
    #[inline]
    pub fn square_of(z: C64) -> CDd {
        CDd {
            re: Dd::from_prod(z.re, z.re).sub(Dd::from_prod(z.im, z.im)),
            im: Dd::from_prod(z.re, z.im).mul_f64(2.0),
        }
    }

    #[inline]
    pub fn value(self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }

    #[inline]
    pub fn add(self, other: CDd) -> CDd {
        CDd {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    #[inline]
    pub fn mul(self, other: CDd) -> CDd {
        CDd {
            re: self.re.mul(other.re).sub(self.im.mul(other.im)),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }

    #[inline]
    pub fn div_dd(self, d: Dd) -> CDd {
        CDd {
            re: self.re.div(d),
            im: self.im.div(d),
        }
    }

    #[inline]
    pub fn scale(self, s: f64) -> CDd {
        CDd {
            re: self.re.mul_f64(s),
            im: self.im.mul_f64(s),
        }
    }

    #[inline]
    pub fn norm1(self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_prod_is_exact() {
        let a = 1.0 + 2f64.powi(-30);
        let b = 1.0 - 2f64.powi(-29);
        let (p, e) = two_prod(a, b);
        // reconstruct in 128-bit-ish by comparing against integer arithmetic
        let exact = a * b;
        assert_eq!(p, exact);
        // error term must make the product exact: |a*b - (p+e)| == 0 in dd sense
        let dd = Dd { hi: p, lo: e };
        assert!((dd.value() - a * b).abs() <= f64::EPSILON * a * b);
        assert!(e.abs() <= p.abs() * f64::EPSILON);
    }

    #[test]
    fn dd_div_roundtrip() {
        let a = Dd::from_prod(core::f64::consts::PI, 1.0e3);
        let b = Dd::from_sum(7.0, 1.0e-14);
        let q = a.div(b);
        let back = q.mul(b);
        let err = back.sub(a);
        assert!(err.hi.abs() < 1e-28 * a.hi.abs());
    }

    #[test]
    fn cdd_square_matches_plain() {
        let z = C64::new(1.25, -0.75);
        let sq = CDd::square_of(z).value();
        let plain = z * z;
        assert!((sq - plain).norm_sqr() < 1e-60);
    }
}
