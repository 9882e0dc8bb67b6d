use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Complex number stored as `exp(ln_abs + i·arg)`, so moduli far outside
/// the `f64` range survive products and sums. Zero has `ln_abs = -∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogComplex {
    pub ln_abs: f64,
    pub arg: f64,
}

fn wrap(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(2.0 * PI) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}

impl LogComplex {
    pub const ZERO: Self = Self {
        ln_abs: f64::NEG_INFINITY,
        arg: 0.0,
    };
    pub const ONE: Self = Self {
        ln_abs: 0.0,
        arg: 0.0,
    };

    pub fn from_polar_ln(ln_abs: f64, arg: f64) -> Self {
        if ln_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            ln_abs,
            arg: wrap(arg),
        }
    }

    pub fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0).into()
    }

    pub fn is_zero(&self) -> bool {
        self.ln_abs == f64::NEG_INFINITY
    }

    pub fn is_finite(&self) -> bool {
        self.ln_abs.is_finite() || self.is_zero()
    }

    /// Modulus; may overflow to infinity.
    pub fn abs(&self) -> f64 {
        self.ln_abs.exp()
    }

    /// `ln(1 + |z|)` without overflow.
    pub fn ln_1p_abs(&self) -> f64 {
        let l = self.ln_abs;
        if l == f64::NEG_INFINITY {
            return 0.0;
        }
        l.max(0.0) + (-l.abs()).exp().ln_1p()
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.ln_abs.exp(), self.arg)
    }

    /// `z^k`, with the argument multiplied through (so the principal
    /// root is `powf(1/n)`).
    pub fn powf(&self, k: f64) -> Self {
        if self.is_zero() {
            return if k == 0.0 { Self::ONE } else { Self::ZERO };
        }
        Self::from_polar_ln(self.ln_abs * k, self.arg * k)
    }

    pub fn recip(&self) -> Self {
        Self::from_polar_ln(-self.ln_abs, -self.arg)
    }

    /// `|self/other − 1|`, the relative deviation from a reference value.
    pub fn rel_diff(&self, reference: &Self) -> f64 {
        if reference.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        ((*self / *reference).to_complex() - 1.0).norm()
    }
}

impl From<Complex64> for LogComplex {
    fn from(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        Self {
            ln_abs: z.norm().ln(),
            arg: z.arg(),
        }
    }
}

impl Mul for LogComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::from_polar_ln(self.ln_abs + rhs.ln_abs, self.arg + rhs.arg)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for LogComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Add for LogComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.ln_abs >= rhs.ln_abs {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let t = Complex64::from_polar((small.ln_abs - big.ln_abs).exp(), small.arg - big.arg);
        let s = LogComplex::from(Complex64::new(1.0, 0.0) + t);
        if s.is_zero() {
            return Self::ZERO;
        }
        Self::from_polar_ln(big.ln_abs + s.ln_abs, big.arg + s.arg)
    }
}

impl Neg for LogComplex {
    type Output = Self;
    fn neg(self) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::from_polar_ln(self.ln_abs, self.arg + PI)
    }
}

impl Sub for LogComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for LogComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ln_abs.abs() < 700.0 || self.is_zero() {
            write!(f, "{}", self.to_complex())
        } else {
            write!(f, "exp({} + {}i)", self.ln_abs, self.arg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> LogComplex {
        Complex64::new(re, im).into()
    }

    #[test]
    fn arithmetic_matches_complex() {
        let (a, b) = (Complex64::new(1.5, -2.0), Complex64::new(-0.25, 3.0));
        let (la, lb) = (LogComplex::from(a), LogComplex::from(b));
        assert!(((la + lb).to_complex() - (a + b)).norm() < 1e-12);
        assert!(((la - lb).to_complex() - (a - b)).norm() < 1e-12);
        assert!(((la * lb).to_complex() - a * b).norm() < 1e-12);
        assert!(((la / lb).to_complex() - a / b).norm() < 1e-12);
    }

    #[test]
    fn huge_moduli_do_not_overflow() {
        let big = LogComplex::from_polar_ln(5000.0, 0.3);
        let sum = big + big;
        assert!((sum.ln_abs - (5000.0 + 2f64.ln())).abs() < 1e-12);
        assert!(((big / big).to_complex() - 1.0).norm() < 1e-12);
        assert!((big - big).is_zero() || (big - big).ln_abs < 4980.0);
    }

    #[test]
    fn principal_root() {
        let z = c(-16.0, 0.0);
        let r = z.powf(0.25);
        assert!((r.abs() - 2.0).abs() < 1e-12);
        assert!((r.arg - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn zero_behaves() {
        assert!((LogComplex::ZERO * c(2.0, 0.0)).is_zero());
        assert_eq!(
            (LogComplex::ZERO + c(2.0, 0.0)).to_complex(),
            Complex64::new(2.0, 0.0)
        );
        assert_eq!(LogComplex::ZERO.ln_1p_abs(), 0.0);
        assert!((c(1.0, 0.0).ln_1p_abs() - 2f64.ln()).abs() < 1e-15);
    }
}
