use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::logc::LogComplex;
use super::ProbeError;
use crate::exactnum::{LaurentTrunc, Poly, RatFunc, Rational};
use crate::rationality::pade_reconstruct;

/// Relative size below which a denominator counts as vanishing.
pub const POLE_TOLERANCE: f64 = 1e-9;

pub(crate) fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln |c|`, `-∞` for zero.
pub(crate) fn ln_abs_rational(c: &Rational) -> f64 {
    if c.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_bigint(c.numer()) - ln_bigint(c.denom())
}

fn to_f64(c: &Rational) -> f64 {
    let v = c.to_f64().unwrap_or(f64::NAN);
    if v.is_finite() {
        return v;
    }
    let mag = ln_abs_rational(c).exp();
    if c.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Double-precision copy of a polynomial, evaluated in reversed form
/// outside the unit disc so large arguments never overflow.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    coeffs: Vec<f64>,
}

impl FloatPoly {
    pub fn new(p: &Poly) -> Self {
        Self {
            coeffs: p.coeffs().iter().map(to_f64).collect(),
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: LogComplex) -> LogComplex {
        if self.coeffs.is_empty() {
            return LogComplex::ZERO;
        }
        if z.ln_abs <= 0.0 {
            let w = z.to_complex();
            let v = self
                .coeffs
                .iter()
                .rev()
                .fold(num_complex::Complex64::new(0.0, 0.0), |acc, &c| acc * w + c);
            return v.into();
        }
        let w = z.recip().to_complex();
        let v = self
            .coeffs
            .iter()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, &c| acc * w + c);
        LogComplex::from(v) * z.powf(self.degree() as f64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloatRat {
    pub num: FloatPoly,
    pub den: FloatPoly,
}

impl FloatRat {
    pub fn new(r: &RatFunc) -> Self {
        Self {
            num: FloatPoly::new(r.num()),
            den: FloatPoly::new(r.den()),
        }
    }

    /// Value at `z`, rejecting points where `|den| < 1e−9·(1 + |num|)` with
    /// each polynomial divided by `max(1, |z|)^{degree}`; for `|z| ≤ 1` that
    /// is the plain test.
    pub fn eval(&self, z: LogComplex) -> Result<LogComplex, ProbeError> {
        let n = self.num.eval(z);
        let d = self.den.eval(z);
        let lz = z.ln_abs.max(0.0);
        let ns = LogComplex::from_polar_ln(n.ln_abs - lz * self.num.degree() as f64, 0.0);
        let ds = d.ln_abs - lz * self.den.degree() as f64;
        if ds < POLE_TOLERANCE.ln() + ns.ln_1p_abs() {
            return Err(ProbeError::PoleProximity {
                ln_abs: z.ln_abs,
                arg: z.arg,
            });
        }
        Ok(n / d)
    }

    /// `deg num − deg den`.
    pub fn degree_excess(&self) -> i64 {
        self.num.degree() as i64 - self.den.degree() as i64
    }
}

/// Evaluates a solution on the base annulus and the points
/// `ξ^{p^k}` the continuation starts from.
#[derive(Clone, Debug, PartialEq)]
pub enum BaseEvaluator {
    /// A rational function matching the series, used as its continuation.
    Rational { exact: RatFunc, float: FloatRat },
    /// Direct summation inside the estimated disc of convergence.
    Series {
        val: i64,
        coeffs: Vec<f64>,
        radius: Option<f64>,
    },
}

impl BaseEvaluator {
    pub fn from_ratfunc(r: &RatFunc) -> Self {
        Self::Rational {
            exact: r.clone(),
            float: FloatRat::new(r),
        }
    }

    /// Uses a Padé approximant that reproduces every known coefficient
    /// (degree doubling from 1) when one exists, otherwise the series.
    pub fn from_series(f: &LaurentTrunc) -> Self {
        let known = f
            .true_valuation()
            .map_or(0, |v| (f.order() - v).max(0) as usize);
        let mut d = 1;
        while 2 * d + 2 + crate::sysbuild::DEFAULT_MARGIN <= known {
            if let Ok(r) = pade_reconstruct(f, d, d) {
                return Self::from_ratfunc(&r);
            }
            d *= 2;
        }
        let radius = match super::radius_estimate(f) {
            Ok(super::RadiusEstimate::Finite(r)) => Some(r),
            _ => None,
        };
        Self::Series {
            val: f.valuation(),
            coeffs: f.coeffs().iter().map(to_f64).collect(),
            radius,
        }
    }

    pub fn rational(&self) -> Option<&RatFunc> {
        match self {
            Self::Rational { exact, .. } => Some(exact),
            Self::Series { .. } => None,
        }
    }

    pub fn eval(&self, z: LogComplex) -> Result<LogComplex, ProbeError> {
        match self {
            Self::Rational { float, .. } => float.eval(z),
            Self::Series {
                val,
                coeffs,
                radius,
            } => {
                let modulus = z.ln_abs.exp();
                if let Some(r) = radius {
                    if modulus > 0.9 * r {
                        return Err(ProbeError::InsufficientBasePrecision(format!(
                            "|x| = {modulus:.6} is outside 0.9 × the estimated radius {r:.6}"
                        )));
                    }
                }
                let w = z.to_complex();
                let mut sum = num_complex::Complex64::new(0.0, 0.0);
                let mut tail: f64 = 0.0;
                let n = coeffs.len();
                for (k, &c) in coeffs.iter().enumerate().rev() {
                    sum = sum * w + c;
                    if k + 4 >= n {
                        tail = tail.max(c.abs() * modulus.powi(k as i32));
                    }
                }
                if !sum.is_finite() || tail > 1e-12 * (1.0 + sum.norm()) {
                    return Err(ProbeError::InsufficientBasePrecision(format!(
                        "series tail {tail:.3e} is not negligible at |x| = {modulus:.6}"
                    )));
                }
                Ok(LogComplex::from(sum) * z.powf(*val as f64))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{laurent_expand, rat};
    use num_complex::Complex64;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_i64s(n), Poly::from_i64s(d)).unwrap()
    }

    #[test]
    fn ln_of_huge_integers() {
        let n = BigInt::from(3).pow(2000);
        assert!((ln_bigint(&n) - 2000.0 * 3f64.ln()).abs() < 1e-9);
        let c = Rational::new(BigInt::from(1), BigInt::from(7).pow(900));
        assert!((ln_abs_rational(&c) + 900.0 * 7f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn reversed_evaluation_at_large_points() {
        let p = FloatPoly::new(&Poly::from_i64s(&[1, -3, 0, 2]));
        for z in [Complex64::new(0.3, 0.1), Complex64::new(40.0, -7.0)] {
            let want = 1.0 - 3.0 * z + 2.0 * z.powu(3);
            assert!(p.eval(z.into()).rel_diff(&want.into()) < 1e-13);
        }
        let far = LogComplex::from_polar_ln(900.0, 0.0);
        assert!((p.eval(far).ln_abs - (2700.0 + 2f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn pole_guard() {
        let r = FloatRat::new(&rf(&[1], &[1, -1]));
        assert!(matches!(
            r.eval(LogComplex::from_real(1.0)),
            Err(ProbeError::PoleProximity { .. })
        ));
        assert!(r.eval(LogComplex::from_real(1.1)).is_ok());
        // large values far from any pole are not mistaken for poles
        let g = FloatRat::new(&rf(&[0, 0, 0, 0, 0, 0, 1], &[1, 1]));
        assert!(g.eval(LogComplex::from_real(1e4)).is_ok());
        assert!(FloatRat::new(&rf(&[1], &[-1, 0, 1]))
            .eval(LogComplex::from_real(-1.0))
            .is_err());
    }

    #[test]
    fn pade_continuation_is_chosen_for_rational_series() {
        let f = laurent_expand(&rf(&[1], &[1, -1]), 40);
        let base = BaseEvaluator::from_series(&f);
        assert_eq!(base.rational(), Some(&rf(&[1], &[1, -1])));
        let v = base.eval(LogComplex::from_real(3.0)).unwrap();
        assert!((v.to_complex() - Complex64::new(-0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn series_fallback_refuses_outside_its_disc() {
        // Thue–Morse has radius 1
        let eq = crate::mahler::MahlerEquation::first_order(2, rf(&[1], &[1, -1])).unwrap();
        let t = crate::mahler::solve_series(&eq, &[rat(1)], 0, 200).unwrap();
        let base = BaseEvaluator::from_series(&t);
        assert!(base.rational().is_none());
        assert!(base.eval(LogComplex::from_real(2.0)).is_err());
        // product formula ∏(1 - x^{2^k}) at x = 1/4
        let want: f64 = (0..10).map(|k| 1.0 - 0.25f64.powi(1 << k)).product();
        let got = base.eval(LogComplex::from_real(0.25)).unwrap();
        assert!((got.to_complex().re - want).abs() < 1e-12);
    }
}
