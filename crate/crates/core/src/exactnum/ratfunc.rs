use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactError, Poly, Rational};

/// Reduced rational function `num / den` over the rationals.
///
/// Canonical form: `gcd(num, den) = 1` and the lowest-order nonzero coefficient
/// of `den` equals 1, so a denominator with nonzero constant term has `den(0) = 1`.
/// The zero function is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let t = den.trailing().expect("nonzero denominator").recip();
        Self {
            num: num.scale(&t),
            den: den.scale(&t),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::x().into()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::constant(c).into()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Order at the origin: `ord(num) - ord(den)`. `None` for zero.
    pub fn ord0(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().expect("nonzero denominator") as i64;
        Some(vn - vd)
    }

    /// Larger of the numerator and denominator degrees.
    pub fn height(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `r(x^m)`. Coprimality and the denominator normalization both survive
    /// the substitution, so no reduction is needed.
    pub fn substitute_power(&self, m: usize) -> Self {
        Self {
            num: self.num.compose_power(m),
            den: self.den.compose_power(m),
        }
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self, ExactError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
        .renormalized())
    }

    fn renormalized(self) -> Self {
        Self::reduce(self.num, self.den)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }
}

impl fmt::Display for RatFunc {
    /// Canonical printing, e.g. `1/(1 - x)` or `(1 - 3*x^2)/(1 - x)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_terms(f);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let ld = self.den.exact_div(&g);
        let rd = rhs.den.exact_div(&g);
        let num = &(&self.num * &rd) + &(&rhs.num * &ld);
        RatFunc::reduce(num, &ld * &rhs.den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel first to keep the products small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        let t = den.trailing().expect("nonzero").recip();
        RatFunc {
            num: num.scale(&t),
            den: den.scale(&t),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &RatFunc) -> RatFunc {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_i64s(n), Poly::from_i64s(d)).unwrap()
    }

    #[test]
    fn reduces_and_normalizes() {
        let r = rf(&[-1, 0, 1], &[2, -2]);
        // (x^2 - 1) / (2 - 2x) = -(1 + x)/2
        assert_eq!(
            r,
            RatFunc::from(Poly::new(vec![ratio(-1, 2), ratio(-1, 2)]))
        );
        let s = rf(&[3], &[0, 2]);
        assert_eq!(s.den(), &Poly::x());
        assert_eq!(s.num(), &Poly::constant(ratio(3, 2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
        assert!(RatFunc::zero().recip().is_err());
    }

    #[test]
    fn sum_over_common_denominator() {
        // 1/(1-x) + x = (1 + x - x^2)/(1 - x)
        let r = &rf(&[1], &[1, -1]) + &RatFunc::x();
        assert_eq!(r, rf(&[1, 1, -1], &[1, -1]));
    }

    #[test]
    fn display_canonical() {
        assert_eq!(rf(&[1], &[1, -1]).to_string(), "1/(1 - x)");
        assert_eq!(rf(&[1, 0, -3], &[1, -1]).to_string(), "(1 - 3*x^2)/(1 - x)");
        assert_eq!(rf(&[0, 0, 5], &[1]).to_string(), "5*x^2");
        assert_eq!(rf(&[1], &[0, 0, 1]).to_string(), "1/x^2");
        assert_eq!(rf(&[-3], &[2, 2]).to_string(), "-3/2/(1 + x)");
    }

    #[test]
    fn substitution_and_eval() {
        let r = rf(&[1], &[1, 1]);
        assert_eq!(r.substitute_power(2), rf(&[1], &[1, 0, 1]));
        assert_eq!(r.eval(&rat(1)), Some(ratio(1, 2)));
        assert_eq!(r.eval(&rat(-1)), None);
    }

    #[test]
    fn integer_powers() {
        let r = rf(&[1], &[1, -1]);
        assert_eq!(r.pow(2).unwrap(), rf(&[1], &[1, -2, 1]));
        assert_eq!(r.pow(-1).unwrap(), rf(&[1, -1], &[1]));
        assert_eq!(r.pow(0).unwrap(), RatFunc::one());
    }
}
