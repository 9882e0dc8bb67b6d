use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::{Poly, RatFunc, Rational};

/// Truncated Laurent series `Σ_{k=v}^{N-1} c_k x^k + O(x^N)`.
///
/// `coeffs[0]` is the coefficient at exponent `v`. The stored `v` is only a
/// lower bound for the true valuation; leading zeros are legal. An empty
/// coefficient list with `v = N` carries no information beyond `O(x^N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentTrunc {
    val: i64,
    coeffs: Vec<Rational>,
}

impl LaurentTrunc {
    pub fn new(val: i64, coeffs: Vec<Rational>) -> Self {
        Self { val, coeffs }
    }

    /// The series known only to be `O(x^order)`.
    pub fn unknown(order: i64) -> Self {
        Self {
            val: order,
            coeffs: Vec::new(),
        }
    }

    pub fn from_poly(p: &Poly, order: i64) -> Self {
        if order <= 0 {
            return Self::unknown(order);
        }
        let n = order as usize;
        let mut coeffs: Vec<Rational> = p.coeffs().iter().take(n).cloned().collect();
        coeffs.resize(n, Rational::zero());
        Self { val: 0, coeffs }
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    /// Exponent bound of the truncation: everything from `x^order` on is unknown.
    pub fn order(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k`, `None` when `k` is at or beyond the truncation order.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k >= self.order() {
            None
        } else if k < self.val {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(k - self.val) as usize].clone())
        }
    }

    fn coeff_ref(&self, k: i64) -> Option<&Rational> {
        if k < self.val || k >= self.order() {
            None
        } else {
            Some(&self.coeffs[(k - self.val) as usize])
        }
    }

    /// First exponent with a nonzero coefficient, `None` if every known
    /// coefficient vanishes.
    pub fn true_valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.val + i as i64)
    }

    /// Lower bound on the true valuation usable for order bookkeeping.
    fn val_bound(&self) -> i64 {
        self.true_valuation().unwrap_or_else(|| self.order())
    }

    /// True when every known coefficient is zero.
    pub fn is_zero_known(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops leading zeros so that `valuation()` is the true valuation.
    pub fn trimmed(&self) -> Self {
        match self.true_valuation() {
            Some(v) => Self {
                val: v,
                coeffs: self.coeffs[(v - self.val) as usize..].to_vec(),
            },
            None => Self::unknown(self.order()),
        }
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        if order <= self.val {
            return Self::unknown(order);
        }
        Self {
            val: self.val,
            coeffs: self.coeffs[..(order - self.val) as usize].to_vec(),
        }
    }

    /// Whether both series agree on every exponent known to both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let lo = self.val.min(other.val);
        let hi = self.order().min(other.order());
        (lo..hi).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            val: self.val,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The radix substitution `f(x) ↦ f(x^m)`.
    ///
    /// The reported truncation order is `m(N-1)+1`.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1, "substitution exponent must be positive");
        if m == 1 {
            return self.clone();
        }
        let mi = m as i64;
        let order = mi * (self.order() - 1) + 1;
        let val = mi * self.val;
        if order <= val {
            return Self::unknown(order);
        }
        let mut coeffs = vec![Rational::zero(); (order - val) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let idx = i * m;
            if idx < coeffs.len() {
                coeffs[idx] = c.clone();
            }
        }
        Self { val, coeffs }
    }

    /// Section `c^j` in the decomposition `f(x) = Σ_j x^j c^j(x^m)`: the
    /// coefficient of `x^k` in the result is that of `x^{mk+j}` in `f`.
    pub fn section(&self, m: usize, j: usize) -> Self {
        assert!(m >= 1 && j < m, "section index out of range");
        let (mi, ji) = (m as i64, j as i64);
        let order = (self.order() - 1 - ji).div_euclid(mi) + 1;
        let val = -((ji - self.val).div_euclid(mi));
        if order <= val {
            return Self::unknown(order);
        }
        let coeffs = (val..order)
            .map(|k| self.coeff(mi * k + ji).expect("within order"))
            .collect();
        Self { val, coeffs }
    }

    /// Product with a polynomial known exactly.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        let Some(vp) = p.valuation() else {
            return Self::unknown(i64::MAX / 4);
        };
        let order = self.order() + vp as i64;
        if self.coeffs.is_empty() {
            return Self::unknown(order);
        }
        let val = self.val;
        let mut coeffs = vec![Rational::zero(); (order - val) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in p.coeffs().iter().enumerate() {
                let k = i + t;
                if k >= coeffs.len() {
                    break;
                }
                if !b.is_zero() {
                    coeffs[k] += a * b;
                }
            }
        }
        Self { val, coeffs }
    }

    /// Division by a polynomial whose lowest nonzero coefficient is 1.
    fn div_normalized_poly(&self, d: &Poly) -> Self {
        let k = d.valuation().expect("nonzero divisor");
        debug_assert!(d.coeff(k) == Rational::from_integer(1.into()));
        let unit = d.unshift(k);
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for n in 0..self.coeffs.len() {
            let mut c = self.coeffs[n].clone();
            for (i, di) in unit.coeffs().iter().enumerate().skip(1) {
                if i > n {
                    break;
                }
                if !di.is_zero() {
                    c -= di * &out[n - i];
                }
            }
            out.push(c);
        }
        Self {
            val: self.val - k as i64,
            coeffs: out,
        }
    }

    /// Product with an exactly known rational function.
    pub fn mul_ratfunc(&self, r: &RatFunc) -> Self {
        if r.is_zero() {
            return Self::unknown(i64::MAX / 4);
        }
        self.mul_poly(r.num()).div_normalized_poly(r.den())
    }

    /// Product of two truncated series; the order is
    /// `min(N_a + v_b, N_b + v_a)` with true valuations.
    pub fn mul(&self, other: &Self) -> Self {
        let va = self.val_bound();
        let vb = other.val_bound();
        let order = (self.order() + vb).min(other.order() + va);
        let val = va + vb;
        if order <= val {
            return Self::unknown(order);
        }
        let mut coeffs = vec![Rational::zero(); (order - val) as usize];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let e = val + i as i64;
            for ea in va..=(e - vb) {
                if let (Some(a), Some(b)) = (self.coeff_ref(ea), other.coeff_ref(e - ea)) {
                    if !a.is_zero() && !b.is_zero() {
                        *c += a * b;
                    }
                }
            }
        }
        Self { val, coeffs }
    }

    /// Coefficient list as exponent/value pairs, skipping zeros.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.val + i as i64, c))
    }
}

/// Expansion of `r` at the origin, exact modulo `x^order`.
pub fn laurent_expand(r: &RatFunc, order: i64) -> LaurentTrunc {
    if r.is_zero() {
        return LaurentTrunc::unknown(order);
    }
    let k = r.den().valuation().expect("nonzero denominator") as i64;
    LaurentTrunc::from_poly(r.num(), order + k).div_normalized_poly(r.den())
}

fn combine(
    a: &LaurentTrunc,
    b: &LaurentTrunc,
    f: impl Fn(Rational, Rational) -> Rational,
) -> LaurentTrunc {
    let order = a.order().min(b.order());
    let val = a.val.min(b.val).min(order);
    let coeffs = (val..order)
        .map(|k| f(a.coeff(k).unwrap(), b.coeff(k).unwrap()))
        .collect();
    LaurentTrunc { val, coeffs }
}

impl Add<&LaurentTrunc> for &LaurentTrunc {
    type Output = LaurentTrunc;
    fn add(self, rhs: &LaurentTrunc) -> LaurentTrunc {
        combine(self, rhs, |a, b| a + b)
    }
}

impl Sub<&LaurentTrunc> for &LaurentTrunc {
    type Output = LaurentTrunc;
    fn sub(self, rhs: &LaurentTrunc) -> LaurentTrunc {
        combine(self, rhs, |a, b| a - b)
    }
}

impl Neg for &LaurentTrunc {
    type Output = LaurentTrunc;
    fn neg(self) -> LaurentTrunc {
        LaurentTrunc {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for LaurentTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(x^{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| rat(c)).collect()
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_i64s(n), Poly::from_i64s(d)).unwrap()
    }

    #[test]
    fn geometric_series() {
        let s = laurent_expand(&rf(&[1], &[1, -1]), 5);
        assert_eq!(s, LaurentTrunc::new(0, ints(&[1, 1, 1, 1, 1])));
    }

    #[test]
    fn pole_at_origin() {
        let s = laurent_expand(&rf(&[1], &[0, 1, -1]), 3);
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.order(), 3);
        assert_eq!(s.coeffs(), ints(&[1, 1, 1, 1]).as_slice());
    }

    #[test]
    fn odd_geometric() {
        let s = laurent_expand(&rf(&[0, 1], &[1, 0, -1]), 6);
        assert_eq!(s.true_valuation(), Some(1));
        let all: Vec<_> = (0..6).map(|k| s.coeff(k).unwrap()).collect();
        assert_eq!(all, ints(&[0, 1, 0, 1, 0, 1]));
    }

    #[test]
    fn substitution_examples() {
        let s = LaurentTrunc::new(0, ints(&[1, 1])).substitute_power(3);
        assert_eq!(s, LaurentTrunc::new(0, ints(&[1, 0, 0, 1])));
        let s = LaurentTrunc::new(-1, ints(&[1])).substitute_power(2);
        assert_eq!(s.true_valuation(), Some(-2));
        assert_eq!(s.coeff(-2), Some(rat(1)));
        let s = LaurentTrunc::new(0, ints(&[1, 1, 1])).substitute_power(2);
        assert_eq!(s, LaurentTrunc::new(0, ints(&[1, 0, 1, 0, 1])));
    }

    #[test]
    fn section_examples() {
        let ones = LaurentTrunc::new(0, ints(&[1, 1, 1, 1, 1]));
        assert_eq!(ones.section(2, 0), LaurentTrunc::new(0, ints(&[1, 1, 1])));
        let x = LaurentTrunc::new(0, ints(&[0, 1]));
        assert_eq!(x.section(2, 1), LaurentTrunc::new(0, ints(&[1])));
        let f = LaurentTrunc::new(0, ints(&[1, 2, 3, 4]));
        assert_eq!(f.section(2, 1), LaurentTrunc::new(0, ints(&[2, 4])));
    }

    #[test]
    fn section_of_negative_valuation() {
        // x^-3 + x^-2 + ... + x^4
        let f = LaurentTrunc::new(-3, ints(&[1, 2, 3, 4, 5, 6, 7, 8]));
        let s = f.section(2, 1);
        // exponents 2k+1: -3, -1, 1, 3 -> k = -2..1
        assert_eq!(s.valuation(), -2);
        assert_eq!(s.coeffs(), ints(&[1, 3, 5, 7]).as_slice());
        assert_eq!(s.order(), 2);
    }

    #[test]
    fn product_order_bookkeeping() {
        let a = laurent_expand(&rf(&[1], &[1, -1]), 10);
        let b = laurent_expand(&rf(&[0, 0, 1], &[1]), 10);
        let p = a.mul(&b);
        assert_eq!(p.order(), 10);
        assert_eq!(p.true_valuation(), Some(2));
        assert!(p.agrees_with(&laurent_expand(&rf(&[0, 0, 1], &[1, -1]), 12)));
    }

    #[test]
    fn ratfunc_product_matches_expansion() {
        let s = laurent_expand(&rf(&[1], &[1, -1]), 20);
        let r = rf(&[1, -1], &[1, 1]);
        let p = s.mul_ratfunc(&r);
        assert!(p.agrees_with(&laurent_expand(&rf(&[1], &[1, 1]), 20)));
        assert_eq!(p.order(), 20);
    }

    #[test]
    fn display_shows_order() {
        let s = LaurentTrunc::new(-1, ints(&[2, 0, 3]));
        assert_eq!(s.to_string(), "2*x^-1 + 3*x + O(x^2)");
    }
}
