//! Scalar Mahler equations
//!
//! ```text
//! f(x^{p^m}) + b_{m-1}(x) f(x^{p^{m-1}}) + … + b_0(x) f(x) = 0
//! ```
//!
//! with rational-function coefficients: application to truncated series,
//! normalization to `b_0 ≠ 0`, and exact series solutions driven by the
//! triangular coefficient recurrence of the cleared equation
//! `Σ P_i(x) f(x^{p^i}) = 0`.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{section_ratfunc, LaurentTrunc, Poly, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MahlerError {
    #[error("radix must be at least 2, got {0}")]
    InvalidRadix(u64),
    #[error("equation order must be at least 1")]
    EmptyEquation,
    #[error("radix power p^{exponent} overflows")]
    TooLarge { exponent: usize },
    #[error("insufficient precision: no coefficient of the result is determined")]
    InsufficientPrecision,
    #[error("equation is not normalized (b_0 = 0)")]
    NotNormalized,
    #[error("only the zero series satisfies the equation")]
    ZeroOnly,
    #[error("seed is inconsistent with the equation at coefficient index {index}")]
    Inconsistent { index: i64 },
    #[error(
        "seed must determine coefficients through index {required_through}, it stops at {last}"
    )]
    Underdetermined { required_through: i64, last: i64 },
}

/// Coefficient prefix `values[i]` at exponent `start + i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Seed {
    pub start: i64,
    pub values: Vec<Rational>,
}

impl Seed {
    pub fn new(start: i64, values: Vec<Rational>) -> Self {
        Self { start, values }
    }

    /// The coefficients of a known series from `start` up to its order.
    pub fn from_series(f: &LaurentTrunc, start: i64, len: usize) -> Self {
        let values = (start..start + len as i64)
            .map_while(|k| f.coeff(k))
            .collect();
        Self { start, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// `f(x^{p^m}) + Σ_{i<m} b_i(x) f(x^{p^i}) = 0`; the leading coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MahlerEquation {
    radix: u64,
    coeffs: Vec<RatFunc>,
}

impl MahlerEquation {
    /// `coeffs` lists `b_0, …, b_{m-1}`.
    pub fn new(radix: u64, coeffs: Vec<RatFunc>) -> Result<Self, MahlerError> {
        if radix < 2 {
            return Err(MahlerError::InvalidRadix(radix));
        }
        if coeffs.is_empty() {
            return Err(MahlerError::EmptyEquation);
        }
        Ok(Self { radix, coeffs })
    }

    /// Order-one equation `f(x^p) = a(x) f(x)`.
    pub fn first_order(radix: u64, a: RatFunc) -> Result<Self, MahlerError> {
        Self::new(radix, vec![-a])
    }

    pub fn radix(&self) -> u64 {
        self.radix
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `b_0, …, b_{m-1}`.
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// All coefficients including the leading 1, `b_0, …, b_m`.
    pub fn full_coeffs(&self) -> Vec<RatFunc> {
        let mut all = self.coeffs.clone();
        all.push(RatFunc::one());
        all
    }

    pub fn is_normalized(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// `p^i` as a substitution exponent.
    pub fn radix_power(&self, i: usize) -> Result<usize, MahlerError> {
        usize::try_from(self.radix)
            .ok()
            .and_then(|p| p.checked_pow(i as u32))
            .ok_or(MahlerError::TooLarge { exponent: i })
    }
}

impl fmt::Display for MahlerEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.radix;
        let m = self.order();
        write!(f, "f(x^{})", p.pow(m as u32))?;
        for i in (0..m).rev() {
            let b = &self.coeffs[i];
            if b.is_zero() {
                continue;
            }
            let arg = if i == 0 {
                "x".to_string()
            } else {
                format!("x^{}", p.pow(i as u32))
            };
            write!(f, " + ({b})*f({arg})")?;
        }
        write!(f, " = 0")
    }
}

/// `S(f) = f(x^{p^m}) + Σ b_i(x) f(x^{p^i})`, truncated to the smallest
/// guaranteed order among the terms.
pub fn apply_operator(eq: &MahlerEquation, f: &LaurentTrunc) -> Result<LaurentTrunc, MahlerError> {
    let mut acc: Option<LaurentTrunc> = None;
    for (i, c) in eq.full_coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = f.substitute_power(eq.radix_power(i)?).mul_ratfunc(c);
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    let acc = acc.expect("leading coefficient is 1");
    if acc.is_empty() {
        return Err(MahlerError::InsufficientPrecision);
    }
    Ok(acc)
}

/// Reduces to equations with `b_0 ≠ 0` annihilating every solution of `eq`.
///
/// When `b_0 = … = b_{k-1} = 0` the equation reads `Σ_{i≥k} b_i(x) w_i(x^{p^k}) = 0`
/// with `w_i = f(x^{p^{i-k}})`. Sectioning each `b_i` modulo `p^k` splits this
/// into `p^k` relations `Σ_i c_i^j(x) w_i(x) = 0`, each a lower-order
/// `p`-Mahler equation for `f`. All nontrivial ones are returned, each
/// normalized in turn; exact duplicates are dropped.
///
/// Returns [`MahlerError::ZeroOnly`] when some sectioned relation forces
/// `f = 0`.
pub fn normalize_equation(eq: &MahlerEquation) -> Result<Vec<MahlerEquation>, MahlerError> {
    if eq.is_normalized() {
        return Ok(vec![eq.clone()]);
    }
    let all = eq.full_coeffs();
    let m = eq.order();
    let k = match all[..m].iter().position(|c| !c.is_zero()) {
        Some(k) => k,
        None => return Err(MahlerError::ZeroOnly),
    };
    let modulus = eq.radix_power(k)?;
    let parts: Vec<Vec<RatFunc>> = all[k..]
        .iter()
        .map(|c| section_ratfunc(c, modulus))
        .collect();
    let mut out: Vec<MahlerEquation> = Vec::new();
    for j in 0..modulus {
        let rel: Vec<&RatFunc> = parts.iter().map(|p| &p[j]).collect();
        let Some(top) = rel.iter().rposition(|c| !c.is_zero()) else {
            continue;
        };
        if top == 0 || rel[..top].iter().all(|c| c.is_zero()) {
            // c·f(x^{p^top}) = 0
            return Err(MahlerError::ZeroOnly);
        }
        let lead = rel[top].recip().expect("nonzero");
        let coeffs = rel[..top].iter().map(|c| *c * &lead).collect();
        let sub = MahlerEquation::new(eq.radix, coeffs)?;
        for e in normalize_equation(&sub)? {
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    assert!(
        !out.is_empty(),
        "a nonzero coefficient has a nonzero section"
    );
    Ok(out)
}

/// Cleared form `Σ_{i=0}^m P_i(x) f(x^{p^i}) = 0` and the index past which
/// the coefficient recurrence is triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveBound {
    /// For every `n > threshold` the coefficient `f_n` is determined by the
    /// `f_{n'}` with `n' < n`.
    pub threshold: i64,
    pub polys: Vec<Poly>,
}

impl SolveBound {
    fn valuation(&self, i: usize) -> Option<i64> {
        self.polys[i].valuation().map(|v| v as i64)
    }
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let l = (a * b).exact_div(&a.gcd(b));
    let t = l.trailing().expect("nonzero").recip();
    l.scale(&t)
}

/// Clears denominators and computes the recurrence threshold
/// `n* = max(0, max_{i≥1} ⌈(val P_0 − val P_i)/(p^i − 1)⌉)`.
pub fn solve_bound(eq: &MahlerEquation) -> Result<SolveBound, MahlerError> {
    if !eq.is_normalized() {
        return Err(MahlerError::NotNormalized);
    }
    let all = eq.full_coeffs();
    let l = all.iter().fold(Poly::one(), |acc, c| lcm(&acc, c.den()));
    let polys: Vec<Poly> = all
        .iter()
        .map(|c| c.num() * &l.exact_div(c.den()))
        .collect();
    let v0 = polys[0].valuation().expect("b_0 ≠ 0") as i64;
    let mut threshold = 0i64;
    for (i, p) in polys.iter().enumerate().skip(1) {
        let Some(vi) = p.valuation() else { continue };
        let step = eq.radix_power(i)? as i64 - 1;
        let need = (v0 - vi as i64 + step - 1).div_euclid(step);
        threshold = threshold.max(need);
    }
    Ok(SolveBound { threshold, polys })
}

struct Cleared<'a> {
    bound: &'a SolveBound,
    powers: Vec<i64>,
}

impl Cleared<'_> {
    /// Coefficient of `x^e` in `Σ P_i(x) f(x^{p^i})`, skipping the term that
    /// involves `f_skip`. `get(k)` must answer for every index it is asked.
    fn coefficient(&self, e: i64, skip: Option<i64>, get: &impl Fn(i64) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, p) in self.bound.polys.iter().enumerate() {
            let pw = self.powers[i];
            for (t, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let r = e - t as i64;
                if r.rem_euclid(pw) != 0 {
                    continue;
                }
                let k = r.div_euclid(pw);
                if i == 0 && Some(k) == skip {
                    continue;
                }
                let fk = get(k);
                if !fk.is_zero() {
                    acc += c * fk;
                }
            }
        }
        acc
    }
}

/// Extends a coefficient prefix to the unique series solution modulo `x^order`.
///
/// `seed[i]` is the coefficient of `x^{start+i}`; coefficients below `start`
/// are zero. The seed must reach the recurrence threshold of
/// [`solve_bound`]. Every linear constraint the equation imposes on the
/// seeded indices is checked, as is every seed entry past the threshold.
pub fn solve_series(
    eq: &MahlerEquation,
    seed: &[Rational],
    start: i64,
    order: i64,
) -> Result<LaurentTrunc, MahlerError> {
    let bound = solve_bound(eq)?;
    let n_star = bound.threshold;
    let last = start + seed.len() as i64 - 1;
    if last < n_star {
        return Err(MahlerError::Underdetermined {
            required_through: n_star,
            last,
        });
    }
    let powers: Vec<i64> = (0..bound.polys.len())
        .map(|i| eq.radix_power(i).map(|p| p as i64))
        .collect::<Result<_, _>>()?;
    let cleared = Cleared {
        bound: &bound,
        powers,
    };
    let v0 = bound.valuation(0).expect("normalized");
    let lead = bound.polys[0].coeff(v0 as usize);

    let end = order.max(last + 1);
    let mut coeffs: Vec<Rational> = seed.to_vec();
    let get = |c: &Vec<Rational>, k: i64| -> Rational {
        if k < start {
            Rational::zero()
        } else {
            c[(k - start) as usize].clone()
        }
    };

    // Constraints among the seeded indices.
    let e_min = (0..cleared.powers.len())
        .filter_map(|i| bound.valuation(i).map(|vi| vi + cleared.powers[i] * start))
        .min()
        .expect("nonempty");
    for e in e_min..=(n_star + v0) {
        if !cleared.coefficient(e, None, &|k| get(&coeffs, k)).is_zero() {
            return Err(MahlerError::Inconsistent { index: e - v0 });
        }
    }

    for n in (n_star + 1)..end {
        if n < start {
            // declared zero; its equation must hold with f_n = 0
            if !cleared
                .coefficient(n + v0, None, &|k| get(&coeffs, k))
                .is_zero()
            {
                return Err(MahlerError::Inconsistent { index: n });
            }
            continue;
        }
        let rest = cleared.coefficient(n + v0, Some(n), &|k| get(&coeffs, k));
        let value = -rest / &lead;
        if n <= last {
            if coeffs[(n - start) as usize] != value {
                return Err(MahlerError::Inconsistent { index: n });
            }
        } else {
            coeffs.push(value);
        }
    }
    Ok(LaurentTrunc::new(start, coeffs).truncate(order))
}
