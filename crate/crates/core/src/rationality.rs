//! Rationality certificates for common solutions of a `p`- and a
//! `q`-Mahler equation with multiplicatively independent radices.
//!
//! The search is a semi-decision procedure: Padé reconstruction on a
//! doubling ladder of `(terms, degree)` levels, each candidate verified by
//! exact substitution into both equations.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{laurent_expand, nullspace, rat, LaurentTrunc, Poly, RatFunc, Rational};
use crate::mahler::{
    apply_operator, normalize_equation, solve_series, MahlerEquation, MahlerError, Seed,
};
use crate::sysbuild::{mult_independent, Caps, DEFAULT_MARGIN};

/// Minimum prefix on which a certificate must reproduce the series.
pub const MIN_PREFIX: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadeError {
    #[error("precision deficit: {available} coefficients available, {required} required")]
    PrecisionDeficit { available: usize, required: usize },
    #[error("no rational function of the given degrees matches the series")]
    NoSolution,
}

/// `P/Q` with `deg P ≤ dnum`, `deg Q ≤ dden` and `Q f ≡ P` to the full order
/// of `f`, after factoring out the valuation.
pub fn pade_reconstruct(f: &LaurentTrunc, dnum: usize, dden: usize) -> Result<RatFunc, PadeError> {
    pade_with_margin(f, dnum, dden, DEFAULT_MARGIN)
}

pub fn pade_with_margin(
    f: &LaurentTrunc,
    dnum: usize,
    dden: usize,
    margin: usize,
) -> Result<RatFunc, PadeError> {
    let required = dnum + dden + 2 + margin;
    let Some(v) = f.true_valuation() else {
        let available = f.order().max(0) as usize;
        return if available >= required {
            Ok(RatFunc::zero())
        } else {
            Err(PadeError::PrecisionDeficit {
                available,
                required,
            })
        };
    };
    let g: Vec<Rational> = (v..f.order()).map(|k| f.coeff(k).expect("known")).collect();
    if g.len() < required {
        return Err(PadeError::PrecisionDeficit {
            available: g.len(),
            required,
        });
    }
    let c = |n: usize| -> Rational { g.get(n).cloned().unwrap_or_else(Rational::zero) };
    let width = dden + 1;
    // [x^n](Q g) = 0 for dnum < n < len(g)
    let rows = |end: usize| -> Vec<Vec<Rational>> {
        (dnum + 1..end)
            .map(|n| {
                (0..width)
                    .map(|t| if t <= n { c(n - t) } else { Rational::zero() })
                    .collect()
            })
            .collect()
    };
    let candidate = |qv: &[Rational]| -> Option<RatFunc> {
        let q = Poly::new(qv.to_vec());
        let gs = LaurentTrunc::new(0, g.clone());
        let prod = gs.mul_poly(&q);
        let p = Poly::new(
            (0..=dnum as i64)
                .map(|k| prod.coeff(k).expect("known"))
                .collect(),
        );
        let resid = &prod - &LaurentTrunc::from_poly(&p, prod.order());
        if !resid.is_zero_known() {
            return None;
        }
        let r = RatFunc::new(p, q).ok()?;
        let shift = Poly::monomial(rat(1), v.unsigned_abs() as usize);
        Some(if v >= 0 {
            &r * &RatFunc::from(shift)
        } else {
            r.checked_div(&RatFunc::from(shift)).expect("nonzero")
        })
    };

    let window = nullspace(&rows(required), width);
    let Some(first) = window.first() else {
        return Err(PadeError::NoSolution);
    };
    if let Some(r) = candidate(first) {
        return Ok(r);
    }
    nullspace(&rows(g.len()), width)
        .first()
        .and_then(|qv| candidate(qv))
        .ok_or(PadeError::NoSolution)
}

/// Exact test of `r(x^{p^m}) + Σ b_i(x) r(x^{p^i}) = 0`.
pub fn verify_certificate(eq: &MahlerEquation, r: &RatFunc) -> bool {
    let mut acc = RatFunc::zero();
    for (i, c) in eq.full_coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let Ok(pw) = eq.radix_power(i) else {
            return false;
        };
        acc = &acc + &(c * &r.substitute_power(pw));
    }
    acc.is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalityCertificate {
    pub value: RatFunc,
    pub eq1: MahlerEquation,
    pub eq2: MahlerEquation,
    pub terms_used: usize,
    pub degree_bounds: (usize, usize),
    pub verified: (bool, bool),
    pub prefix_matched: i64,
}

impl fmt::Display for RationalityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f = {}", self.value)?;
        writeln!(f, "  satisfies {} : {}", self.eq1, self.verified.0)?;
        writeln!(f, "  satisfies {} : {}", self.eq2, self.verified.1)?;
        write!(
            f,
            "  terms {}, degrees {:?}, prefix {}",
            self.terms_used, self.degree_bounds, self.prefix_matched
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    HypothesisViolated,
    SeedInconsistent,
    CapsExhausted,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::HypothesisViolated => "hypothesis_violated",
            Self::SeedInconsistent => "seed_inconsistent",
            Self::CapsExhausted => "caps_exhausted",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{reason}: {details}")]
pub struct CertifyFailure {
    pub reason: FailureReason,
    pub details: String,
}

impl CertifyFailure {
    fn new(reason: FailureReason, details: impl Into<String>) -> Self {
        Self {
            reason,
            details: details.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Failure(#[from] CertifyFailure),
    /// Malformed input: invalid equations or a seed too short to determine
    /// a solution.
    #[error(transparent)]
    Input(MahlerError),
}

impl CertifyError {
    pub fn failure(&self) -> Option<&CertifyFailure> {
        match self {
            Self::Failure(f) => Some(f),
            Self::Input(_) => None,
        }
    }
}

fn solve_error(e: MahlerError, which: &str) -> CertifyError {
    match e {
        MahlerError::Inconsistent { index } => CertifyFailure::new(
            FailureReason::SeedInconsistent,
            format!("{which}: seed contradicts the equation at index {index}"),
        )
        .into(),
        MahlerError::ZeroOnly => CertifyFailure::new(
            FailureReason::SeedInconsistent,
            format!("{which} admits only the zero solution but the seed is nonzero"),
        )
        .into(),
        other => CertifyError::Input(other),
    }
}

/// Normalized forms of `eq`; `Ok(None)` when only `f = 0` solves it.
fn normalized(eq: &MahlerEquation) -> Result<Option<Vec<MahlerEquation>>, CertifyError> {
    match normalize_equation(eq) {
        Ok(v) => Ok(Some(v)),
        Err(MahlerError::ZeroOnly) => Ok(None),
        Err(e) => Err(CertifyError::Input(e)),
    }
}

/// Solves from the seed under the first equation of `primary` and checks
/// every equation of `primary` and `other` on the result.
fn solve_checked(
    primary: &[MahlerEquation],
    other: &[MahlerEquation],
    seed: &Seed,
    order: i64,
    label: &str,
) -> Result<LaurentTrunc, CertifyError> {
    let f = solve_series(&primary[0], &seed.values, seed.start, order)
        .map_err(|e| solve_error(e, label))?;
    for eq in primary[1..].iter().chain(other) {
        let res = apply_operator(eq, &f).map_err(CertifyError::Input)?;
        if let Some(k) = res.true_valuation() {
            return Err(CertifyFailure::new(
                FailureReason::SeedInconsistent,
                format!("residual of {eq} is nonzero at x^{k}"),
            )
            .into());
        }
    }
    Ok(f)
}

/// Series solution determined by the seed, cross-checked under both
/// equations. Returns `None` for the zero solution of an equation that
/// admits only zero.
fn common_series(
    n1: &Option<Vec<MahlerEquation>>,
    n2: &Option<Vec<MahlerEquation>>,
    seed: &Seed,
    order: i64,
) -> Result<LaurentTrunc, CertifyError> {
    match (n1, n2) {
        (Some(a), Some(b)) => {
            let f = solve_checked(a, b, seed, order, "first equation")?;
            let g = solve_checked(b, a, seed, order, "second equation")?;
            if !f.agrees_with(&g) {
                return Err(CertifyFailure::new(
                    FailureReason::SeedInconsistent,
                    "the two equations extend the seed differently",
                )
                .into());
            }
            Ok(f)
        }
        (Some(a), None) | (None, Some(a)) => {
            // the common solution is zero; so must the seed be
            if !seed.is_zero() {
                return Err(CertifyFailure::new(
                    FailureReason::SeedInconsistent,
                    "one equation admits only the zero solution but the seed is nonzero",
                )
                .into());
            }
            solve_checked(a, &[], seed, order, "equation")
        }
        (None, None) => {
            if !seed.is_zero() {
                return Err(CertifyFailure::new(
                    FailureReason::SeedInconsistent,
                    "both equations admit only the zero solution but the seed is nonzero",
                )
                .into());
            }
            Ok(LaurentTrunc::new(
                0,
                vec![Rational::zero(); order.max(0) as usize],
            ))
        }
    }
}

/// Levels `(64, 4), (128, 8), …` clamped to the caps; the last level is the
/// caps themselves.
pub fn escalation_ladder(caps: Caps) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let (mut n, mut d) = (64usize, 4usize);
    loop {
        let level = (n.min(caps.terms), d.min(caps.max_degree));
        if out.last() != Some(&level) {
            out.push(level);
        }
        if n >= caps.terms && d >= caps.max_degree {
            break;
        }
        n *= 2;
        d *= 2;
    }
    out
}

/// Certifies that the common solution determined by `seed` is rational.
///
/// Never concludes irrationality: exhausting the caps is reported as
/// [`FailureReason::CapsExhausted`].
pub fn certify_rational(
    eq1: &MahlerEquation,
    eq2: &MahlerEquation,
    seed: &Seed,
    caps: Caps,
) -> Result<RationalityCertificate, CertifyError> {
    let (p, q) = (eq1.radix(), eq2.radix());
    if !mult_independent(p, q) {
        return Err(CertifyFailure::new(
            FailureReason::HypothesisViolated,
            format!("radices {p} and {q} are multiplicatively dependent"),
        )
        .into());
    }
    let n1 = normalized(eq1)?;
    let n2 = normalized(eq2)?;
    // early consistency check on a short prefix
    common_series(&n1, &n2, seed, MIN_PREFIX)?;

    for (terms, d) in escalation_ladder(caps) {
        let order = terms.max(MIN_PREFIX as usize) as i64;
        let f = common_series(&n1, &n2, seed, seed.start + order)?;
        let value = match pade_reconstruct(&f, d, d) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let verified = (
            verify_certificate(eq1, &value),
            verify_certificate(eq2, &value),
        );
        if verified != (true, true) {
            continue;
        }
        let expansion = laurent_expand(&value, f.order());
        if !expansion.agrees_with(&f) {
            continue;
        }
        let prefix_matched = f.order() - f.valuation().min(seed.start);
        assert!(prefix_matched >= MIN_PREFIX);
        return Ok(RationalityCertificate {
            value,
            eq1: eq1.clone(),
            eq2: eq2.clone(),
            terms_used: order as usize,
            degree_bounds: (d, d),
            verified,
            prefix_matched,
        });
    }
    Err(CertifyFailure::new(
        FailureReason::CapsExhausted,
        format!(
            "no verified rational candidate up to {} terms and degree {}",
            caps.terms, caps.max_degree
        ),
    )
    .into())
}

/// The induced order-one equation `f(x^p) = (r(x^p)/r(x)) f(x)` of a nonzero
/// rational function.
pub fn induced_equation(r: &RatFunc, p: u64) -> Result<MahlerEquation, MahlerError> {
    let ratio = r
        .substitute_power(p as usize)
        .checked_div(r)
        .map_err(|_| MahlerError::ZeroOnly)?;
    MahlerEquation::first_order(p, ratio)
}
