//! Floating-point diagnostics for Mahler solutions: the radius of
//! convergence at the origin, continuation to `|x| ≥ r₀` along
//! `g(x^p) = A(x) g(x)`, and the polynomial growth bound
//! `|g(x)| ≤ L (log|x|)^d |x|^{M/(p−1)}` sampled on the annuli
//! `r₀^{p^j} ≤ |x| < r₀^{p^{j+1}}`.

mod eval;
mod logc;
mod roots;

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

pub use eval::{BaseEvaluator, FloatPoly, FloatRat, POLE_TOLERANCE};
pub use logc::LogComplex;
pub use roots::poly_roots;

use crate::exactnum::{LaurentTrunc, RatFunc};
use crate::mahler::MahlerEquation;

/// Fewest coefficients accepted by [`radius_estimate`].
pub const MIN_RADIUS_TERMS: usize = 16;

/// Multiplier applied to sampled maxima.
const SAMPLE_SLACK: f64 = 1.05;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbeError {
    #[error("too few coefficients: {have} known, {need} required")]
    TooFewCoefficients { have: usize, need: usize },
    #[error("evaluation point exp({ln_abs} + {arg}i) is too close to a pole")]
    PoleProximity { ln_abs: f64, arg: f64 },
    #[error("insufficient base precision: {0}")]
    InsufficientBasePrecision(String),
    #[error("r0 must exceed 1, got {0}")]
    InvalidR0(f64),
    #[error("|x| = exp({ln_abs}) lies inside the base radius r0 = {r0}")]
    BelowBase { ln_abs: f64, r0: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusEstimate {
    Finite(f64),
    /// Only finitely many nonzero coefficients in the window.
    NoFiniteSingularity,
}

/// `1 / max |c_n|^{1/n}` over the upper half of the available indices
/// `n ≥ 1`.
pub fn radius_estimate(f: &LaurentTrunc) -> Result<RadiusEstimate, ProbeError> {
    let have = f.len();
    if have < MIN_RADIUS_TERMS {
        return Err(ProbeError::TooFewCoefficients {
            have,
            need: MIN_RADIUS_TERMS,
        });
    }
    let top = f.order() - 1;
    let lo = (f.valuation() + have as i64 / 2).max(1);
    let best = (lo..=top)
        .filter_map(|n| {
            let l = eval::ln_abs_rational(&f.coeff(n)?);
            l.is_finite().then(|| l / n as f64)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    if best == f64::NEG_INFINITY {
        return Ok(RadiusEstimate::NoFiniteSingularity);
    }
    Ok(RadiusEstimate::Finite((-best).exp()))
}

/// The recursion `g(x^p) = C(x) g(x)` on `g = (f, f(x^p), …, f(x^{p^{m−1}}))`
/// with the companion matrix `C` of the equation.
#[derive(Clone, Debug)]
pub struct Companion {
    b: Vec<FloatRat>,
}

impl Companion {
    pub fn new(eq: &MahlerEquation) -> Self {
        Self {
            b: eq.coeffs().iter().map(FloatRat::new).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// `M = max(0, max_i deg num b_i − deg den b_i)`, so `|C(x)| = O(|x|^M)`.
    pub fn growth_exponent(&self) -> i64 {
        self.b
            .iter()
            .filter(|r| !r.num.coeffs().is_empty())
            .map(FloatRat::degree_excess)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    /// `ln ‖C(y)‖_∞`.
    fn ln_norm(&self, y: LogComplex) -> Result<f64, ProbeError> {
        let mut acc = LogComplex::ZERO;
        for b in &self.b {
            if b.num.coeffs().is_empty() {
                continue;
            }
            acc = acc + LogComplex::from_polar_ln(b.eval(y)?.ln_abs, 0.0);
        }
        let floor = if self.order() > 1 {
            0.0
        } else {
            f64::NEG_INFINITY
        };
        Ok(acc.ln_abs.max(floor))
    }

    fn step(&self, y: LogComplex, v: &mut Vec<LogComplex>) -> Result<(), ProbeError> {
        let mut last = LogComplex::ZERO;
        for (b, vi) in self.b.iter().zip(v.iter()) {
            if b.num.coeffs().is_empty() {
                continue;
            }
            last = last - b.eval(y)? * *vi;
        }
        v.remove(0);
        v.push(last);
        Ok(())
    }
}

fn check_r0(r0: f64) -> Result<(), ProbeError> {
    if r0.is_finite() && r0 > 1.0 {
        Ok(())
    } else {
        Err(ProbeError::InvalidR0(r0))
    }
}

/// Largest `j` with `p^j ln r₀ ≤ ln|x|`.
fn annulus_index(p: u64, ln_x: f64, ln_r0: f64) -> u32 {
    let pf = p as f64;
    let mut j = ((ln_x / ln_r0).ln() / pf.ln()).floor().max(0.0) as u32;
    while pf.powi(j as i32 + 1) * ln_r0 <= ln_x {
        j += 1;
    }
    while j > 0 && pf.powi(j as i32) * ln_r0 > ln_x {
        j -= 1;
    }
    j
}

/// `f(x)` for `|x| ≥ r₀`: writes `x = ξ^{p^j}` with the principal root
/// `r₀ ≤ |ξ| < r₀^p`, evaluates the base vector at `ξ` and applies the
/// companion recursion `j` times.
pub fn continue_outward_log(
    eq: &MahlerEquation,
    base: &BaseEvaluator,
    x: LogComplex,
    r0: f64,
) -> Result<LogComplex, ProbeError> {
    check_r0(r0)?;
    let ln_r0 = r0.ln();
    if x.ln_abs < ln_r0 * (1.0 - 1e-12) {
        return Err(ProbeError::BelowBase {
            ln_abs: x.ln_abs,
            r0,
        });
    }
    let comp = Companion::new(eq);
    let p = eq.radix() as f64;
    let j = annulus_index(eq.radix(), x.ln_abs, ln_r0);
    let xi = x.powf(p.powi(-(j as i32)));
    let mut v = (0..comp.order())
        .map(|k| base.eval(xi.powf(p.powi(k as i32))))
        .collect::<Result<Vec<_>, _>>()?;
    for k in 0..j {
        comp.step(xi.powf(p.powi(k as i32)), &mut v)?;
    }
    Ok(v[0])
}

/// [`continue_outward_log`] from a truncated series, returned as an ordinary
/// complex number (infinite when the modulus overflows).
pub fn continue_outward(
    eq: &MahlerEquation,
    f_base: &LaurentTrunc,
    x: Complex64,
    r0: f64,
) -> Result<Complex64, ProbeError> {
    let base = BaseEvaluator::from_series(f_base);
    continue_outward_log(eq, &base, x.into(), r0).map(|v| v.to_complex())
}

/// One evaluation point of a growth check, in logarithmic form.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSample {
    pub annulus: u32,
    pub x: LogComplex,
    pub ln_abs_g: f64,
    pub ln_bound: f64,
}

impl GrowthSample {
    pub fn within_bound(&self) -> bool {
        self.ln_abs_g <= self.ln_bound
    }
}

/// Constants of `|g(x)| ≤ L (log|x|)^d |x|^{M/(p−1)}` and the sampled
/// values. `K` bounds `‖C(x)‖ / |x|^M` and `L = G₀ (log r₀)^{−d}` with `G₀`
/// the maximum of `‖g‖` over the base annulus.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub r0: f64,
    pub p: u64,
    pub k: f64,
    pub m: f64,
    pub l: f64,
    pub d: f64,
    pub ln_k: f64,
    pub ln_l: f64,
    pub samples: Vec<GrowthSample>,
    /// Sample points dropped by the pole guard.
    pub rejected: usize,
    pub all_within_bound: bool,
}

impl GrowthReport {
    pub fn ln_bound_at(&self, ln_abs_x: f64) -> f64 {
        self.ln_l + self.d * ln_abs_x.ln() + self.m / (self.p as f64 - 1.0) * ln_abs_x
    }
}

/// Points of the base annulus `r₀ ≤ |ξ| ≤ r₀^p`: both boundary circles
/// densely, a few interior circles coarsely.
fn base_grid(p: u64, ln_r0: f64) -> Vec<LogComplex> {
    let mut out = Vec::new();
    let circle = |out: &mut Vec<LogComplex>, ln_abs: f64, n: usize| {
        for s in 0..n {
            out.push(LogComplex::from_polar_ln(
                ln_abs,
                2.0 * PI * s as f64 / n as f64,
            ));
        }
    };
    let outer = ln_r0 * p as f64;
    circle(&mut out, ln_r0, 4096);
    circle(&mut out, outer, 4096);
    for t in 1..8 {
        circle(&mut out, ln_r0 + (outer - ln_r0) * t as f64 / 8.0, 512);
    }
    out
}

/// Local maximization of `h` on a circle near the angle `arg`.
fn refine_on_circle(
    ln_abs: f64,
    arg: f64,
    spacing: f64,
    h: &impl Fn(LogComplex) -> Option<f64>,
) -> f64 {
    (0..=256)
        .filter_map(|s| {
            let a = arg + spacing * (s as f64 / 128.0 - 1.0);
            h(LogComplex::from_polar_ln(ln_abs, a))
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn sampled_max(grid: &[LogComplex], h: &impl Fn(LogComplex) -> Option<f64>) -> f64 {
    let mut best = f64::NEG_INFINITY;
    let mut at = None;
    for &z in grid {
        if let Some(v) = h(z) {
            if v > best {
                best = v;
                at = Some(z);
            }
        }
    }
    if let Some(z) = at {
        best = best.max(refine_on_circle(z.ln_abs, z.arg, 2.0 * PI / 512.0, h));
    }
    best
}

/// Samples `j_max + 1` annuli with `samples_per_annulus` points each and
/// compares `|g(x)|` with the bound built from the base-annulus constants.
pub fn growth_check(
    eq: &MahlerEquation,
    f_base: &LaurentTrunc,
    r0: f64,
    j_max: u32,
    samples_per_annulus: usize,
) -> Result<GrowthReport, ProbeError> {
    growth_check_with(
        eq,
        &BaseEvaluator::from_series(f_base),
        r0,
        j_max,
        samples_per_annulus,
    )
}

pub fn growth_check_with(
    eq: &MahlerEquation,
    base: &BaseEvaluator,
    r0: f64,
    j_max: u32,
    samples_per_annulus: usize,
) -> Result<GrowthReport, ProbeError> {
    check_r0(r0)?;
    let comp = Companion::new(eq);
    let p = eq.radix();
    let pf = p as f64;
    let ln_r0 = r0.ln();
    let m = comp.growth_exponent() as f64;
    let grid = base_grid(p, ln_r0);

    let ln_c = |y: LogComplex| comp.ln_norm(y).ok().map(|l| l - m * y.ln_abs);
    let ln_k = sampled_max(&grid, &ln_c) + SAMPLE_SLACK.ln();
    if !ln_k.is_finite() {
        return Err(ProbeError::InsufficientBasePrecision(
            "no pole-free point on the base annulus".into(),
        ));
    }
    let base_error = std::cell::RefCell::new(None);
    let ln_g = |xi: LogComplex| -> Option<f64> {
        let mut best = f64::NEG_INFINITY;
        for k in 0..comp.order() {
            match base.eval(xi.powf(pf.powi(k as i32))) {
                Ok(v) => best = best.max(v.ln_abs),
                Err(ProbeError::PoleProximity { .. }) => return None,
                Err(e) => {
                    base_error.borrow_mut().get_or_insert(e);
                    return None;
                }
            }
        }
        Some(best)
    };
    let ln_g0 = sampled_max(&grid, &ln_g) + SAMPLE_SLACK.ln();
    if let Some(e) = base_error.into_inner() {
        return Err(e);
    }
    let d = (ln_k / pf.ln()).max(0.0);
    let ln_l = ln_g0 - d * ln_r0.ln();

    let mut report = GrowthReport {
        r0,
        p,
        k: ln_k.exp(),
        m,
        l: ln_l.exp(),
        d,
        ln_k,
        ln_l,
        samples: Vec::new(),
        rejected: 0,
        all_within_bound: true,
    };
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    for j in 0..=j_max {
        for s in 0..samples_per_annulus {
            let t = (s as f64 + 0.5) / samples_per_annulus as f64;
            let ln_abs = ln_r0 * pf.powf(j as f64 + t);
            let arg = 2.0 * PI * ((s as f64 + 1.0) * golden + 0.3 * j as f64).fract() - PI;
            let x = LogComplex::from_polar_ln(ln_abs, arg);
            match continue_outward_log(eq, base, x, r0) {
                Ok(g) => {
                    let sample = GrowthSample {
                        annulus: j,
                        x,
                        ln_abs_g: g.ln_abs,
                        ln_bound: report.ln_bound_at(ln_abs),
                    };
                    report.all_within_bound &= sample.within_bound();
                    report.samples.push(sample);
                }
                Err(ProbeError::PoleProximity { .. }) => report.rejected += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}

/// Smallest admissible `r₀ ≥ 2` with the poles of `value` and of the
/// equation's coefficients inside `|x| < r₀/2`.
pub fn auto_r0(eq: &MahlerEquation, value: Option<&RatFunc>) -> f64 {
    let mut dens: Vec<FloatPoly> = eq
        .coeffs()
        .iter()
        .map(|b| FloatPoly::new(b.den()))
        .collect();
    if let Some(v) = value {
        dens.push(FloatPoly::new(v.den()));
    }
    let rho = dens
        .iter()
        .flat_map(|d| poly_roots(d.coeffs()))
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    (2.0 * rho * 1.01).max(2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{laurent_expand, rat, Poly};
    use crate::mahler::solve_series;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_i64s(n), Poly::from_i64s(d)).unwrap()
    }

    fn finite(e: RadiusEstimate) -> f64 {
        match e {
            RadiusEstimate::Finite(r) => r,
            RadiusEstimate::NoFiniteSingularity => panic!("expected a finite radius"),
        }
    }

    #[test]
    fn radius_examples() {
        let ones = laurent_expand(&rf(&[1], &[1, -1]), 64);
        assert!((finite(radius_estimate(&ones).unwrap()) - 1.0).abs() < 0.1);
        let half = laurent_expand(&rf(&[1], &[1, -2]), 64);
        assert!((finite(radius_estimate(&half).unwrap()) - 0.5).abs() < 0.05);
        let poly = laurent_expand(&rf(&[1, 1], &[1]), 64);
        assert_eq!(
            radius_estimate(&poly).unwrap(),
            RadiusEstimate::NoFiniteSingularity
        );
    }

    #[test]
    fn radius_needs_sixteen_terms() {
        let short = laurent_expand(&rf(&[1], &[1, -1]), 10);
        assert_eq!(
            radius_estimate(&short),
            Err(ProbeError::TooFewCoefficients { have: 10, need: 16 })
        );
    }

    #[test]
    fn radius_of_huge_coefficients() {
        // c_n = 1000^n overflows f64 past n ≈ 102
        let f = laurent_expand(&rf(&[1], &[1, -1000]), 160);
        assert!((finite(radius_estimate(&f).unwrap()) - 1e-3).abs() < 1e-4);
    }

    fn geometric_eq() -> MahlerEquation {
        MahlerEquation::first_order(2, rf(&[1], &[1, 1])).unwrap()
    }

    #[test]
    fn continuation_examples() {
        let f = laurent_expand(&rf(&[1], &[1, -1]), 64);
        for (x, want) in [(16.0, -1.0 / 15.0), (256.0, -1.0 / 255.0), (2.0, -1.0)] {
            let got = continue_outward(&geometric_eq(), &f, Complex64::new(x, 0.0), 2.0).unwrap();
            assert!((got.re - want).abs() <= 1e-9 * want.abs() && got.im.abs() < 1e-12);
        }
    }

    #[test]
    fn continuation_uses_the_recursion() {
        // x = 16, r0 = 2 lies in the annulus j = 2 with ξ = 2
        assert_eq!(annulus_index(2, 16f64.ln(), 2f64.ln()), 2);
        assert_eq!(annulus_index(2, 15.9f64.ln(), 2f64.ln()), 1);
        assert_eq!(annulus_index(3, 2f64.ln(), 2f64.ln()), 0);
        // a base evaluator that is only right on the base annulus still
        // yields the correct continuation
        let f = laurent_expand(&rf(&[1], &[1, -1]), 64);
        let base = BaseEvaluator::from_series(&f);
        let x = LogComplex::from(Complex64::new(-30.0, 50.0));
        let got = continue_outward_log(&geometric_eq(), &base, x, 2.0).unwrap();
        let want = (Complex64::new(1.0, 0.0) - x.to_complex()).inv();
        assert!(got.rel_diff(&want.into()) < 1e-12);
    }

    #[test]
    fn continuation_rejects_points_inside_the_base() {
        let f = laurent_expand(&rf(&[1], &[1, -1]), 64);
        assert!(matches!(
            continue_outward(&geometric_eq(), &f, Complex64::new(1.5, 0.0), 2.0),
            Err(ProbeError::BelowBase { .. })
        ));
        assert_eq!(
            continue_outward(&geometric_eq(), &f, Complex64::new(4.0, 0.0), 1.0),
            Err(ProbeError::InvalidR0(1.0))
        );
    }

    #[test]
    fn growth_geometric() {
        let f = laurent_expand(&rf(&[1], &[1, -1]), 64);
        let rep = growth_check(&geometric_eq(), &f, 2.0, 3, 32).unwrap();
        assert!(rep.all_within_bound);
        assert_eq!(rep.m, 0.0);
        assert_eq!(rep.samples.len() + rep.rejected, 4 * 32);
    }

    #[test]
    fn growth_constant() {
        let eq = MahlerEquation::first_order(2, RatFunc::one()).unwrap();
        let f = solve_series(&eq, &[rat(1)], 0, 64).unwrap();
        let rep = growth_check(&eq, &f, 2.0, 3, 16).unwrap();
        assert!(rep.all_within_bound);
        assert_eq!(rep.m, 0.0);
        assert!(rep.samples.iter().all(|s| s.ln_abs_g.abs() < 1e-12));
    }

    #[test]
    fn growth_squared_geometric() {
        let r = rf(&[1], &[1, -2, 1]);
        let eq = crate::rationality::induced_equation(&r, 2).unwrap();
        let rep = growth_check(&eq, &laurent_expand(&r, 64), 2.0, 3, 32).unwrap();
        assert!(rep.all_within_bound);
    }

    #[test]
    fn growth_with_polynomial_growth_and_radix_three() {
        // g = x^3 + 1/(1 - x) grows like |x|^3; M/(p-1) = 3
        let r = rf(&[1, 0, 0, 1, -1], &[1, -1]);
        let eq = crate::rationality::induced_equation(&r, 3).unwrap();
        let rep = growth_check(&eq, &laurent_expand(&r, 64), 2.0, 3, 32).unwrap();
        assert_eq!(rep.m, 6.0);
        assert!(
            rep.all_within_bound,
            "{:?}",
            rep.samples.iter().find(|s| !s.within_bound())
        );
        // samples reach |x| = 2^81
        assert!(rep.samples.iter().any(|s| s.x.ln_abs > 50.0 * 2f64.ln()));
    }

    #[test]
    fn auto_r0_clears_poles() {
        let eq = MahlerEquation::first_order(2, rf(&[1, 1], &[1])).unwrap();
        assert_eq!(auto_r0(&eq, None), 2.0);
        let eq = MahlerEquation::first_order(2, rf(&[1], &[1, 1])).unwrap();
        assert!((auto_r0(&eq, None) - 2.02).abs() < 1e-9);
        let eq = MahlerEquation::first_order(2, rf(&[1], &[1, -1, 0, 0, -1])).unwrap();
        // poles of 1/(1 - x - x^4) reach modulus ≈ 1.22
        let r0 = auto_r0(&eq, None);
        assert!(r0 > 2.4 && r0 < 2.6);
    }
}
