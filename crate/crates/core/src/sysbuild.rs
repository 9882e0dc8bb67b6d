//! Linear algebra over `Q(x)` for pairs of Mahler equations: dependence
//! tests on truncated series, the consistent first-order pair
//! `σ₁(g) = A g`, `σ₂(g) = B g` on a basis of the space spanned by the
//! `σ₁^m σ₂^r f`, and the consistency identity `A(x^q) B(x) = B(x^p) A(x)`.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{nullspace, LaurentTrunc, Poly, RatFunc, RatMatrix, Rational};
use crate::mahler::{apply_operator, solve_series, MahlerEquation, MahlerError, Seed};

/// Extra equations demanded beyond `2(d+1)ℓ` before an independence verdict
/// is trusted.
pub const DEFAULT_MARGIN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SysError {
    #[error(transparent)]
    Mahler(#[from] MahlerError),
    #[error("precision deficit: {rows} series coefficients available, {required} required")]
    PrecisionDeficit { rows: usize, required: usize },
    #[error("the seed determines the zero series")]
    ZeroSolution,
    #[error("constructed system failed exact verification: {0}")]
    VerificationFailed(String),
}

/// Search limits: series precision and polynomial degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub terms: usize,
    pub max_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            terms: 512,
            max_degree: 32,
        }
    }
}

fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// True iff no nonzero integers `n₁, n₂` satisfy `p^{n₁} = q^{n₂}`, i.e. the
/// prime-exponent vectors of `p` and `q` are not parallel.
pub fn mult_independent(p: u64, q: u64) -> bool {
    assert!(p >= 2 && q >= 2, "radices must be at least 2");
    let fp = factor_small(p);
    let fq = factor_small(q);
    if fp.len() != fq.len() || fp.iter().zip(&fq).any(|(a, b)| a.0 != b.0) {
        return true;
    }
    // parallel iff e_p[i] * e_q[0] == e_q[i] * e_p[0] for all i
    let (a0, b0) = (fp[0].1 as u64, fq[0].1 as u64);
    !fp.iter()
        .zip(&fq)
        .all(|(a, b)| a.1 as u64 * b0 == b.1 as u64 * a0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Dependent,
    /// No relation with polynomial coefficients of the tested degree vanishes
    /// to the available order.
    IndependentUpToBounds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceResult {
    pub verdict: Verdict,
    /// `a_1, …, a_ℓ` with `Σ a_k w_k ≡ 0` to the common order.
    pub relation: Option<Vec<Poly>>,
    /// Dimension of the space of relations of the tested degree.
    pub nullity: usize,
}

impl DependenceResult {
    pub fn is_dependent(&self) -> bool {
        self.verdict == Verdict::Dependent
    }
}

/// Σ a_k w_k as a truncated series.
fn combination(series: &[LaurentTrunc], coeffs: &[Poly]) -> LaurentTrunc {
    let order = series
        .iter()
        .map(LaurentTrunc::order)
        .min()
        .expect("nonempty");
    let mut acc = LaurentTrunc::unknown(order);
    for (w, a) in series.iter().zip(coeffs) {
        if a.is_zero() {
            continue;
        }
        acc = &acc + &w.mul_poly(a);
    }
    acc
}

fn relation_from_vector(v: &[Rational], count: usize, width: usize) -> Vec<Poly> {
    (0..count)
        .map(|k| Poly::new(v[k * width..(k + 1) * width].to_vec()))
        .collect()
}

/// Searches for polynomials `a_k` of degree `≤ degree` with
/// `Σ a_k w_k ≡ 0 mod x^N`, `N` the smallest truncation order.
///
/// Fails with a precision deficit unless at least
/// `2(degree+1)ℓ + DEFAULT_MARGIN` coefficients are available from the
/// smallest true valuation on.
pub fn lin_dep_test(series: &[LaurentTrunc], degree: usize) -> Result<DependenceResult, SysError> {
    lin_dep_test_with_margin(series, degree, DEFAULT_MARGIN)
}

pub fn lin_dep_test_with_margin(
    series: &[LaurentTrunc],
    degree: usize,
    margin: usize,
) -> Result<DependenceResult, SysError> {
    let count = series.len();
    assert!(count > 0, "lin_dep_test needs at least one series");
    let width = degree + 1;
    let order = series
        .iter()
        .map(LaurentTrunc::order)
        .min()
        .expect("nonempty");

    if let Some(z) = series.iter().position(LaurentTrunc::is_zero_known) {
        let mut rel = vec![Poly::zero(); count];
        rel[z] = Poly::one();
        return Ok(DependenceResult {
            verdict: Verdict::Dependent,
            relation: Some(rel),
            nullity: 1,
        });
    }
    let low = series
        .iter()
        .filter_map(LaurentTrunc::true_valuation)
        .min()
        .expect("nonzero series");
    let rows_available = (order - low).max(0) as usize;
    let required = 2 * width * count + margin;
    if rows_available < required {
        return Err(SysError::PrecisionDeficit {
            rows: rows_available,
            required,
        });
    }
    let build = |rows: usize| -> Vec<Vec<Rational>> {
        (0..rows as i64)
            .map(|i| {
                let e = low + i;
                let mut row = vec![Rational::zero(); count * width];
                for (k, w) in series.iter().enumerate() {
                    for t in 0..width {
                        if let Some(c) = w.coeff(e - t as i64) {
                            row[k * width + t] = c;
                        }
                    }
                }
                row
            })
            .collect()
    };
    let verified = |v: &[Rational]| -> Option<Vec<Poly>> {
        let rel = relation_from_vector(v, count, width);
        combination(series, &rel).is_zero_known().then_some(rel)
    };

    let window = build(required);
    let ns = nullspace(&window, count * width);
    if ns.is_empty() {
        return Ok(DependenceResult {
            verdict: Verdict::IndependentUpToBounds,
            relation: None,
            nullity: 0,
        });
    }
    if ns.len() == 1 && required == rows_available {
        let rel = verified(&ns[0]).expect("full system");
        return Ok(DependenceResult {
            verdict: Verdict::Dependent,
            relation: Some(rel),
            nullity: 1,
        });
    }
    // The window admits candidates; settle on the full system.
    let ns = if required == rows_available {
        ns
    } else {
        nullspace(&build(rows_available), count * width)
    };
    match ns.first() {
        None => Ok(DependenceResult {
            verdict: Verdict::IndependentUpToBounds,
            relation: None,
            nullity: 0,
        }),
        Some(v) => {
            let rel = verified(v).expect("nullspace vector of the full system");
            Ok(DependenceResult {
                verdict: Verdict::Dependent,
                relation: Some(rel),
                nullity: ns.len(),
            })
        }
    }
}

/// Whether `{w_k}` and `{w_k(x^m)}` receive the same dependence verdict, the
/// lifted family being tested at degree `m·degree` (the image of degree
/// `degree` under `x ↦ x^m`).
pub fn lift_dependence_check(
    series: &[LaurentTrunc],
    m: usize,
    degree: usize,
) -> Result<bool, SysError> {
    assert!(m >= 2, "lift exponent must be at least 2");
    let base = lin_dep_test(series, degree)?;
    let lifted: Vec<LaurentTrunc> = series.iter().map(|w| w.substitute_power(m)).collect();
    let up = lin_dep_test(&lifted, m * degree)?;
    Ok(base.verdict == up.verdict)
}

/// The consistent pair of first-order systems attached to a common solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahlerSystem {
    pub p: u64,
    pub q: u64,
    /// `σ₁(g) = A g`.
    pub a: RatMatrix,
    /// `σ₂(g) = B g`.
    pub b: RatMatrix,
    /// `(m, r)` such that basis element `k` is `σ₁^m σ₂^r f`.
    pub basis_tags: Vec<(usize, usize)>,
    /// Series of the basis elements, `basis[0] = f`.
    pub basis: Vec<LaurentTrunc>,
}

impl MahlerSystem {
    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

impl fmt::Display for MahlerSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}, q = {}, n = {}", self.p, self.q, self.dim())?;
        writeln!(f, "A = {}", self.a)?;
        write!(f, "B = {}", self.b)
    }
}

/// Exact check of `A(x^q) B(x) = B(x^p) A(x)`.
pub fn check_consistency(sys: &MahlerSystem) -> bool {
    consistent(sys.p, sys.q, &sys.a, &sys.b)
}

pub fn consistent(p: u64, q: u64, a: &RatMatrix, b: &RatMatrix) -> bool {
    let lhs = a.substitute_power(q as usize).mul(b);
    let rhs = b.substitute_power(p as usize).mul(a);
    lhs == rhs
}

/// Doubling ladder `1, 2, 4, …` capped at `max`, always ending at `max`.
fn degree_ladder(max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 1;
    while d < max {
        out.push(d);
        d *= 2;
    }
    out.push(max);
    out
}

/// Coefficients `c_i ∈ Q(x)` with `target = Σ c_i basis_i`, found by degree
/// escalation. The relation space of `{target} ∪ basis` has rank one when
/// the basis is independent, so a nullity `k` at degree `D` pins the minimal
/// degree at `D − k + 1`.
fn express_in_basis(
    basis: &[LaurentTrunc],
    target: &LaurentTrunc,
    max_degree: usize,
) -> Result<Option<Vec<RatFunc>>, SysError> {
    let mut family = Vec::with_capacity(basis.len() + 1);
    family.push(target.clone());
    family.extend(basis.iter().cloned());
    for d in degree_ladder(max_degree) {
        let mut res = lin_dep_test(&family, d)?;
        if !res.is_dependent() {
            continue;
        }
        if res.nullity > 1 {
            let d0 = d + 1 - res.nullity;
            let tight = lin_dep_test(&family, d0)?;
            if tight.is_dependent() {
                res = tight;
            }
        }
        let rel = res.relation.expect("dependent");
        if rel[0].is_zero() {
            return Ok(None);
        }
        let lead = RatFunc::from(rel[0].clone());
        let coeffs = rel[1..]
            .iter()
            .map(|a| {
                (-RatFunc::from(a.clone()))
                    .checked_div(&lead)
                    .expect("nonzero")
            })
            .collect();
        return Ok(Some(coeffs));
    }
    Ok(None)
}

fn check_second(eq2: &MahlerEquation, f: &LaurentTrunc) -> Result<(), SysError> {
    let res = apply_operator(eq2, f)?;
    match res.true_valuation() {
        None => Ok(()),
        Some(v) => Err(MahlerError::Inconsistent { index: v }.into()),
    }
}

/// Solves `eq1` from the seed, checks the solution against `eq2` both ways,
/// and returns the series to `terms` coefficients.
pub fn common_solution(
    eq1: &MahlerEquation,
    eq2: &MahlerEquation,
    seed: &Seed,
    terms: i64,
) -> Result<LaurentTrunc, SysError> {
    let f = solve_series(eq1, &seed.values, seed.start, terms)?;
    check_second(eq2, &f)?;
    let g = solve_series(eq2, &seed.values, seed.start, terms)?;
    check_second(eq1, &g)?;
    if !f.agrees_with(&g) {
        let k = (f.valuation().min(g.valuation())..f.order().min(g.order()))
            .find(|&k| f.coeff(k) != g.coeff(k))
            .unwrap_or(seed.start);
        return Err(MahlerError::Inconsistent { index: k }.into());
    }
    Ok(f)
}

/// Images of the candidate `h_{m,r} = σ₁^m σ₂^r f` under `σ₁` and `σ₂` as
/// exact combinations of candidates, read off the two equations:
/// `σ₁ h_{m,r} = h_{m+1,r}` below the order and
/// `h_{m₁,r} = −Σ_i b_i(x^{q^r}) h_{i,r}` at it, symmetrically for `σ₂`.
fn candidate_images(
    eq1: &MahlerEquation,
    eq2: &MahlerEquation,
) -> Result<[Vec<Vec<RatFunc>>; 2], SysError> {
    let (m1, m2) = (eq1.order(), eq2.order());
    let idx = |m: usize, r: usize| m * m2 + r;
    let mut s1 = vec![vec![RatFunc::zero(); m1 * m2]; m1 * m2];
    let mut s2 = s1.clone();
    for m in 0..m1 {
        for r in 0..m2 {
            let k = idx(m, r);
            if m + 1 < m1 {
                s1[k][idx(m + 1, r)] = RatFunc::one();
            } else {
                let qr = eq2.radix_power(r)?;
                for (i, b) in eq1.coeffs().iter().enumerate() {
                    s1[k][idx(i, r)] = -b.substitute_power(qr);
                }
            }
            if r + 1 < m2 {
                s2[k][idx(m, r + 1)] = RatFunc::one();
            } else {
                let pm = eq1.radix_power(m)?;
                for (j, b) in eq2.coeffs().iter().enumerate() {
                    s2[k][idx(m, j)] = -b.substitute_power(pm);
                }
            }
        }
    }
    Ok([s1, s2])
}

/// Builds `σ₁(g) = A g`, `σ₂(g) = B g` on a basis of the span of
/// `h_{m,r} = σ₁^m σ₂^r f`, `0 ≤ m < m₁`, `0 ≤ r < m₂`, chosen greedily in
/// lexicographic `(m, r)` order starting from `g₁ = f`.
///
/// Candidates outside the basis are expressed in it by series relations
/// found with degree escalation up to `caps.max_degree`. The images
/// `σ(h_{m,r})` are exact consequences of the equations, so `A` and `B`
/// follow by substitution. The result is re-verified against the series
/// and must satisfy `det A · det B ≠ 0` and the consistency identity
/// exactly; failures there mean the caps were too small.
pub fn build_system(
    eq1: &MahlerEquation,
    eq2: &MahlerEquation,
    seed: &Seed,
    caps: Caps,
) -> Result<MahlerSystem, SysError> {
    if !eq1.is_normalized() || !eq2.is_normalized() {
        return Err(MahlerError::NotNormalized.into());
    }
    let (p, q) = (eq1.radix(), eq2.radix());
    let (m1, m2) = (eq1.order(), eq2.order());
    let f = common_solution(eq1, eq2, seed, caps.terms as i64)?;
    if f.is_zero_known() {
        return Err(SysError::ZeroSolution);
    }
    let order = f.order();
    let shift = |g: &LaurentTrunc, e: usize| g.substitute_power(e).truncate(order);

    // coordinates of every candidate in the basis
    let mut basis: Vec<LaurentTrunc> = Vec::new();
    let mut tags = Vec::new();
    let mut coords: Vec<Vec<RatFunc>> = Vec::with_capacity(m1 * m2);
    for m in 0..m1 {
        for r in 0..m2 {
            let e = eq1.radix_power(m)? * eq2.radix_power(r)?;
            let h = shift(&f, e);
            let expr = if basis.is_empty() {
                None
            } else {
                express_in_basis(&basis, &h, caps.max_degree)?
            };
            match expr {
                Some(c) => coords.push(c),
                None => {
                    for c in coords.iter_mut() {
                        c.push(RatFunc::zero());
                    }
                    let mut unit = vec![RatFunc::zero(); basis.len() + 1];
                    unit[basis.len()] = RatFunc::one();
                    coords.push(unit);
                    basis.push(h);
                    tags.push((m, r));
                }
            }
        }
    }
    let n = basis.len();
    for c in coords.iter_mut() {
        c.resize(n, RatFunc::zero());
    }

    let images = candidate_images(eq1, eq2)?;
    let mut mats = Vec::with_capacity(2);
    for ((radix, name), image) in [(p, "σ₁"), (q, "σ₂")].into_iter().zip(&images) {
        let mut mat = RatMatrix::zeros(n);
        for (k, &(m, r)) in tags.iter().enumerate() {
            let src = &image[m * m2 + r];
            for (c, w) in src.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for (i, x) in coords[c].iter().enumerate() {
                    if !x.is_zero() {
                        let v = mat.get(k, i) + &(w * x);
                        mat.set(k, i, v);
                    }
                }
            }
            let target = shift(&basis[k], radix as usize);
            let residual =
                (0..n).fold(target, |acc, i| &acc - &basis[i].mul_ratfunc(mat.get(k, i)));
            if residual.is_empty() || !residual.is_zero_known() {
                return Err(SysError::VerificationFailed(format!(
                    "{name} residual of basis element {k}"
                )));
            }
        }
        mats.push(mat);
    }
    let b = mats.pop().expect("two matrices");
    let a = mats.pop().expect("two matrices");
    if a.det().is_zero() || b.det().is_zero() {
        return Err(SysError::VerificationFailed(
            "singular coefficient matrix".into(),
        ));
    }
    if !consistent(p, q, &a, &b) {
        return Err(SysError::VerificationFailed(
            "A(x^q)B(x) ≠ B(x^p)A(x)".into(),
        ));
    }
    Ok(MahlerSystem {
        p,
        q,
        a,
        b,
        basis_tags: tags,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{laurent_expand, rat};

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_i64s(n), Poly::from_i64s(d)).unwrap()
    }

    #[test]
    fn independence_of_radices() {
        assert!(!mult_independent(2, 2));
        assert!(!mult_independent(8, 16));
        assert!(mult_independent(2, 3));
        assert!(mult_independent(6, 12));
        assert!(!mult_independent(36, 216));
        assert!(mult_independent(12, 18));
        for k in 1..6u32 {
            for l in 1..6u32 {
                assert!(!mult_independent(3u64.pow(k), 3u64.pow(l)));
            }
        }
    }

    #[test]
    fn detects_simple_dependence() {
        let w1 = laurent_expand(&rf(&[1], &[1, -1]), 60);
        let w2 = laurent_expand(&rf(&[1], &[1, 0, -1]), 60);
        let res = lin_dep_test(&[w1.clone(), w2.clone()], 1).unwrap();
        assert!(res.is_dependent());
        let rel = res.relation.unwrap();
        // proportional to (-1, 1 + x)
        assert_eq!(
            &rel[1] * &Poly::from_i64s(&[-1]),
            &rel[0] * &Poly::from_i64s(&[1, 1])
        );
        assert!(combination(&[w1, w2], &rel).is_zero_known());
    }

    #[test]
    fn constant_and_thue_morse_independent() {
        let tm = MahlerEquation::first_order(2, rf(&[1], &[1, -1])).unwrap();
        let w1 = laurent_expand(&RatFunc::one(), 80);
        let w2 = solve_series(&tm, &[rat(1)], 0, 80).unwrap();
        assert_eq!(
            lin_dep_test(&[w1.clone(), w2.clone()], 3).unwrap().verdict,
            Verdict::IndependentUpToBounds
        );
        // a rational pair is caught
        let w3 = laurent_expand(&rf(&[1], &[1, -1]), 80);
        assert!(lin_dep_test(&[w1, w3], 1).unwrap().is_dependent());
    }

    #[test]
    fn single_nonzero_series_independent() {
        let w = laurent_expand(&rf(&[1, 2], &[1, -3]), 40);
        assert!(!lin_dep_test(&[w], 4).unwrap().is_dependent());
    }

    #[test]
    fn precision_deficit_is_explicit() {
        let w = laurent_expand(&rf(&[1], &[1, -1]), 20);
        assert_eq!(
            lin_dep_test(&[w.clone(), w], 3),
            Err(SysError::PrecisionDeficit {
                rows: 20,
                required: 32
            })
        );
    }

    #[test]
    fn lift_agreement_examples() {
        let w = laurent_expand(&rf(&[1], &[1, -1]), 80);
        let one = laurent_expand(&RatFunc::one(), 80);
        assert!(lift_dependence_check(&[one, w.clone()], 2, 3).unwrap());
        let triple = [w.clone(), w.scale(&rat(2)), w.mul_poly(&Poly::x())];
        assert!(lin_dep_test(&triple, 1).unwrap().is_dependent());
        assert!(lift_dependence_check(&triple, 3, 1).unwrap());
    }

    #[test]
    fn consistency_examples() {
        let sys = |a: RatFunc, b: RatFunc| MahlerSystem {
            p: 2,
            q: 3,
            a: RatMatrix::scalar(a),
            b: RatMatrix::scalar(b),
            basis_tags: vec![(0, 0)],
            basis: vec![],
        };
        assert!(check_consistency(&sys(
            rf(&[1], &[1, 1]),
            rf(&[1], &[1, 1, 1])
        )));
        assert!(check_consistency(&sys(RatFunc::one(), RatFunc::one())));
        assert!(!check_consistency(&sys(RatFunc::x(), RatFunc::x())));
        let id = MahlerSystem {
            p: 2,
            q: 3,
            a: RatMatrix::identity(3),
            b: RatMatrix::identity(3),
            basis_tags: vec![],
            basis: vec![],
        };
        assert!(check_consistency(&id));
    }

    #[test]
    fn builds_scalar_system_for_geometric_series() {
        let eq1 = MahlerEquation::first_order(2, rf(&[1], &[1, 1])).unwrap();
        let eq2 = MahlerEquation::first_order(3, rf(&[1], &[1, 1, 1])).unwrap();
        let sys = build_system(
            &eq1,
            &eq2,
            &Seed::new(0, vec![rat(1)]),
            Caps {
                terms: 64,
                max_degree: 4,
            },
        )
        .unwrap();
        assert_eq!(sys.dim(), 1);
        assert_eq!(sys.a, RatMatrix::scalar(rf(&[1], &[1, 1])));
        assert_eq!(sys.b, RatMatrix::scalar(rf(&[1], &[1, 1, 1])));
        assert!(check_consistency(&sys));
    }

    #[test]
    fn rejects_seed_failing_second_equation() {
        let tm = MahlerEquation::first_order(2, rf(&[1], &[1, -1])).unwrap();
        let eq2 = MahlerEquation::first_order(3, RatFunc::one()).unwrap();
        let r = build_system(&tm, &eq2, &Seed::new(0, vec![rat(1)]), Caps::default());
        assert!(matches!(
            r,
            Err(SysError::Mahler(MahlerError::Inconsistent { .. }))
        ));
    }

    #[test]
    fn iterated_equation_keeps_one_dimensional_span() {
        // f(x^p) = a f(x) implies f(x^{p^2}) = a(x^p) a(x) f(x)
        let a = rf(&[1], &[1, 1]);
        let aa = &a.substitute_power(2) * &a;
        let eq1 = MahlerEquation::new(2, vec![-aa, RatFunc::zero()]).unwrap();
        let eq2 = MahlerEquation::first_order(3, rf(&[1], &[1, 1, 1])).unwrap();
        let sys = build_system(
            &eq1,
            &eq2,
            &Seed::new(0, vec![rat(1)]),
            Caps {
                terms: 96,
                max_degree: 8,
            },
        )
        .unwrap();
        // f and f(x^2) are Q(x)-dependent, so W stays one-dimensional
        assert_eq!(sys.dim(), 1);
        assert!(check_consistency(&sys));
    }

    #[test]
    fn guessed_candidate_relation() {
        // Thue–Morse: f(x^4) = f(x)/((1-x)(1-x^2)) as an order-two 2-equation,
        // paired with the order-one 2-equation; f(x^2) = f(x)/(1-x) must be found
        let tm = MahlerEquation::first_order(2, rf(&[1], &[1, -1])).unwrap();
        let iterated =
            MahlerEquation::new(2, vec![-rf(&[1], &[1, -1, -1, 1]), RatFunc::zero()]).unwrap();
        let sys = build_system(
            &iterated,
            &tm,
            &Seed::new(0, vec![rat(1)]),
            Caps {
                terms: 128,
                max_degree: 4,
            },
        )
        .unwrap();
        assert_eq!(sys.dim(), 1);
        let a = RatMatrix::scalar(rf(&[1], &[1, -1]));
        assert_eq!(sys.a, a);
        assert_eq!(sys.b, a);
    }
}
