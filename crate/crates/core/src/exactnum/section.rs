use super::{Poly, RatFunc, RatMatrix};

/// `p_j` with `p(x) = Σ_j x^j p_j(x^m)`.
pub(crate) fn section_poly(p: &Poly, m: usize, j: usize) -> Poly {
    Poly::new(p.coeffs().iter().skip(j).step_by(m).cloned().collect())
}

/// Norm of `q` from `Q(x)` down to `Q(y)`, `y = x^m`: the determinant of
/// multiplication by `q` on the basis `1, x, …, x^{m-1}`. Equals
/// `Π_k q(ζ^k x)` after substituting `y = x^m` (ζ a primitive m-th root of
/// unity), i.e. the resultant `Res_z(z^m - y, q(z))` up to sign.
pub(crate) fn norm_down(q: &Poly, m: usize) -> Poly {
    let parts: Vec<RatFunc> = (0..m).map(|j| section_poly(q, m, j).into()).collect();
    let y = RatFunc::x();
    let mut mat = RatMatrix::zeros(m);
    for i in 0..m {
        for (j, part) in parts.iter().enumerate() {
            let row = (i + j) % m;
            let entry = if i + j >= m { part * &y } else { part.clone() };
            mat.set(row, i, entry);
        }
    }
    let d = mat.det();
    assert!(d.is_polynomial(), "norm of a polynomial is a polynomial");
    d.num().clone()
}

/// The unique decomposition `a(x) = Σ_{j<m} x^j c^j(x^m)` with rational
/// functions `c^j`, returned as `[c^0, …, c^{m-1}]`.
///
/// The denominator is first replaced by its norm `D(x^m)`, a polynomial in
/// `x^m`; the numerator is then split by exponent class modulo `m`.
pub fn section_ratfunc(a: &RatFunc, m: usize) -> Vec<RatFunc> {
    assert!(m >= 1, "section modulus must be positive");
    if a.den().is_one() {
        return (0..m).map(|j| section_poly(a.num(), m, j).into()).collect();
    }
    let d = norm_down(a.den(), m);
    let cofactor = d.compose_power(m).exact_div(a.den());
    let num = a.num() * &cofactor;
    (0..m)
        .map(|j| RatFunc::new(section_poly(&num, m, j), d.clone()).expect("nonzero norm"))
        .collect()
}
