use num_complex::Complex64;

/// All complex roots of `Σ c_k x^k` (lowest degree first) by Durand–Kerner
/// iteration. Roots at the origin are returned exactly.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let zeros = c.iter().take_while(|&&a| a == 0.0).count();
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    let c = &c[zeros..];
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return out;
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&a| Complex64::new(a / lead, 0.0)).collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    };

    // Cauchy bound for the initial circle
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let seed = Complex64::from_polar(1.0, 0.4);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * radius.clamp(0.5, 4.0))
        .collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-9, 1e-9);
                delta = f64::INFINITY;
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    // polish with Newton steps
    let deriv: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    let d_eval = |w: Complex64| {
        deriv
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * w + a)
    };
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = d_eval(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    out.extend(z);
    out
}
