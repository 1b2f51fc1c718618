//! Complex polynomial roots (Aberth–Ehrlich iteration).

use num_complex::Complex64;

/// Roots of `sum_k coeffs[k] z^k`. Trailing zero coefficients are dropped,
/// so the number of roots is the actual degree.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    // exact roots at the origin
    let zeros = c.iter().take_while(|x| **x == Complex64::new(0.0, 0.0)).count();
    let c = &c[zeros..];
    let n_rest = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if n_rest == 0 {
        return roots;
    }
    if n_rest == 1 {
        roots.push(-c[0] / c[1]);
        return roots;
    }
    let lead = c[n_rest];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    // Fujiwara-type radius for the initial circle
    let radius = (0..n_rest)
        .map(|k| monic[k].norm().powf(1.0 / (n_rest - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n_rest)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n_rest as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let deriv: Vec<Complex64> = (1..=n_rest).map(|k| monic[k] * k as f64).collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n_rest {
            let p = horner(&monic, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let dp = horner(&deriv, z[i]);
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n_rest {
                if j != i {
                    let d = z[i] - z[j];
                    if d != Complex64::new(0.0, 0.0) {
                        s += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - ratio * s;
            let step = if denom.norm() > 0.0 && denom.is_finite() {
                ratio / denom
            } else {
                ratio
            };
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    roots.extend(z);
    roots
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// `∫ log|h| dμ_FS` for a univariate complex polynomial: `log|lead| +
/// sum over roots of (1/2) log(1 + |α|^2)`. Returns `-inf` for the zero polynomial.
pub fn fs_log_abs_mean(coeffs: &[Complex64]) -> f64 {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    let Some(lead) = c.last().copied() else {
        return f64::NEG_INFINITY;
    };
    let roots = poly_roots(&c);
    lead.norm().ln()
        + roots
            .iter()
            .map(|a| 0.5 * (1.0 + a.norm_sqr()).ln())
            .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn quadratic_roots() {
        let mut r = poly_roots(&[c(-2.0), c(0.0), c(1.0)]);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0].re + 2f64.sqrt()).abs() < 1e-13);
        assert!((r[1].re - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn clustered_roots() {
        // (z - 1)^4 (z + 3)
        let coeffs = [c(3.0), c(-11.0), c(14.0), c(-6.0), c(-1.0), c(1.0)];
        let r = poly_roots(&coeffs);
        assert_eq!(r.len(), 5);
        for a in &r {
            let v = horner(&coeffs, *a);
            assert!(v.norm() < 1e-10);
        }
    }

    #[test]
    fn log_mean_of_linear() {
        // ∫ log|z - 1| dμ = (1/2) log 2
        let v = fs_log_abs_mean(&[c(-1.0), c(1.0)]);
        assert!((v - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(fs_log_abs_mean(&[c(3.0)]), 3f64.ln());
    }
}
