//! Quadrature nodes for one projective-line factor.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static TABLE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = table.lock().expect("node table").get(&n) {
        return v.clone();
    }
    let v = Arc::new(compute_gauss_legendre(n));
    table.lock().expect("node table").insert(n, v.clone());
    v
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, t);
        if d.is_finite() {
            dp = d;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

/// Nodes of the product rule for one factor at refinement level `level`:
/// Gauss–Legendre in `u = r^2/(1+r^2)` on panels graded geometrically toward
/// both endpoints (`u = 0` is `z = 0`, `u = 1` is `z = ∞`), times the periodic
/// trapezoid rule in the angle. Weights sum to 1, so the rule integrates
/// against the Fubini–Study probability measure.
pub fn factor_nodes(level: u32) -> Vec<(Complex64, f64)> {
    let graded = 2 + 2 * level as i32;
    let n_g = 4 + 2 * level as usize;
    let n_theta = 8usize << level;
    let gl = gauss_legendre(n_g);
    let mut breaks = vec![0.0];
    for j in (1..=graded).rev() {
        breaks.push(0.5f64.powi(j));
    }
    for j in 2..=graded {
        breaks.push(1.0 - 0.5f64.powi(j));
    }
    breaks.push(1.0);
    let mut out = Vec::with_capacity((breaks.len() - 1) * n_g * n_theta);
    for win in breaks.windows(2) {
        let (a, b) = (win[0], win[1]);
        let half = 0.5 * (b - a);
        for (x, w) in gl.0.iter().zip(&gl.1) {
            let u = a + half * (x + 1.0);
            let wu = half * w;
            let r = (u / (1.0 - u)).sqrt();
            for j in 0..n_theta {
                let theta = 2.0 * PI * (j as f64 + 0.5) / n_theta as f64;
                out.push((Complex64::from_polar(r, theta), wu / n_theta as f64));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_exactness() {
        let (x, w) = &*gauss_legendre(7);
        let s: f64 = x.iter().zip(w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((s - 2.0 / 13.0).abs() < 1e-14);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn factor_weights_sum_to_one() {
        let s: f64 = factor_nodes(1).iter().map(|(_, w)| w).sum();
        assert!((s - 1.0).abs() < 1e-14);
    }
}
