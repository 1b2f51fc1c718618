//! Random inputs and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use arakheight::{MultiPoly, ProjPoint};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A polynomial in `d` variables with degree at most `max_deg` in each, about
/// `terms` nonzero terms and coefficients in `[-max_coef, max_coef]`.
pub fn random_poly(r: &mut impl Rng, d: usize, max_deg: u32, terms: usize, max_coef: i64) -> MultiPoly {
    let t: Vec<(Vec<u32>, BigInt)> = (0..terms)
        .map(|_| {
            let e = (0..d).map(|_| r.gen_range(0..=max_deg)).collect();
            (e, BigInt::from(r.gen_range(-max_coef..=max_coef)))
        })
        .collect();
    MultiPoly::from_terms(d, t)
}

pub fn random_point(r: &mut impl Rng, n: usize, d: usize, max_deg: u32, max_coef: i64) -> ProjPoint {
    loop {
        let coords: Vec<MultiPoly> = (0..=n)
            .map(|_| {
                let k = r.gen_range(1..=3);
                random_poly(r, d, max_deg, k, max_coef)
            })
            .collect();
        if let Ok(p) = ProjPoint::new(coords) {
            return p;
        }
    }
}

/// Bihomogenized value of `f` (degree `e` in one variable) at the unit
/// vector `(cos(φ/2), sin(φ/2) e^{iθ})`.
pub fn unit_eval(f: &MultiPoly, e: u32, phi: f64, theta: f64) -> Complex64 {
    let (x0, x1) = ((0.5 * phi).cos(), (0.5 * phi).sin());
    f.terms().fold(Complex64::new(0.0, 0.0), |acc, (m, c)| {
        let c: f64 = c.to_string().parse().unwrap();
        let t = m.0[0];
        acc + Complex64::from_polar(c * x1.powi(t as i32) * x0.powi((e - t) as i32), theta * t as f64)
    })
}

/// `(1/2) ∫ log Σ|f̃_k|^2 dμ_FS` over unit vectors of `C^2`, for coordinates
/// of degree at most `e`. The affine height is this plus `e/2`, since
/// `∫ log|x_0|^2 dμ_FS = -1`. Composite Simpson in the polar angle `φ` (where `dμ = (1/2) sin φ
/// dφ dθ/2π`) times the midpoint rule in `θ`.
pub fn fs_height_1d(coords: &[MultiPoly], e: u32, nphi: usize, ntheta: usize) -> f64 {
    let nphi = nphi + nphi % 2;
    let g = |phi: f64, theta: f64| {
        let s: f64 = coords.iter().map(|c| unit_eval(c, e, phi, theta).norm_sqr()).sum();
        0.25 * s.ln() * phi.sin()
    };
    let h = PI / nphi as f64;
    let mut total = 0.0;
    for j in 0..ntheta {
        let theta = TAU * (j as f64 + 0.5) / ntheta as f64;
        // the weight sin φ vanishes at both ends
        let mut s = 0.0;
        for i in 1..nphi {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * g(i as f64 * h, theta);
        }
        total += s * h / 3.0;
    }
    total / ntheta as f64
}

/// Maximum over a fine grid of `|x_0|^{a} |x_1|^{b}` on the unit sphere.
pub fn monomial_sup_grid(a: u32, b: u32, n: usize) -> f64 {
    (0..=n)
        .map(|i| {
            let phi = PI * i as f64 / n as f64;
            (0.5 * phi).cos().powi(a as i32) * (0.5 * phi).sin().powi(b as i32)
        })
        .fold(0.0, f64::max)
}
