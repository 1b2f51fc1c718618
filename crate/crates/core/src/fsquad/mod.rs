//! Integration against products of Fubini–Study probability measures on
//! `(P^1(C))^m`.
//!
//! Each factor is parametrized by `u = r^2/(1+r^2)` and the angle, which turns
//! the measure into `du dθ / 2π` on the unit square. Up to two active
//! variables the rule is a tensor product of composite Gauss–Legendre (in `u`)
//! and the periodic trapezoid rule (in `θ`) refined by level doubling; above
//! that a randomly shifted Kronecker lattice is used. `log |h|` integrals are
//! computed through the roots of `h` in one variable.

mod cache;
mod nodes;
mod roots;

use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{hash_key, CacheEntry, QuadCache};
pub use nodes::{factor_nodes, gauss_legendre};
pub use roots::{fs_log_abs_mean, poly_roots};

use crate::error::{Error, Result};
use crate::polyring::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    Roots,
    TensorQuadrature,
    MonteCarlo,
}

impl Method {
    fn cost_rank(self) -> u8 {
        match self {
            Method::Exact => 0,
            Method::Roots => 1,
            Method::TensorQuadrature => 2,
            Method::MonteCarlo => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub estimate: f64,
    pub error_bound: f64,
    pub method: Method,
    pub nodes: u64,
    pub converged: bool,
}

impl QuadResult {
    pub fn exact(v: f64) -> Self {
        QuadResult {
            estimate: v,
            error_bound: 0.0,
            method: Method::Exact,
            nodes: 0,
            converged: true,
        }
    }
}

/// Integrands over `(P^1)^m`, in the affine coordinates `z_1..z_m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Integrand {
    Const { value: f64 },
    /// `log sum_k |f_k|^2`.
    LogSumSq { polys: Vec<MultiPoly> },
    /// `log max_k |f_k|`.
    LogMaxAbs { polys: Vec<MultiPoly> },
    /// `log |f|`.
    LogAbs { poly: MultiPoly },
    /// `log(1 + |z_var|^2)`.
    LogOnePlusAbsSq { var: usize },
    Sum { terms: Vec<(f64, Integrand)> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub seed: u64,
    /// Subtract `sum_j e_j log(1+|z_j|^2)` (integrated exactly) before quadrature.
    pub control_variate: bool,
    /// Highest refinement level for one active variable.
    pub max_level_1: u32,
    /// Highest refinement level for two active variables.
    pub max_level_2: u32,
    pub qmc_shifts: usize,
    pub qmc_start_points: usize,
    pub qmc_max_points: usize,
    /// Non-finite integrand values tolerated (and skipped) per rule application.
    pub max_singular: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            seed: 0x5eed,
            control_variate: true,
            max_level_1: 6,
            max_level_2: 3,
            qmc_shifts: 8,
            qmc_start_points: 1 << 12,
            qmc_max_points: 1 << 18,
            max_singular: 16,
        }
    }
}

/// An integrator with configuration and optional cache.
#[derive(Clone, Debug, Default)]
pub struct Quadrature {
    pub config: QuadConfig,
    pub cache: Option<Arc<QuadCache>>,
}

/// Integrates with the default configuration and no persistent cache.
pub fn fs_integrate(g: &Integrand, tol: f64) -> Result<QuadResult> {
    Quadrature::default().integrate(g, tol)
}

type Field<'a> = dyn Fn(&[Complex64]) -> f64 + Sync + 'a;

impl Quadrature {
    pub fn new(config: QuadConfig) -> Self {
        Quadrature {
            config,
            cache: None,
        }
    }

    pub fn with_cache(mut self, cache: Arc<QuadCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    /// Integrates `g` to absolute accuracy `tol`, failing with `NoConvergence`
    /// (which carries the best estimate) when the rules are exhausted first.
    pub fn integrate(&self, g: &Integrand, tol: f64) -> Result<QuadResult> {
        let r = self.integrate_best(g, tol)?;
        if r.converged {
            Ok(r)
        } else {
            Err(Error::NoConvergence {
                estimate: r.estimate,
                error_bound: r.error_bound,
            })
        }
    }

    /// Like `integrate`, but returns the best available result with its honest
    /// error bound when `tol` cannot be met.
    pub fn integrate_best(&self, g: &Integrand, tol: f64) -> Result<QuadResult> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
        }
        match g {
            Integrand::Const { value } => Ok(QuadResult::exact(*value)),
            Integrand::LogOnePlusAbsSq { .. } => Ok(QuadResult::exact(1.0)),
            Integrand::LogAbs { poly } => self.log_abs(poly, tol),
            Integrand::LogSumSq { polys } | Integrand::LogMaxAbs { polys } => {
                let max = matches!(g, Integrand::LogMaxAbs { .. });
                let nz: Vec<&MultiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
                match nz.len() {
                    0 => Err(Error::Invalid("logarithm of the zero function".into())),
                    1 => {
                        let scale = if max { 1.0 } else { 2.0 };
                        let r = self.log_abs(nz[0], tol / scale)?;
                        Ok(scaled(r, scale))
                    }
                    _ => self.smooth(&nz, max, tol),
                }
            }
            Integrand::Sum { terms } => {
                let total: f64 = terms.iter().map(|(c, _)| c.abs()).sum();
                let share = if total > 0.0 { tol / total } else { tol };
                let mut out = QuadResult::exact(0.0);
                for (c, t) in terms {
                    if *c == 0.0 {
                        continue;
                    }
                    let r = self.integrate_best(t, share)?;
                    out.estimate += c * r.estimate;
                    out.error_bound += c.abs() * r.error_bound;
                    out.nodes += r.nodes;
                    out.converged &= r.converged;
                    if r.method.cost_rank() > out.method.cost_rank() {
                        out.method = r.method;
                    }
                }
                out.converged = out.converged || out.error_bound <= tol;
                Ok(out)
            }
        }
    }

    /// Integrates an arbitrary function of `m` variables (no caching).
    pub fn integrate_fn<F>(&self, m: usize, f: F, tol: f64) -> Result<QuadResult>
    where
        F: Fn(&[Complex64]) -> f64 + Sync,
    {
        self.numeric(m, &f, tol)
    }

    fn cached(
        &self,
        key_source: &impl Serialize,
        tol: f64,
        compute: impl FnOnce() -> Result<QuadResult>,
    ) -> Result<QuadResult> {
        let Some(cache) = &self.cache else {
            return compute();
        };
        let canonical = serde_json::to_string(key_source)?;
        let key = hash_key(&canonical);
        if let Some(r) = cache.lookup(&key, tol) {
            return Ok(r);
        }
        let r = compute()?;
        let _ = cache.store(&key, tol, &r);
        Ok(r)
    }

    fn log_abs(&self, poly: &MultiPoly, tol: f64) -> Result<QuadResult> {
        if poly.is_zero() {
            return Err(Error::Invalid("logarithm of the zero function".into()));
        }
        let content = poly.content();
        let log_c = crate::symbolic::ln_bigint(&content);
        let prim = poly.div_integer_exact(&content).with_sign_positive();
        let (k, q) = compress(std::slice::from_ref(&prim));
        let prim = &q[0];
        if k == 0 {
            return Ok(QuadResult::exact(log_c));
        }
        if k == 1 {
            let coeffs: Vec<Complex64> = prim
                .coefficients_in(0)
                .iter()
                .map(|c| Complex64::new(c.constant_value().and_then(|v| v.to_f64()).unwrap_or(0.0), 0.0))
                .collect();
            let v = fs_log_abs_mean(&coeffs);
            let deg = coeffs.len() as f64;
            return Ok(QuadResult {
                estimate: log_c + v,
                error_bound: 64.0 * f64::EPSILON * deg * (1.0 + v.abs()),
                method: Method::Roots,
                nodes: 1,
                converged: true,
            });
        }
        #[derive(Serialize)]
        struct Key<'a> {
            v: u32,
            kind: &'static str,
            poly: &'a MultiPoly,
            control_variate: bool,
            seed: u64,
        }
        let key = Key {
            v: 1,
            kind: "log_abs_fibered",
            poly: prim,
            control_variate: self.config.control_variate,
            seed: self.config.seed,
        };
        let r = self.cached(&key, tol, || {
            // inner variable: highest degree; the rest are integrated numerically
            let inner = (0..k)
                .max_by_key(|&v| (prim.degree_in(v), v))
                .expect("k >= 2");
            let outer: Vec<usize> = (0..k).filter(|&v| v != inner).collect();
            let coeff_polys: Vec<Compiled> = prim
                .coefficients_in(inner)
                .iter()
                .map(|c| Compiled::new(c))
                .collect();
            let cv = self.config.control_variate;
            let degs: Vec<f64> = outer
                .iter()
                .map(|&v| prim.degree_in(v).finite().unwrap_or(0) as f64)
                .collect();
            let f = |w: &[Complex64]| {
                let mut z = vec![Complex64::new(0.0, 0.0); k];
                for (j, &v) in outer.iter().enumerate() {
                    z[v] = w[j];
                }
                let cs: Vec<Complex64> = coeff_polys.iter().map(|c| c.eval(&z)).collect();
                let base = fs_log_abs_mean(&cs);
                if cv {
                    base - 0.5
                        * w.iter()
                            .zip(&degs)
                            .map(|(wi, e)| e * (1.0 + wi.norm_sqr()).ln())
                            .sum::<f64>()
                } else {
                    base
                }
            };
            let r = self.numeric(k - 1, &f, tol)?;
            let exact_part = if cv { 0.5 * degs.iter().sum::<f64>() } else { 0.0 };
            Ok(QuadResult {
                estimate: r.estimate + exact_part,
                ..r
            })
        })?;
        Ok(QuadResult {
            estimate: r.estimate + log_c,
            ..r
        })
    }

    fn smooth(&self, polys: &[&MultiPoly], max: bool, tol: f64) -> Result<QuadResult> {
        let owned: Vec<MultiPoly> = polys.iter().map(|p| (*p).clone().with_sign_positive()).collect();
        let (k, mut q) = compress(&owned);
        q.sort();
        q.dedup();
        if k == 0 {
            let vals: Vec<f64> = q
                .iter()
                .map(|p| p.constant_value().and_then(|v| v.to_f64()).unwrap_or(f64::NAN))
                .collect();
            let v = if max {
                vals.iter().fold(0.0f64, |a, b| a.max(b.abs())).ln()
            } else {
                vals.iter().map(|v| v * v).sum::<f64>().ln()
            };
            return Ok(QuadResult::exact(v));
        }
        #[derive(Serialize)]
        struct Key<'a> {
            v: u32,
            kind: &'static str,
            polys: &'a [MultiPoly],
            control_variate: bool,
            seed: u64,
        }
        let key = Key {
            v: 1,
            kind: if max { "log_max_abs" } else { "log_sum_sq" },
            polys: &q,
            control_variate: self.config.control_variate,
            seed: self.config.seed,
        };
        self.cached(&key, tol, || {
            let field = TupleField::new(&q, k, max, self.config.control_variate);
            let r = match k {
                1 => self.tensor_driver(tol, self.config.max_level_1, &|l| field.level_sum_1(l)),
                2 => self.tensor_driver(tol, self.config.max_level_2, &|l| field.level_sum_2(l)),
                _ => {
                    let compiled: Vec<Compiled> = q.iter().map(|p| Compiled::new(p)).collect();
                    let f = |z: &[Complex64]| {
                        let vals = compiled.iter().map(|c| c.eval(z));
                        field.combine(vals, z.iter().map(|zi| (1.0 + zi.norm_sqr()).ln()))
                    };
                    self.qmc(k, &f, tol)
                }
            }?;
            Ok(QuadResult {
                estimate: r.estimate + field.exact_part(),
                ..r
            })
        })
    }

    fn numeric(&self, m: usize, f: &Field<'_>, tol: f64) -> Result<QuadResult> {
        match m {
            0 => Ok(QuadResult::exact(f(&[]))),
            1 => self.tensor(1, f, tol, self.config.max_level_1),
            2 => self.tensor(2, f, tol, self.config.max_level_2),
            _ => self.qmc(m, f, tol),
        }
    }

    fn tensor(&self, m: usize, f: &Field<'_>, tol: f64, max_level: u32) -> Result<QuadResult> {
        self.tensor_driver(tol, max_level, &|level| {
            let nodes = factor_nodes(level);
            let n = nodes.len();
            let total = n.pow(m as u32);
            let chunk = n;
            let (sum, bad) = (0..total.div_ceil(chunk))
                .into_par_iter()
                .map(|c| {
                    let mut z = vec![Complex64::new(0.0, 0.0); m];
                    let mut s = 0.0;
                    let mut bad = 0usize;
                    for idx in c * chunk..((c + 1) * chunk).min(total) {
                        let mut rest = idx;
                        let mut w = 1.0;
                        for zj in z.iter_mut() {
                            let (p, wj) = nodes[rest % n];
                            rest /= n;
                            *zj = p;
                            w *= wj;
                        }
                        let v = f(&z);
                        if v.is_finite() {
                            s += w * v;
                        } else {
                            bad += 1;
                        }
                    }
                    (s, bad)
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold((0.0, 0usize), |(a, b), (s, k)| (a + s, b + k));
            (sum, bad, total as u64)
        })
    }

    /// Runs refinement levels `0..=max_level` until two consecutive levels
    /// agree to `tol`. The reported result is the level with the smallest
    /// observed difference, so tightening `tol` never loosens the bound.
    fn tensor_driver(
        &self,
        tol: f64,
        max_level: u32,
        level_sum: &(dyn Fn(u32) -> (f64, usize, u64) + Sync),
    ) -> Result<QuadResult> {
        let mut prev: Option<f64> = None;
        let mut best: Option<QuadResult> = None;
        let mut nodes_used = 0u64;
        for level in 0..=max_level.max(1) {
            let (sum, bad, nodes) = level_sum(level);
            nodes_used += nodes;
            if bad > self.config.max_singular {
                return Err(Error::SingularIntegrand { count: bad });
            }
            if let Some(p) = prev {
                let floor = 16.0 * f64::EPSILON * (1.0 + sum.abs());
                let err = (sum - p).abs().max(floor);
                if best.is_none_or(|b| err < b.error_bound) {
                    best = Some(QuadResult {
                        estimate: sum,
                        error_bound: err,
                        method: Method::TensorQuadrature,
                        nodes: 0,
                        converged: false,
                    });
                }
                if best.is_some_and(|b| b.error_bound <= tol) {
                    break;
                }
            }
            prev = Some(sum);
        }
        let mut r = best.expect("at least two levels");
        r.nodes = nodes_used;
        r.converged = r.error_bound <= tol;
        Ok(r)
    }

    fn qmc(&self, m: usize, f: &Field<'_>, tol: f64) -> Result<QuadResult> {
        let dim = 2 * m;
        let alpha: Vec<f64> = first_primes(dim)
            .into_iter()
            .map(|p| (p as f64).sqrt().fract())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let shifts: Vec<Vec<f64>> = (0..self.config.qmc_shifts.max(2))
            .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
            .collect();
        let mut n = self.config.qmc_start_points.max(16);
        let mut best: Option<QuadResult> = None;
        let mut used = 0u64;
        loop {
            let means: Vec<(f64, usize)> = shifts
                .par_iter()
                .map(|shift| {
                    let mut z = vec![Complex64::new(0.0, 0.0); m];
                    let mut s = 0.0;
                    let mut bad = 0;
                    let mut good = 0usize;
                    for i in 1..=n {
                        for j in 0..m {
                            let u = (shift[2 * j] + i as f64 * alpha[2 * j]).fract();
                            let t = (shift[2 * j + 1] + i as f64 * alpha[2 * j + 1]).fract();
                            let r = (u / (1.0 - u)).sqrt();
                            z[j] = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * t);
                        }
                        let v = f(&z);
                        if v.is_finite() {
                            s += v;
                            good += 1;
                        } else {
                            bad += 1;
                        }
                    }
                    (s / good.max(1) as f64, bad)
                })
                .collect();
            used += (n * shifts.len()) as u64;
            let bad: usize = means.iter().map(|x| x.1).sum();
            if bad > self.config.max_singular {
                return Err(Error::SingularIntegrand { count: bad });
            }
            let r = means.len() as f64;
            let mean = means.iter().map(|x| x.0).sum::<f64>() / r;
            let var = means.iter().map(|x| (x.0 - mean).powi(2)).sum::<f64>() / (r - 1.0);
            let err = 4.0 * (var / r).sqrt();
            if best.is_none_or(|b| err < b.error_bound) {
                best = Some(QuadResult {
                    estimate: mean,
                    error_bound: err,
                    method: Method::MonteCarlo,
                    nodes: 0,
                    converged: false,
                });
            }
            if err <= tol || n * 2 > self.config.qmc_max_points {
                break;
            }
            n *= 2;
        }
        let mut b = best.expect("one round");
        b.nodes = used;
        b.converged = b.error_bound <= tol;
        Ok(b)
    }
}

fn scaled(r: QuadResult, s: f64) -> QuadResult {
    QuadResult {
        estimate: r.estimate * s,
        error_bound: r.error_bound * s.abs(),
        ..r
    }
}

fn first_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut c = 2u64;
    while out.len() < n {
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Restricts polynomials to the variables they actually use, renumbered
/// `0..k` in increasing order.
fn compress(polys: &[MultiPoly]) -> (usize, Vec<MultiPoly>) {
    let n = polys.first().map(|p| p.num_vars()).unwrap_or(0);
    let active: Vec<usize> = (0..n).filter(|&v| polys.iter().any(|p| p.depends_on(v))).collect();
    let k = active.len();
    let out = polys
        .iter()
        .map(|p| {
            let mut q = p.clone();
            for v in (0..n).rev() {
                if !active.contains(&v) {
                    q = q.drop_var(v);
                }
            }
            q
        })
        .collect();
    (k, out)
}

/// `log sum |f_k|^2` or `log max |f_k|` of a polynomial tuple in one or two
/// variables, laid out for nested Horner evaluation.
struct TupleField {
    /// `coeffs[k][j2][j1]`: coefficient of `z1^j1 z2^j2` in `f_k`.
    coeffs: Vec<Vec<Vec<f64>>>,
    degs: Vec<f64>,
    max: bool,
    cv: bool,
}

impl TupleField {
    fn new(polys: &[MultiPoly], k: usize, max: bool, cv: bool) -> Self {
        let degs: Vec<u32> = (0..k)
            .map(|v| polys.iter().filter_map(|p| p.degree_in(v).finite()).max().unwrap_or(0))
            .collect();
        let d1 = degs.first().copied().unwrap_or(0) as usize;
        let d2 = degs.get(1).copied().unwrap_or(0) as usize;
        let coeffs = polys
            .iter()
            .map(|p| {
                let mut a = vec![vec![0.0; d1 + 1]; d2 + 1];
                for (m, c) in p.terms() {
                    let j1 = m.0.first().copied().unwrap_or(0) as usize;
                    let j2 = m.0.get(1).copied().unwrap_or(0) as usize;
                    a[j2][j1] = bigint_f64(c);
                }
                a
            })
            .collect();
        TupleField {
            coeffs,
            degs: degs.into_iter().map(|d| d as f64).collect(),
            max,
            cv,
        }
    }

    fn weight(&self) -> f64 {
        if self.max {
            0.5
        } else {
            1.0
        }
    }

    fn exact_part(&self) -> f64 {
        if self.cv {
            self.weight() * self.degs.iter().sum::<f64>()
        } else {
            0.0
        }
    }

    /// Value at a point from the tuple values and `log(1+|z_j|^2)` per variable.
    fn combine(
        &self,
        vals: impl Iterator<Item = Complex64>,
        log1p: impl Iterator<Item = f64>,
    ) -> f64 {
        let base = if self.max {
            vals.map(|v| v.norm()).fold(0.0f64, f64::max).ln()
        } else {
            vals.map(|v| v.norm_sqr()).sum::<f64>().ln()
        };
        if self.cv {
            base - self.weight() * log1p.zip(&self.degs).map(|(l, e)| e * l).sum::<f64>()
        } else {
            base
        }
    }

    fn level_sum_1(&self, level: u32) -> (f64, usize, u64) {
        let nodes = factor_nodes(level);
        let rows: Vec<&Vec<f64>> = self.coeffs.iter().map(|a| &a[0]).collect();
        let (s, bad) = nodes
            .par_chunks(256)
            .map(|chunk| {
                let mut s = 0.0;
                let mut bad = 0;
                for &(z, w) in chunk {
                    let vals = rows.iter().map(|r| horner_real(r, z));
                    let v = self.combine(vals, std::iter::once((1.0 + z.norm_sqr()).ln()));
                    if v.is_finite() {
                        s += w * v;
                    } else {
                        bad += 1;
                    }
                }
                (s, bad)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold((0.0, 0usize), |(a, b), (s, k)| (a + s, b + k));
        (s, bad, nodes.len() as u64)
    }

    fn level_sum_2(&self, level: u32) -> (f64, usize, u64) {
        let nodes = factor_nodes(level);
        let log1p: Vec<f64> = nodes.iter().map(|(z, _)| (1.0 + z.norm_sqr()).ln()).collect();
        let (s, bad) = nodes
            .par_iter()
            .zip(log1p.par_iter())
            .map(|(&(z1, w1), &l1)| {
                let inner: Vec<Vec<Complex64>> = self
                    .coeffs
                    .iter()
                    .map(|a| a.iter().map(|row| horner_real(row, z1)).collect())
                    .collect();
                let mut s = 0.0;
                let mut bad = 0;
                for (&(z2, w2), &l2) in nodes.iter().zip(&log1p) {
                    let vals = inner.iter().map(|c| horner_complex(c, z2));
                    let v = self.combine(vals, [l1, l2].into_iter());
                    if v.is_finite() {
                        s += w2 * v;
                    } else {
                        bad += 1;
                    }
                }
                (w1 * s, bad)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold((0.0, 0usize), |(a, b), (s, k)| (a + s, b + k));
        (s, bad, (nodes.len() * nodes.len()) as u64)
    }
}

fn horner_real(c: &[f64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn horner_complex(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn bigint_f64(c: &num_bigint::BigInt) -> f64 {
    if c.is_negative() {
        -(-c).to_f64().unwrap_or(f64::INFINITY)
    } else {
        c.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// A polynomial prepared for fast complex evaluation.
struct Compiled {
    terms: Vec<(f64, Vec<u32>)>,
}

impl Compiled {
    fn new(p: &MultiPoly) -> Self {
        let terms: Vec<(f64, Vec<u32>)> = p
            .terms()
            .map(|(m, c)| {
                (bigint_f64(c), m.0.clone())
            })
            .collect();
        Compiled { terms }
    }

    fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let mut t = Complex64::new(*c, 0.0);
            for (zj, &ej) in z.iter().zip(e) {
                if ej > 0 {
                    t *= zj.powu(ej);
                }
            }
            s += t;
        }
        s
    }
}
