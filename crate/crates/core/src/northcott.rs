//! Enumeration of points of bounded height in `P^n(Q(z_1..z_d))`.
//!
//! A point with `h(P) <= M` under a fairly large polarization has Fubini–Study
//! height at most `κ M`, where `κ` is the product of the certificate
//! exponents. The degree bound comes from `e_i log 2 <= 2 h_FS(P) + a` and the
//! coefficient bound from comparing each coordinate, as a section of
//! `O(e)`, with its mean `exp(∫ log‖f‖)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arakelov::{Engine, RigorousValue};
use crate::error::{Error, Result};
use crate::fsquad::{Integrand, Quadrature};
use crate::heights::{
    certify_fairly_large, height_point_with, monomial_fs_sup, Polarization, PolarizationName,
};
use crate::polyring::{normalize, MultiPoly, ProjPoint};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NorthcottConfig {
    /// Absolute tolerance of each height evaluation.
    pub tol: f64,
    /// Quadrature error budget added to the bound in the box derivation.
    pub epsilon: f64,
    /// Safety margin `a` in `e_i log 2 <= 2 h + a`.
    pub margin: f64,
    /// Largest number of candidate tuples (or coordinate polynomials) scanned.
    pub budget: u128,
}

impl Default for NorthcottConfig {
    fn default() -> Self {
        NorthcottConfig {
            tol: 1e-9,
            epsilon: 1e-6,
            margin: 0.0,
            budget: 20_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub n: usize,
    pub d: usize,
    pub bound: f64,
    pub polarization: PolarizationName,
    /// `κ`: Fubini–Study heights are at most `κ` times polarization heights.
    pub scale: f64,
    /// `D_i`; negative means the box is empty.
    pub degree_bounds: Vec<i64>,
    /// Coefficient bound `H` at the full degree bounds.
    pub coeff_bound: u64,
}

impl SearchBox {
    pub fn is_empty(&self) -> bool {
        self.degree_bounds.iter().any(|&b| b < 0)
    }

    /// The bound on Fubini–Study heights used for filtering, budget included.
    pub fn fs_bound(&self, cfg: &NorthcottConfig) -> f64 {
        self.scale * (self.bound + cfg.epsilon)
    }

    /// Coefficient bound for coordinates of exact multidegree `e`.
    pub fn coeff_bound_at(&self, e: &[u32], cfg: &NorthcottConfig) -> u64 {
        (coefficient_constant(e) * self.fs_bound(cfg).exp()).floor() as u64
    }
}

/// `|coeff(f)| <= C(e) exp(∫ log‖f‖)` for a section `f` of `O(e)` on
/// `(P^1)^d`: the sup-versus-mean factor `exp(Σ e_i / 2)` times the
/// coefficient-versus-sup factor `Π_i max_t 1 / sup‖X_0^{e_i-t} X_1^t‖`.
pub fn coefficient_constant(e: &[u32]) -> f64 {
    e.iter()
        .map(|&k| {
            let worst = (0..=k)
                .map(|t| monomial_fs_sup(k - t, t))
                .fold(f64::INFINITY, f64::min);
            (0.5 * k as f64).exp() / worst
        })
        .product()
}

pub fn derive_box(
    n: usize,
    d: usize,
    bound: f64,
    pol: &Polarization,
    cfg: &NorthcottConfig,
) -> Result<SearchBox> {
    if pol.d != d {
        return Err(Error::VarMismatch {
            expected: d,
            found: pol.d,
        });
    }
    if !bound.is_finite() || cfg.epsilon < 0.0 || cfg.margin < 0.0 {
        return Err(Error::Invalid("bound, epsilon and margin must be finite and nonnegative".into()));
    }
    let cert = certify_fairly_large(pol)?;
    let scale: f64 = cert
        .slots
        .iter()
        .map(|s| num_traits::ToPrimitive::to_f64(&s.exponent).unwrap_or(f64::INFINITY))
        .product();
    let fs_bound = scale * (bound + cfg.epsilon);
    let deg = ((2.0 * fs_bound + cfg.margin) / std::f64::consts::LN_2).floor() as i64;
    let degree_bounds = vec![if fs_bound < 0.0 { -1 } else { deg }; d];
    let mut b = SearchBox {
        n,
        d,
        bound,
        polarization: pol.name.clone(),
        scale,
        degree_bounds,
        coeff_bound: 0,
    };
    if !b.is_empty() {
        let e: Vec<u32> = b.degree_bounds.iter().map(|&x| x as u32).collect();
        b.coeff_bound = b.coeff_bound_at(&e, cfg);
    }
    Ok(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    In,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundedPoint {
    pub point: ProjPoint,
    pub height: RigorousValue,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enumeration {
    pub search_box: SearchBox,
    /// Points with certified `h <= M`, in canonical order.
    pub points: Vec<BoundedPoint>,
    /// Points within the error bound of `M`.
    pub undecided: Vec<BoundedPoint>,
    /// Tuples that reached a height evaluation.
    pub evaluated: u64,
}

fn monomials(e: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &k in e {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=k).map(move |t| {
                    let mut m = m.clone();
                    m.push(t);
                    m
                })
            })
            .collect();
    }
    out
}

/// `∫ log‖f‖` for `f` as a section of `O(e)`.
fn mean_log_norm(quad: &Quadrature, f: &MultiPoly, e: &[u32], tol: f64) -> Result<(f64, f64)> {
    let r = quad.integrate_best(&Integrand::LogAbs { poly: f.clone() }, tol)?;
    let shift: f64 = e.iter().map(|&k| 0.5 * k as f64).sum();
    Ok((r.estimate - shift, r.error_bound))
}

/// Polynomials of degree at most `e` with coefficients in `[-h, h]` whose mean
/// log-norm in `O(e)` is at most `limit`, the zero polynomial included.
fn coordinate_candidates(
    quad: &Quadrature,
    d: usize,
    e: &[u32],
    h: u64,
    limit: f64,
    cfg: &NorthcottConfig,
) -> Result<Vec<MultiPoly>> {
    let mons = monomials(e);
    let width = 2 * h as u128 + 1;
    let total = width.checked_pow(mons.len() as u32).unwrap_or(u128::MAX);
    if total > cfg.budget {
        return Err(Error::BoxOverflow {
            candidates: total,
            budget: cfg.budget,
        });
    }
    let out: Result<Vec<Option<MultiPoly>>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let terms: Vec<(Vec<u32>, BigInt)> = mons
                .iter()
                .map(|m| {
                    let c = (idx % width) as i64 - h as i64;
                    idx /= width;
                    (m.clone(), BigInt::from(c))
                })
                .collect();
            let f = MultiPoly::from_terms(d, terms);
            if f.is_zero() {
                return Ok(Some(f));
            }
            let (v, err) = mean_log_norm(quad, &f, e, cfg.tol)?;
            Ok((v - err <= limit + 1e-9).then_some(f))
        })
        .collect();
    Ok(out?.into_iter().flatten().collect())
}

/// Lower bound for the Fubini–Study height of a tuple of multidegree `e`:
/// `|Σ a_k f_k|^2 <= |a|^2 Σ |f_k|^2`, so every combination bounds the height
/// from below through its mean log-norm.
fn height_lower_bound(quad: &Quadrature, tuple: &[MultiPoly], e: &[u32], tol: f64) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    let mut consider = |f: &MultiPoly, norm_sq: i64| -> Result<()> {
        if !f.is_zero() {
            let (v, err) = mean_log_norm(quad, f, e, tol)?;
            best = best.max(v - err - 0.5 * (norm_sq as f64).ln());
        }
        Ok(())
    };
    for f in tuple {
        consider(f, 1)?;
    }
    for j in 0..tuple.len() {
        for k in j + 1..tuple.len() {
            for (a, b) in [(1, 1), (1, -1), (2, 1), (2, -1), (1, 2), (1, -2)] {
                let f = &tuple[j].scale(&BigInt::from(a)) + &tuple[k].scale(&BigInt::from(b));
                consider(&f, a * a + b * b)?;
            }
        }
    }
    Ok(best)
}

/// Tolerance of the first, cheap height evaluation.
const COARSE_TOL: f64 = 1e-3;

fn classify(h: &RigorousValue, bound: f64) -> Option<Status> {
    if h.is_exact() {
        return (h.numeric <= bound).then_some(Status::In);
    }
    if (h.numeric - bound).abs() <= h.error_bound {
        Some(Status::Undecided)
    } else if h.numeric < bound {
        Some(Status::In)
    } else {
        None
    }
}

fn canonical_order(a: &BoundedPoint, b: &BoundedPoint) -> std::cmp::Ordering {
    let ka: u32 = a.point.multidegree().iter().sum();
    let kb: u32 = b.point.multidegree().iter().sum();
    ka.cmp(&kb)
        .then_with(|| a.point.multidegree().cmp(b.point.multidegree()))
        .then_with(|| a.point.coords().cmp(b.point.coords()))
}

/// All points of `P^n(Q(z_1..z_d))` with `h(P) <= M`.
pub fn enumerate_bounded(
    engine: &Engine,
    n: usize,
    d: usize,
    bound: f64,
    pol: &Polarization,
    cfg: &NorthcottConfig,
) -> Result<Enumeration> {
    let search_box = derive_box(n, d, bound, pol, cfg)?;
    let mut found: Vec<BoundedPoint> = Vec::new();
    let mut evaluated = 0u64;
    if !search_box.is_empty() {
        let limit = search_box.fs_bound(cfg);
        let dmax: Vec<u32> = search_box.degree_bounds.iter().map(|&x| x as u32).collect();
        for e in monomials(&dmax) {
            let h = search_box.coeff_bound_at(&e, cfg);
            let cands = coordinate_candidates(engine.quadrature(), d, &e, h, limit, cfg)?;
            let count = (cands.len() as u128)
                .checked_pow(n as u32 + 1)
                .unwrap_or(u128::MAX);
            if count > cfg.budget {
                return Err(Error::BoxOverflow {
                    candidates: count,
                    budget: cfg.budget,
                });
            }
            let hits: Result<Vec<(u64, Option<BoundedPoint>)>> = (0..count)
                .into_par_iter()
                .map(|mut idx| {
                    let tuple: Vec<MultiPoly> = (0..=n)
                        .map(|_| {
                            let f = cands[(idx % cands.len() as u128) as usize].clone();
                            idx /= cands.len() as u128;
                            f
                        })
                        .collect();
                    if tuple.iter().all(|f| f.is_zero()) {
                        return Ok((0, None));
                    }
                    // each point is met once: at its own multidegree, in canonical form
                    let nz = normalize(&tuple)?;
                    if nz.point.multidegree() != e.as_slice() || nz.point.coords() != tuple.as_slice() {
                        return Ok((0, None));
                    }
                    let lower = height_lower_bound(engine.quadrature(), &tuple, &e, cfg.tol)?;
                    if lower / search_box.scale > bound + 1e-9 {
                        return Ok((0, None));
                    }
                    let coarse = height_point_with(engine, &nz.point, pol, cfg.tol.max(COARSE_TOL))?;
                    if coarse.numeric - coarse.error_bound > bound + COARSE_TOL {
                        return Ok((1, None));
                    }
                    let height = if coarse.is_exact() || coarse.error_bound <= cfg.tol {
                        coarse
                    } else {
                        height_point_with(engine, &nz.point, pol, cfg.tol)?
                    };
                    Ok((
                        1,
                        classify(&height, bound).map(|status| BoundedPoint {
                            point: nz.point,
                            height,
                            status,
                        }),
                    ))
                })
                .collect();
            for (k, p) in hits? {
                evaluated += k;
                found.extend(p);
            }
        }
    }
    found.sort_by(canonical_order);
    let (points, undecided) = found.into_iter().partition(|p| p.status == Status::In);
    Ok(Enumeration {
        search_box,
        points,
        undecided,
        evaluated,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderRow {
    pub bound: f64,
    pub count: usize,
    pub undecided: usize,
}

/// Counts of points with `h <= M` along a ladder of bounds.
pub fn northcott_report(
    engine: &Engine,
    n: usize,
    d: usize,
    ladder: &[f64],
    pol: &Polarization,
    cfg: &NorthcottConfig,
) -> Result<Vec<LadderRow>> {
    ladder
        .iter()
        .map(|&m| {
            let e = enumerate_bounded(engine, n, d, m, pol, cfg)?;
            Ok(LadderRow {
                bound: m,
                count: e.points.len(),
                undecided: e.undecided.len(),
            })
        })
        .collect()
}

/// Distinct canonical points of an enumeration, certified and undecided.
pub fn point_set(e: &Enumeration) -> BTreeSet<Vec<MultiPoly>> {
    e.points
        .iter()
        .chain(&e.undecided)
        .map(|p| p.point.coords().to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_tuple;

    fn pts(list: &[&str]) -> BTreeSet<Vec<MultiPoly>> {
        list.iter()
            .map(|s| ProjPoint::new(parse_tuple(s, Some(1)).unwrap()).unwrap().coords().to_vec())
            .collect()
    }

    #[test]
    fn boxes() {
        let cfg = NorthcottConfig::default();
        let b = derive_box(1, 1, 0.4, &Polarization::fs(1), &cfg).unwrap();
        assert_eq!(b.degree_bounds, vec![1]);
        assert_eq!(b.coeff_bound, 2);
        assert!(derive_box(1, 1, -0.1, &Polarization::fs(1), &cfg).unwrap().is_empty());
        let b = derive_box(2, 2, 1.0, &Polarization::fs(2), &cfg).unwrap();
        assert_eq!(b.degree_bounds, vec![2, 2]);
        // C = (e * 2)^2 at e = (2, 2)
        assert_eq!(b.coeff_bound, (4.0 * 1f64.exp().powi(2) * (1.0 + 1e-6f64).exp()).floor() as u64);
        let deg = Polarization::degenerate(1, 1, &num_rational::BigRational::new(1.into(), 2.into())).unwrap();
        assert!(matches!(derive_box(1, 1, 1.0, &deg, &cfg), Err(Error::NotFairlyLarge { .. })));
    }

    #[test]
    fn coefficient_constant_is_sharp_on_monomials() {
        // X_0 X_1 in O(2): coefficient 1, mean log-norm -1
        assert!((coefficient_constant(&[2]) - 2.0 * 1f64.exp()).abs() < 1e-12);
        assert_eq!(coefficient_constant(&[]), 1.0);
    }

    #[test]
    fn small_enumerations() {
        let e = Engine::default();
        let cfg = NorthcottConfig::default();
        let fs = Polarization::fs(1);
        let r = enumerate_bounded(&e, 1, 1, 0.4, &fs, &cfg).unwrap();
        assert_eq!(point_set(&r), pts(&["(1, 0)", "(0, 1)", "(1, 1)", "(1, -1)"]));
        assert!(r.undecided.is_empty());
        let r = enumerate_bounded(&e, 1, 1, -0.1, &fs, &cfg).unwrap();
        assert!(r.points.is_empty() && r.undecided.is_empty());
        let r = enumerate_bounded(&e, 1, 1, 0.0, &fs, &cfg).unwrap();
        assert_eq!(point_set(&r), pts(&["(1, 0)", "(0, 1)"]));
        let r = enumerate_bounded(&e, 1, 1, 0.51, &fs, &cfg).unwrap();
        let set = point_set(&r);
        assert!(set.is_superset(&pts(&["(1, 0)", "(0, 1)", "(1, 1)", "(1, -1)", "(1, z1)", "(z1, 1)", "(1, -z1)", "(z1, -1)"])));
    }

    #[test]
    fn ladder_is_monotone_and_deterministic() {
        let e = Engine::default();
        let cfg = NorthcottConfig::default();
        let rows = northcott_report(&e, 1, 1, &[0.0, 0.4, 0.4, 0.51], &Polarization::fs(1), &cfg).unwrap();
        let counts: Vec<usize> = rows.iter().map(|r| r.count).collect();
        assert_eq!(&counts[..3], &[2, 4, 4]);
        assert!(counts[3] >= 8);
        assert!(northcott_report(&e, 1, 1, &[], &Polarization::fs(1), &cfg).unwrap().is_empty());
    }
}
