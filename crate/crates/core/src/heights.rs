//! Polarizations of `Q(z_1..z_d)` and heights of points.

use std::fmt;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arakelov::{Engine, IntersectionProblem, LinearForm, MetrizedBundle, RigorousValue};
use crate::error::{Error, Result};
use crate::polyring::ProjPoint;
use crate::symbolic::LogLinear;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolarizationName {
    /// `p_i^* O(1)_FS` in slot `i` (the same data as `B1`).
    Fs,
    /// `H = ⊗ p_l^* O(1)_FS` in every slot.
    B0,
    B1,
    /// `B1` with slot `j` replaced by `(O, λ_i |·|)`; 1-based indices.
    Bij { i: usize, j: usize },
    /// `B1` with slot `i` replaced by `p_i^*(O, (1/2)|·|)`.
    HalfTwist { i: usize },
    /// `B1` with slot `i` replaced by `(O, λ|·|)`.
    Degenerate { i: usize, lambda: String },
    Custom,
}

impl fmt::Display for PolarizationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolarizationName::Fs => write!(f, "fs"),
            PolarizationName::B0 => write!(f, "b0"),
            PolarizationName::B1 => write!(f, "b1"),
            PolarizationName::Bij { i, j } => write!(f, "bij:{i},{j}"),
            PolarizationName::HalfTwist { i } => write!(f, "halftwist:{i}"),
            PolarizationName::Degenerate { i, lambda } => write!(f, "degenerate:{i},{lambda}"),
            PolarizationName::Custom => write!(f, "custom"),
        }
    }
}

/// `d` nef metrized line bundles on `(P^1_Z)^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polarization {
    pub d: usize,
    pub bundles: Vec<MetrizedBundle>,
    pub name: PolarizationName,
}

/// `λ_i = exp(-deg(ĉ_1(M_i)^2) / deg(M_i))` for `M_i = O(1)_FS` on `P^1_Z`,
/// stored through the exact value of `-log λ_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaConstant {
    pub index: usize,
    pub value: f64,
    pub minus_log: LogLinear,
}

/// Recomputes `λ_i` from the engine.
pub fn lambda_constant(engine: &Engine, index: usize) -> Result<LambdaConstant> {
    let self_int = engine.form(&IntersectionProblem::full(
        1,
        vec![MetrizedBundle::fs(1, 0), MetrizedBundle::fs(1, 0)],
    ))?;
    if !self_int.is_exact() {
        return Err(Error::Invalid("self-intersection of O(1)_FS is not exact".into()));
    }
    // geometric degree of O(1) on P^1 is 1
    let minus_log = self_int.exact_part().clone();
    Ok(LambdaConstant {
        index,
        value: (-minus_log.to_f64()).exp(),
        minus_log,
    })
}

impl Polarization {
    pub fn new(d: usize, bundles: Vec<MetrizedBundle>, name: PolarizationName) -> Result<Self> {
        if bundles.len() != d {
            return Err(Error::Invalid(format!("{} slots for d = {d}", bundles.len())));
        }
        for (k, b) in bundles.iter().enumerate() {
            if b.num_vars() != d || b.section_part.is_some() {
                return Err(Error::Invalid(format!("slot {} is not a bundle on the base", k + 1)));
            }
            if !b.is_nef() {
                return Err(Error::Invalid(format!("slot {} is not nef", k + 1)));
            }
        }
        Ok(Polarization { d, bundles, name })
    }

    pub fn fs(d: usize) -> Self {
        Polarization {
            d,
            bundles: (0..d).map(|i| MetrizedBundle::fs(d, i)).collect(),
            name: PolarizationName::Fs,
        }
    }

    pub fn b1(d: usize) -> Self {
        Polarization {
            name: PolarizationName::B1,
            ..Self::fs(d)
        }
    }

    pub fn b0(d: usize) -> Self {
        let h = MetrizedBundle::fs_multi(vec![BigRational::one(); d]);
        Polarization {
            d,
            bundles: vec![h; d],
            name: PolarizationName::B0,
        }
    }

    fn check_index(d: usize, i: usize) -> Result<()> {
        if i == 0 || i > d {
            return Err(Error::VarIndex {
                index: i,
                num_vars: d,
            });
        }
        Ok(())
    }

    /// `B_{i,j}` with `λ_i` recomputed by `engine` (1-based, `i != j`).
    pub fn bij(d: usize, i: usize, j: usize, engine: &Engine) -> Result<Self> {
        Self::check_index(d, i)?;
        Self::check_index(d, j)?;
        if i == j {
            return Err(Error::Invalid("B_{i,j} needs i != j".into()));
        }
        let lambda = lambda_constant(engine, i)?;
        let mut p = Self::b1(d);
        p.bundles[j - 1] = MetrizedBundle::constant(d, lambda.minus_log);
        p.name = PolarizationName::Bij { i, j };
        Ok(p)
    }

    /// The polarization with slot `i` replaced by `p_i^*(O, (1/2)|·|)` (1-based).
    pub fn half_twist(d: usize, i: usize) -> Result<Self> {
        Self::check_index(d, i)?;
        let mut p = Self::b1(d);
        p.bundles[i - 1] = MetrizedBundle::twist(d, &BigRational::new(1.into(), 2.into()))?;
        p.name = PolarizationName::HalfTwist { i };
        Ok(p)
    }

    /// Slot `i` replaced by the pure twist `(O, λ|·|)` with `0 < λ <= 1`.
    pub fn degenerate(d: usize, i: usize, lambda: &BigRational) -> Result<Self> {
        Self::check_index(d, i)?;
        if !lambda.is_positive() || *lambda > BigRational::one() {
            return Err(Error::Invalid(format!("λ = {lambda} must lie in (0, 1]")));
        }
        let mut p = Self::b1(d);
        p.bundles[i - 1] = MetrizedBundle::twist(d, lambda)?;
        p.name = PolarizationName::Degenerate {
            i,
            lambda: lambda.to_string(),
        };
        Ok(p)
    }

    /// Parses `fs | b0 | b1 | bij:i,j | halftwist:i | degenerate:i,λ`.
    pub fn preset(spec: &str, d: usize, engine: &Engine) -> Result<Self> {
        let bad = || Error::Invalid(format!("unknown polarization `{spec}`"));
        let (head, args) = spec.split_once(':').unwrap_or((spec, ""));
        let ints = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        match head.trim() {
            "fs" => Ok(Self::fs(d)),
            "b0" => Ok(Self::b0(d)),
            "b1" => Ok(Self::b1(d)),
            "bij" => match ints(args)?.as_slice() {
                [i, j] => Self::bij(d, *i, *j, engine),
                _ => Err(bad()),
            },
            "halftwist" => match ints(args)?.as_slice() {
                [i] => Self::half_twist(d, *i),
                _ => Err(bad()),
            },
            "degenerate" => {
                let (i, l) = args.split_once(',').ok_or_else(bad)?;
                let i: usize = i.trim().parse().map_err(|_| bad())?;
                Self::degenerate(d, i, &parse_rational(l.trim())?)
            }
            _ => Err(bad()),
        }
    }
}

/// Parses `p/q` or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Invalid(format!("`{s}` is not a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: num_bigint::BigInt = digits.parse().map_err(|_| bad())?;
    let d = num_traits::pow(num_bigint::BigInt::from(10), frac.len());
    Ok(BigRational::new(n, d))
}

/// The intersection problem whose degree is `h^B(P)`.
pub fn height_problem(p: &ProjPoint, pol: &Polarization) -> Result<IntersectionProblem> {
    if p.num_vars() != pol.d {
        return Err(Error::VarMismatch {
            expected: pol.d,
            found: p.num_vars(),
        });
    }
    let mut classes = vec![MetrizedBundle::pullback(p)];
    classes.extend(pol.bundles.iter().cloned());
    Ok(IntersectionProblem::full(pol.d, classes))
}

/// Exact linear form of `h^B(P)`.
pub fn height_form(engine: &Engine, p: &ProjPoint, pol: &Polarization) -> Result<LinearForm> {
    engine.form(&height_problem(p, pol)?)
}

pub fn height_point_with(
    engine: &Engine,
    p: &ProjPoint,
    pol: &Polarization,
    tol: f64,
) -> Result<RigorousValue> {
    height_form(engine, p, pol)?.evaluate(engine.quadrature(), tol)
}

/// `h^B(P)` with the default engine.
pub fn height_point(p: &ProjPoint, pol: &Polarization, tol: f64) -> Result<RigorousValue> {
    height_point_with(&Engine::default(), p, pol, tol)
}

/// Both sides of `h^{B0} = d! h^{B1} + (d!/2) sum_{i != j} h^{B_{i,j}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub d: usize,
    pub lhs: RigorousValue,
    pub rhs: RigorousValue,
    /// `lhs - rhs` evaluated from the difference of the exact forms.
    pub residual: RigorousValue,
}

impl IdentityReport {
    /// `|lhs - rhs|` from the separately evaluated sides.
    pub fn numeric_gap(&self) -> f64 {
        (self.lhs.numeric - self.rhs.numeric).abs()
    }

    pub fn combined_bound(&self) -> f64 {
        self.lhs.error_bound + self.rhs.error_bound
    }
}

pub fn compare_identity(engine: &Engine, p: &ProjPoint, tol: f64) -> Result<IdentityReport> {
    let d = p.num_vars();
    if d < 2 {
        return Err(Error::Invalid("the comparison identity needs d >= 2".into()));
    }
    let fact: u64 = (1..=d as u64).product();
    let lhs = height_form(engine, p, &Polarization::b0(d))?;
    let mut rhs = height_form(engine, p, &Polarization::b1(d))?
        .scale(&BigRational::from_integer(fact.into()));
    let half_fact = BigRational::new(fact.into(), 2.into());
    for i in 1..=d {
        for j in 1..=d {
            if i != j {
                let h = height_form(engine, p, &Polarization::bij(d, i, j, engine)?)?;
                rhs.add_scaled(&h, &half_fact);
            }
        }
    }
    let residual = (lhs.clone() - rhs.clone()).evaluate(engine.quadrature(), tol)?;
    Ok(IdentityReport {
        d,
        lhs: lhs.evaluate(engine.quadrature(), tol)?,
        rhs: rhs.evaluate(engine.quadrature(), tol)?,
        residual,
    })
}

/// Monomial section `prod_l X_{l,0}^{a_l} X_{l,1}^{b_l}` of a bundle on the base.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialWitness {
    /// `(a_l, b_l)` per factor.
    pub exponents: Vec<(u32, u32)>,
    /// Supremum of the Fubini–Study norm of the monomial.
    pub fs_sup: f64,
    /// `e^{-c}`: the constant part of the metric.
    pub metric_scale: f64,
}

impl MonomialWitness {
    pub fn sup_norm(&self) -> f64 {
        self.fs_sup * self.metric_scale
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlotCertificate {
    /// 1-based slot and factor.
    pub slot: usize,
    pub factor: usize,
    /// `a` with `H_slot^{⊗a} ≿ p_factor^* O(1)_FS`.
    pub exponent: BigRational,
    pub witness: MonomialWitness,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FairlyLargeCertificate {
    pub slots: Vec<SlotCertificate>,
}

/// `sup_z |z|^b / (1 + |z|^2)^{(a+b)/2} = sqrt(a^a b^b / (a+b)^(a+b))`.
pub fn monomial_fs_sup(a: u32, b: u32) -> f64 {
    let k = a + b;
    if k == 0 {
        return 1.0;
    }
    let xlx = |x: u32| if x == 0 { 0.0 } else { x as f64 * (x as f64).ln() };
    (0.5 * (xlx(a) + xlx(b) - xlx(k))).exp()
}

/// Best monomial witness for `q`-effectivity of `O(k)_FS ⊗ (O, e^{-c}|·|)` on
/// `P^1`: a section of norm at most 1 exists iff the returned witness has
/// `sup_norm() <= 1`.
pub fn q_effective_witness(k: u32, c: &LogLinear) -> MonomialWitness {
    let b = k / 2;
    MonomialWitness {
        exponents: vec![(k - b, b)],
        fs_sup: monomial_fs_sup(k - b, b),
        metric_scale: (-c.to_f64()).exp(),
    }
}

/// Finds an assignment of slots to factors with positive Fubini–Study
/// exponents and a norm-one monomial witness for each.
pub fn certify_fairly_large(pol: &Polarization) -> Result<FairlyLargeCertificate> {
    let d = pol.d;
    for (k, b) in pol.bundles.iter().enumerate() {
        if !b.is_nef() {
            return Err(Error::NotFairlyLarge {
                slot: k + 1,
                reason: "slot is not nef".into(),
            });
        }
        if b.fs_part.iter().all(|q| q.is_zero()) {
            return Err(Error::NotFairlyLarge {
                slot: k + 1,
                reason: "slot is a pure constant twist (zero geometric degree)".into(),
            });
        }
    }
    let assignment = match_slots(pol).ok_or_else(|| Error::NotFairlyLarge {
        slot: 1,
        reason: "no assignment of slots to distinct factors with positive exponents".into(),
    })?;
    let slots = assignment
        .into_iter()
        .enumerate()
        .map(|(k, j)| {
            let b = &pol.bundles[k];
            let a = BigRational::one() / &b.fs_part[j];
            let exponents = (0..d)
                .map(|l| {
                    if l == j {
                        (0, 0)
                    } else {
                        // X_0^{q_l a}, rounded up to an integral power below
                        let e = (&b.fs_part[l] * &a).ceil().to_integer();
                        (e.to_u32().unwrap_or(u32::MAX), 0)
                    }
                })
                .collect();
            SlotCertificate {
                slot: k + 1,
                factor: j + 1,
                witness: MonomialWitness {
                    exponents,
                    fs_sup: 1.0,
                    metric_scale: (-(b.const_part.to_f64() * a.to_f64().unwrap_or(0.0))).exp(),
                },
                exponent: a,
            }
        })
        .collect();
    Ok(FairlyLargeCertificate { slots })
}

fn match_slots(pol: &Polarization) -> Option<Vec<usize>> {
    fn go(k: usize, pol: &Polarization, used: &mut Vec<bool>, out: &mut Vec<usize>) -> bool {
        if k == pol.d {
            return true;
        }
        for j in 0..pol.d {
            if !used[j] && pol.bundles[k].fs_part[j].is_positive() {
                used[j] = true;
                out.push(j);
                if go(k + 1, pol, used, out) {
                    return true;
                }
                out.pop();
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; pol.d];
    let mut out = Vec::new();
    go(0, pol, &mut used, &mut out).then_some(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub det: f64,
    pub det_prime: f64,
    pub monotone: bool,
}

fn check_psd(m: &DMatrix<f64>, what: &str) -> Result<()> {
    let scale = m.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    if (m - m.transpose()).amax() > 1e-12 * scale {
        return Err(Error::NotPsd(format!("{what} is not symmetric")));
    }
    let min = m.clone().symmetric_eigenvalues().min();
    if min < -1e-10 * scale {
        return Err(Error::NotPsd(format!("{what} has eigenvalue {min:.3e}")));
    }
    Ok(())
}

/// For Gram matrices of two inner products with `<x,x> <= <x,x>'`,
/// `det G <= det G'`.
pub fn gram_det_monotone(g: &DMatrix<f64>, g_prime: &DMatrix<f64>) -> Result<GramReport> {
    if !g.is_square() || g.shape() != g_prime.shape() {
        return Err(Error::Invalid("Gram matrices must be square of equal size".into()));
    }
    check_psd(g, "G")?;
    check_psd(g_prime, "G'")?;
    check_psd(&(g_prime - g), "G' - G")?;
    let det = g.determinant();
    let det_prime = g_prime.determinant();
    let slack = 1e-12 * det_prime.abs().max(1.0);
    Ok(GramReport {
        det,
        det_prime,
        monotone: det <= det_prime + slack,
    })
}

/// Empirical constants with `a h' - c1 <= h <= b h' + c2` over a sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonFit {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    /// `(h under A, h under B)` per sample point.
    pub heights: Vec<(f64, f64)>,
    pub note: String,
}

/// Fits the comparison constants between two polarizations on a sample.
/// Slopes come from height ratios on the upper half of the sample (by `h'`),
/// intercepts are then the smallest that make every inequality hold.
pub fn fit_comparison(
    engine: &Engine,
    points: &[ProjPoint],
    pol_a: &Polarization,
    pol_b: &Polarization,
    tol: f64,
) -> Result<ComparisonFit> {
    certify_fairly_large(pol_b)?;
    let heights: Vec<(f64, f64)> = points
        .par_iter()
        .map(|p| {
            let h = height_point_with(engine, p, pol_a, tol)?.numeric;
            let hp = height_point_with(engine, p, pol_b, tol)?.numeric;
            Ok((h, hp))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hp: Vec<f64> = heights.iter().map(|x| x.1).collect();
    hp.sort_by(|a, b| a.total_cmp(b));
    let median = hp.get(hp.len() / 2).copied().unwrap_or(0.0);
    let ratios: Vec<f64> = heights
        .iter()
        .filter(|(_, y)| *y >= median && *y > 1e-9)
        .map(|(x, y)| x / y)
        .collect();
    let a = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let b = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (a, b) = if ratios.is_empty() { (0.0, 0.0) } else { (a, b) };
    let c1 = heights
        .iter()
        .map(|(x, y)| a * y - x)
        .fold(0.0f64, f64::max);
    let c2 = heights
        .iter()
        .map(|(x, y)| x - b * y)
        .fold(0.0f64, f64::max);
    Ok(ComparisonFit {
        a,
        b,
        c1,
        c2,
        heights,
        note: "empirical fit over the sample, not a proof".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_tuple;

    fn point(s: &str, m: usize) -> ProjPoint {
        ProjPoint::new(parse_tuple(s, Some(m)).unwrap()).unwrap()
    }

    #[test]
    fn fs_heights() {
        let fs = Polarization::fs(1);
        let v = height_point(&point("(1, 0)", 1), &fs, 1e-8).unwrap();
        assert!(v.is_symbolic_zero());
        let v = height_point(&point("(1, 2)", 1), &fs, 1e-8).unwrap();
        assert!((v.numeric - 0.5 * 5f64.ln()).abs() < 1e-15);
        let v = height_point(&point("(1, z1)", 1), &fs, 1e-8).unwrap();
        assert_eq!(v.symbolic, Some(LogLinear::from_ratio(1, 2)));
    }

    #[test]
    fn half_twist_polarization_is_degree_times_log2() {
        let p = point("(z1^3*z2 + 1, z2^2 - z1, 7)", 2);
        for i in 1..=2 {
            let v = height_point(&p, &Polarization::half_twist(2, i).unwrap(), 1e-6).unwrap();
            let e = p.multidegree()[i - 1] as i64;
            assert_eq!(
                v.symbolic,
                Some(LogLinear::log_scaled(&2.into(), BigRational::from_integer(e.into())))
            );
        }
    }

    #[test]
    fn lambda_is_recomputed() {
        let l = lambda_constant(&Engine::default(), 1).unwrap();
        assert_eq!(l.minus_log, LogLinear::from_ratio(1, 2));
        assert!((l.value - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn identity_small_cases() {
        let e = Engine::default();
        for s in ["(1, 2)", "(1, 0)", "(1, z1*z2 + 1)"] {
            let r = compare_identity(&e, &point(s, 2), 1e-5).unwrap();
            assert!(r.residual.is_symbolic_zero(), "{s}: {:?}", r.residual);
            assert!(r.numeric_gap() <= 1e-4f64.max(r.combined_bound()));
        }
    }

    #[test]
    fn presets() {
        let e = Engine::default();
        assert_eq!(Polarization::preset("bij:1,2", 2, &e).unwrap().name, PolarizationName::Bij { i: 1, j: 2 });
        assert!(Polarization::preset("bij:1,1", 2, &e).is_err());
        let p = Polarization::preset("degenerate:1,1/4", 1, &e).unwrap();
        assert_eq!(p.bundles[0].const_part, LogLinear::log(&4.into()));
        assert!(Polarization::preset("nope", 1, &e).is_err());
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn certificates() {
        let c = certify_fairly_large(&Polarization::fs(2)).unwrap();
        assert_eq!(c.slots.len(), 2);
        assert!(c.slots.iter().all(|s| s.exponent.is_one() && s.witness.sup_norm() <= 1.0));
        let deg = Polarization::degenerate(1, 1, &BigRational::new(1.into(), 2.into())).unwrap();
        assert!(matches!(
            certify_fairly_large(&deg),
            Err(Error::NotFairlyLarge { slot: 1, .. })
        ));
        let not_nef = Polarization {
            d: 1,
            bundles: vec![MetrizedBundle::fs_multi(vec![BigRational::from_integer(2.into())])
                .tensor(&MetrizedBundle::twist(1, &BigRational::from_integer(2.into())).unwrap())
                .unwrap()],
            name: PolarizationName::Custom,
        };
        assert!(certify_fairly_large(&not_nef).is_err());
        let w = q_effective_witness(2, &not_nef.bundles[0].const_part);
        assert!((w.fs_sup - 0.5).abs() < 1e-15);
        assert!((w.sup_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gram() {
        let g = DMatrix::<f64>::identity(2, 2);
        let r = gram_det_monotone(&g, &(&g * 2.0)).unwrap();
        assert!(r.monotone && (r.det - 1.0).abs() < 1e-15 && (r.det_prime - 4.0).abs() < 1e-14);
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(gram_det_monotone(&bad, &g), Err(Error::NotPsd(_))));
        assert!(gram_det_monotone(&(&g * 2.0), &g).is_err());
    }

    #[test]
    fn fit_of_equal_polarizations() {
        let e = Engine::default();
        let pts = vec![point("(1, z1)", 1), point("(1, 3)", 1), point("(z1^2 + 2, 1)", 1)];
        let fit = fit_comparison(&e, &pts, &Polarization::fs(1), &Polarization::fs(1), 1e-8).unwrap();
        assert!((fit.a - 1.0).abs() < 1e-12 && (fit.b - 1.0).abs() < 1e-12);
        assert!(fit.c1 < 1e-12 && fit.c2 < 1e-12);
    }
}
