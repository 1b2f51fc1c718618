//! Zero-dimensional cycles of `P^n_K`, their Chow forms and heights.
//!
//! A cycle is a positive combination of `K`-rational points and, on `P^1`,
//! conjugate blocks given by a binary form `g(X_0, X_1)` over `Z[z_1..z_d]`
//! whose roots are the points of the block. Chow forms live in
//! `Z[z_1..z_d][u_0..u_n]`: the form of a point `P` is `Σ u_j P_j` and the
//! form of a block is `g(u_1, -u_0)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arakelov::{Engine, IntersectionProblem, LinearForm, MetrizedBundle, RigorousValue, SectionClass};
use crate::error::{Error, Result};
use crate::fsquad::{Integrand, Quadrature};
use crate::heights::{height_form, Polarization};
use crate::northcott::coefficient_constant;
use crate::polyring::{gcd_many, normalize, parse_binary_form, MultiPoly, ProjPoint};

/// A binary form `g(X_0, X_1)` over `Z[z_1..z_d]`, stored with `d + 2`
/// variables: `z_1..z_d`, then `X_0, X_1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryForm {
    pub d: usize,
    pub poly: MultiPoly,
}

impl BinaryForm {
    /// Parses a form such as `X1^2 - 2*X0^2` or `X1 - z1*X0` and checks that
    /// it is homogeneous, primitive and square-free. The sign is normalized.
    pub fn parse(s: &str, d: Option<usize>) -> Result<Self> {
        let (poly, d) = parse_binary_form(s, d)?;
        Self::new(d, poly)
    }

    pub fn new(d: usize, poly: MultiPoly) -> Result<Self> {
        if poly.num_vars() != d + 2 {
            return Err(Error::VarMismatch {
                expected: d + 2,
                found: poly.num_vars(),
            });
        }
        let k = poly
            .terms()
            .map(|(m, _)| m.0[d] + m.0[d + 1])
            .max()
            .ok_or(Error::AllZero)?;
        if poly.terms().any(|(m, _)| m.0[d] + m.0[d + 1] != k) {
            return Err(Error::Invalid("binary form is not homogeneous in X0, X1".into()));
        }
        if k == 0 {
            return Err(Error::Invalid("binary form has degree 0".into()));
        }
        let f = BinaryForm { d, poly };
        let coeffs = f.coefficients();
        let content = gcd_many(d, coeffs.iter().filter(|c| !c.is_zero()));
        if !content.is_constant() || content.constant_value().is_some_and(|c| c.abs() != BigInt::one()) {
            return Err(Error::Invalid(format!("binary form is not primitive: content {content}")));
        }
        if k > 1 {
            let g = gcd_many(
                d + 2,
                [&f.poly, &f.poly.derivative(d), &f.poly.derivative(d + 1)],
            );
            if g.depends_on(d) || g.depends_on(d + 1) {
                return Err(Error::NotSquareFree(format!("{f} has the repeated factor {g}")));
            }
        }
        let sign_negative = f.poly.leading_coefficient().is_some_and(|c| c.is_negative());
        Ok(if sign_negative {
            BinaryForm { d, poly: -f.poly }
        } else {
            f
        })
    }

    pub fn degree(&self) -> u32 {
        self.poly
            .terms()
            .next()
            .map(|(m, _)| m.0[self.d] + m.0[self.d + 1])
            .unwrap_or(0)
    }

    /// Coefficient of `X_0^{k-t} X_1^t` for `t = 0..=k`, as polynomials in `z`.
    pub fn coefficients(&self) -> Vec<MultiPoly> {
        let k = self.degree();
        let mut out = vec![MultiPoly::zero(self.d); k as usize + 1];
        for (m, c) in self.poly.terms() {
            let t = m.0[self.d + 1] as usize;
            let e = m.0[..self.d].to_vec();
            out[t] = &out[t] + &MultiPoly::monomial(self.d, e, c.clone());
        }
        out
    }

    /// `g(1, x)` in the variables `z_1..z_d, x`.
    pub fn affine(&self) -> MultiPoly {
        let terms = self.poly.terms().map(|(m, c)| {
            let mut e = m.0[..self.d].to_vec();
            e.push(m.0[self.d + 1]);
            (e, c.clone())
        });
        MultiPoly::from_terms(self.d + 1, terms)
    }

    /// The root `(b : -a)` of a linear form `a X_0 + b X_1`.
    fn as_point(&self) -> Option<ProjPoint> {
        if self.degree() != 1 {
            return None;
        }
        let c = self.coefficients();
        ProjPoint::new(vec![c[1].clone(), -c[0].clone()]).ok()
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d;
        let names = move |i: usize| {
            if i < d {
                format!("z{}", i + 1)
            } else {
                format!("X{}", i - d)
            }
        };
        write!(f, "{}", self.poly.display_with(&names))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointSpec {
    Point { point: ProjPoint },
    /// The conjugate roots of an irreducible form on `P^1`.
    Block { form: BinaryForm },
}

impl PointSpec {
    pub fn degree(&self) -> u32 {
        match self {
            PointSpec::Point { .. } => 1,
            PointSpec::Block { form } => form.degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCycle {
    pub n: usize,
    pub d: usize,
    /// `(multiplicity, component)`, merged and sorted.
    pub components: Vec<(u32, PointSpec)>,
}

impl ZeroCycle {
    /// Builds the canonical cycle: linear blocks become points, repeated
    /// components are merged.
    pub fn new(n: usize, d: usize, components: Vec<(u32, PointSpec)>) -> Result<Self> {
        let mut merged: BTreeMap<PointSpec, u32> = BTreeMap::new();
        for (mult, spec) in components {
            if mult == 0 {
                return Err(Error::Invalid("multiplicities must be positive".into()));
            }
            let spec = match spec {
                PointSpec::Point { point } => {
                    if point.dim_n() != n || point.num_vars() != d {
                        return Err(Error::Invalid(format!("point {point} is not in P^{n} over {d} variables")));
                    }
                    PointSpec::Point { point }
                }
                PointSpec::Block { form } => {
                    if n != 1 {
                        return Err(Error::Invalid("conjugate blocks are only supported on P^1".into()));
                    }
                    if form.d != d {
                        return Err(Error::VarMismatch { expected: d, found: form.d });
                    }
                    match form.as_point() {
                        Some(point) => PointSpec::Point { point },
                        None => PointSpec::Block { form },
                    }
                }
            };
            *merged.entry(spec).or_insert(0) += mult;
        }
        if merged.is_empty() {
            return Err(Error::Invalid("empty cycle".into()));
        }
        Ok(ZeroCycle {
            n,
            d,
            components: merged.into_iter().map(|(s, m)| (m, s)).collect(),
        })
    }

    pub fn point(p: ProjPoint) -> Result<Self> {
        Self::new(p.dim_n(), p.num_vars(), vec![(1, PointSpec::Point { point: p })])
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(|(m, s)| m * s.degree()).sum()
    }

    pub fn add(&self, other: &ZeroCycle) -> Result<ZeroCycle> {
        if self.n != other.n || self.d != other.d {
            return Err(Error::Invalid("cycles live in different spaces".into()));
        }
        let mut c = self.components.clone();
        c.extend(other.components.iter().cloned());
        Self::new(self.n, self.d, c)
    }
}

/// A form in `u_0..u_n` with coefficients in `Z[z_1..z_d]`, stored with
/// `d + n + 1` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowForm {
    pub n: usize,
    pub d: usize,
    pub degree: u32,
    pub poly: MultiPoly,
}

fn u_monomials(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![k]];
    }
    (0..=k)
        .rev()
        .flat_map(|a| {
            u_monomials(n - 1, k - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

impl ChowForm {
    /// The Chow coordinates `a_λ`, ordered by `u`-exponent vectors
    /// lexicographically descending.
    pub fn coordinates(&self) -> Vec<MultiPoly> {
        let mut by_u: BTreeMap<Vec<u32>, Vec<(Vec<u32>, BigInt)>> = BTreeMap::new();
        for (m, c) in self.poly.terms() {
            by_u.entry(m.0[self.d..].to_vec())
                .or_default()
                .push((m.0[..self.d].to_vec(), c.clone()));
        }
        u_monomials(self.n, self.degree)
            .into_iter()
            .map(|lam| MultiPoly::from_terms(self.d, by_u.remove(&lam).unwrap_or_default()))
            .collect()
    }

    /// The Chow point `(a_λ)` in its projective space.
    pub fn chow_point(&self) -> Result<ProjPoint> {
        ProjPoint::new(self.coordinates())
    }

    fn canonical(n: usize, d: usize, degree: u32, poly: MultiPoly) -> Result<Self> {
        let raw = ChowForm { n, d, degree, poly };
        let coords = raw.coordinates();
        let point = normalize(&coords)?.point;
        let terms = u_monomials(n, degree)
            .into_iter()
            .zip(point.coords())
            .flat_map(|(lam, a)| {
                a.terms()
                    .map(|(m, c)| {
                        let mut e = m.0.clone();
                        e.extend(&lam);
                        (e, c.clone())
                    })
                    .collect::<Vec<_>>()
            });
        Ok(ChowForm {
            n,
            d,
            degree,
            poly: MultiPoly::from_terms(d + n + 1, terms),
        })
    }

    /// Product of forms, canonicalized.
    pub fn mul(&self, other: &ChowForm) -> Result<ChowForm> {
        Self::canonical(self.n, self.d, self.degree + other.degree, &self.poly * &other.poly)
    }
}

impl fmt::Display for ChowForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d;
        let names = move |i: usize| {
            if i < d {
                format!("z{}", i + 1)
            } else {
                format!("u{}", i - d)
            }
        };
        write!(f, "{}", self.poly.display_with(&names))
    }
}

fn component_form(n: usize, d: usize, spec: &PointSpec) -> MultiPoly {
    let nv = d + n + 1;
    match spec {
        PointSpec::Point { point } => {
            let map: Vec<usize> = (0..d).collect();
            point
                .coords()
                .iter()
                .enumerate()
                .fold(MultiPoly::zero(nv), |acc, (j, f)| {
                    &acc + &(&f.remap_vars(nv, &map) * &MultiPoly::var(nv, d + j))
                })
        }
        PointSpec::Block { form } => {
            // g(u_1, -u_0)
            let terms = form.poly.terms().map(|(m, c)| {
                let mut e = m.0[..d].to_vec();
                let (a, b) = (m.0[d], m.0[d + 1]);
                e.push(b);
                e.push(a);
                let c = if b % 2 == 1 { -c.clone() } else { c.clone() };
                (e, c)
            });
            MultiPoly::from_terms(nv, terms)
        }
    }
}

pub fn chow_form(z: &ZeroCycle) -> Result<ChowForm> {
    let nv = z.d + z.n + 1;
    let mut poly = MultiPoly::one(nv);
    for (mult, spec) in &z.components {
        poly = &poly * &component_form(z.n, z.d, spec).pow(*mult);
    }
    ChowForm::canonical(z.n, z.d, z.degree(), poly)
}

/// Linear form of the arithmetic degree of `O(1)_FS` against `pol` on the
/// closure of one block: the section `g` of `O(k, e)` over `P^1 × (P^1)^d`,
/// metrized so that `‖g‖ = 1`, has divisor the closure and no Green term.
fn block_form(engine: &Engine, form: &BinaryForm, pol: &Polarization) -> Result<LinearForm> {
    let d = form.d;
    let affine = form.affine();
    let mut degree: Vec<u32> = (0..d)
        .map(|v| affine.degree_in(v).finite().unwrap_or(0))
        .collect();
    degree.push(form.degree());
    let mut section = MetrizedBundle::trivial(d + 1);
    section.section_part = Some(SectionClass {
        coords: vec![affine],
        degree,
    });
    let mut classes = vec![section, MetrizedBundle::fs(d + 1, d)];
    for b in &pol.bundles {
        let mut fs_part = b.fs_part.clone();
        fs_part.push(BigRational::zero());
        classes.push(MetrizedBundle {
            fs_part,
            const_part: b.const_part.clone(),
            section_part: None,
        });
    }
    engine.form(&IntersectionProblem::full(d + 1, classes))
}

/// `(Σ mult · deg(component)) / deg(Z)`, the arithmetic degree of each
/// component being summed over its conjugate points.
pub fn cycle_height_form(engine: &Engine, z: &ZeroCycle, pol: &Polarization) -> Result<LinearForm> {
    if pol.d != z.d {
        return Err(Error::VarMismatch {
            expected: z.d,
            found: pol.d,
        });
    }
    let mut total = LinearForm::zero();
    for (mult, spec) in &z.components {
        let f = match spec {
            PointSpec::Point { point } => height_form(engine, point, pol)?,
            PointSpec::Block { form } => block_form(engine, form, pol)?,
        };
        total.add_scaled(&f, &BigRational::from_integer((*mult).into()));
    }
    Ok(total.scale(&BigRational::new(1.into(), z.degree().into())))
}

pub fn cycle_height_dim0(engine: &Engine, z: &ZeroCycle, pol: &Polarization, tol: f64) -> Result<RigorousValue> {
    cycle_height_form(engine, z, pol)?.evaluate(engine.quadrature(), tol)
}

/// Height of the Chow point of `Z`.
pub fn chow_height(engine: &Engine, z: &ZeroCycle, pol: &Polarization, tol: f64) -> Result<RigorousValue> {
    let p = chow_form(z)?.chow_point()?;
    height_form(engine, &p, pol)?.evaluate(engine.quadrature(), tol)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub cycles: usize,
    pub distinct_cycles: usize,
    pub distinct_forms: usize,
    /// Index pairs of distinct cycles with equal forms.
    pub collisions: Vec<(usize, usize)>,
}

impl InjectivityReport {
    pub fn injective(&self) -> bool {
        self.collisions.is_empty()
    }
}

pub fn chow_injectivity_check(sample: &[ZeroCycle]) -> Result<InjectivityReport> {
    let forms: Vec<ChowForm> = sample.par_iter().map(chow_form).collect::<Result<_>>()?;
    let mut by_form: BTreeMap<&MultiPoly, usize> = BTreeMap::new();
    let mut seen_cycles: Vec<&ZeroCycle> = Vec::new();
    let mut collisions = Vec::new();
    for (i, (z, f)) in sample.iter().zip(&forms).enumerate() {
        if !seen_cycles.contains(&z) {
            seen_cycles.push(z);
        }
        match by_form.get(&f.poly) {
            Some(&j) if sample[j] != *z => collisions.push((j, i)),
            Some(_) => {}
            None => {
                by_form.insert(&f.poly, i);
            }
        }
    }
    Ok(InjectivityReport {
        cycles: sample.len(),
        distinct_cycles: seen_cycles.len(),
        distinct_forms: by_form.len(),
        collisions,
    })
}

/// The gap `chow_height / deg - cycle_height` over a family, with the
/// constant fitted on the first half and checked on the second.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundednessReport {
    pub gaps: Vec<f64>,
    pub fitted: f64,
    pub validation: f64,
    /// `|validation - fitted| / fitted`.
    pub deviation: f64,
}

pub fn chow_boundedness(
    engine: &Engine,
    family: &[ZeroCycle],
    pol: &Polarization,
    tol: f64,
) -> Result<BoundednessReport> {
    if family.len() < 2 {
        return Err(Error::Invalid("need at least two cycles".into()));
    }
    let gaps: Vec<f64> = family
        .par_iter()
        .map(|z| {
            let c = chow_height(engine, z, pol, tol)?.numeric / z.degree() as f64;
            let h = cycle_height_dim0(engine, z, pol, tol)?.numeric;
            Ok((c - h).abs())
        })
        .collect::<Result<_>>()?;
    let half = gaps.len() / 2;
    let max = |s: &[f64]| s.iter().copied().fold(0.0f64, f64::max);
    let fitted = max(&gaps[..half]);
    let validation = max(&gaps[half..]);
    let deviation = if fitted > 0.0 {
        (validation - fitted).abs() / fitted
    } else if validation > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(BoundednessReport {
        gaps,
        fitted,
        validation,
        deviation,
    })
}

/// Which mean the coefficient inequality is checked against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanVariant {
    /// `exp(∫ log‖s‖)`.
    #[default]
    Log,
    /// `∫ ‖s‖`.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupnormReport {
    pub degrees: Vec<u32>,
    /// Largest absolute coefficient `|s|`.
    pub coeff_max: f64,
    pub mean: f64,
    pub mean_error: f64,
    pub variant: MeanVariant,
    /// `C = exp(Σ d_i / 2) · Π_i max_t 1 / sup‖X_0^{d_i-t} X_1^t‖`.
    pub constant: f64,
    pub sup_norm: f64,
    pub holds: bool,
}

/// Value of the bihomogenization of `s` at unit representatives
/// `x_i = (cos(φ_i/2), sin(φ_i/2) e^{iθ_i})`.
fn unit_value(s: &MultiPoly, degrees: &[u32], angles: &[(f64, f64)]) -> f64 {
    let mut v = Complex64::new(0.0, 0.0);
    for (m, c) in s.terms() {
        let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        for (i, &(phi, theta)) in angles.iter().enumerate() {
            let (x0, r1) = ((0.5 * phi).cos(), (0.5 * phi).sin());
            let k = m.0[i] as i32;
            t *= Complex64::from_polar(r1.powi(k), theta * k as f64) * x0.powi(degrees[i] as i32 - k);
        }
        v += t;
    }
    v.norm()
}

/// `sup ‖s‖_FS` for `s` a section of `O(degrees)`, by a grid scan followed by
/// compass search from the best grid points.
pub fn fs_sup_norm(s: &MultiPoly, degrees: &[u32]) -> f64 {
    let r = degrees.len();
    if r == 0 {
        return s.constant_value().and_then(|c| c.abs().to_f64()).unwrap_or(0.0);
    }
    let (n_phi, n_theta) = if r == 1 { (65, 128) } else { (17, 32) };
    let factor: Vec<(f64, f64)> = (0..n_phi)
        .flat_map(|a| {
            (0..n_theta).map(move |b| {
                (
                    std::f64::consts::PI * a as f64 / (n_phi - 1) as f64,
                    std::f64::consts::TAU * b as f64 / n_theta as f64,
                )
            })
        })
        .collect();
    let mut grid: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    let total = factor.len().pow(r as u32);
    for mut idx in 0..total {
        let angles: Vec<(f64, f64)> = (0..r)
            .map(|_| {
                let a = factor[idx % factor.len()];
                idx /= factor.len();
                a
            })
            .collect();
        grid.push((unit_value(s, degrees, &angles), angles));
    }
    grid.sort_by(|a, b| b.0.total_cmp(&a.0));
    grid.truncate(8);
    grid.into_par_iter()
        .map(|(mut best, mut x)| {
            let mut step = 0.2;
            while step > 1e-13 {
                let mut improved = false;
                for i in 0..r {
                    for (dphi, dtheta) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                        let mut y = x.clone();
                        y[i].0 = (y[i].0 + dphi).clamp(0.0, std::f64::consts::PI);
                        y[i].1 += dtheta;
                        let v = unit_value(s, degrees, &y);
                        if v > best {
                            best = v;
                            x = y;
                            improved = true;
                        }
                    }
                }
                if !improved {
                    step *= 0.5;
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

/// Checks `|s| <= C · mean(s)` for an integer section of `O(degrees)` on
/// `(P^1)^r`, `r <= 2`.
pub fn supnorm_vs_mean(
    quad: &Quadrature,
    s: &MultiPoly,
    degrees: &[u32],
    variant: MeanVariant,
    tol: f64,
) -> Result<SupnormReport> {
    let r = s.num_vars();
    if degrees.len() != r {
        return Err(Error::VarMismatch {
            expected: r,
            found: degrees.len(),
        });
    }
    if r > 2 {
        return Err(Error::Invalid("sections on at most two factors are supported".into()));
    }
    if s.is_zero() {
        return Err(Error::AllZero);
    }
    for (v, &k) in degrees.iter().enumerate() {
        if s.degree_in(v).finite().unwrap_or(0) > k {
            return Err(Error::Invalid(format!("degree in z{} exceeds {k}", v + 1)));
        }
    }
    let shift: f64 = degrees.iter().map(|&k| 0.5 * k as f64).sum();
    let (mean, mean_error) = match variant {
        MeanVariant::Log => {
            let q = quad.integrate_best(&Integrand::LogAbs { poly: s.clone() }, tol)?;
            let m = (q.estimate - shift).exp();
            (m, m * q.error_bound)
        }
        MeanVariant::Literal => {
            let compiled = s.clone();
            let degs = degrees.to_vec();
            let q = quad.integrate_fn(
                r,
                move |z: &[Complex64]| {
                    let v = crate::polyring::eval_complex(&compiled, z)
                        .map(|e| e.value.norm())
                        .unwrap_or(f64::NAN);
                    let w: f64 = z
                        .iter()
                        .zip(&degs)
                        .map(|(zi, &k)| (1.0 + zi.norm_sqr()).powf(0.5 * k as f64))
                        .product();
                    v / w
                },
                tol,
            )?;
            (q.estimate, q.error_bound)
        }
    };
    let coeff_max = s.max_abs_coefficient().to_f64().unwrap_or(f64::INFINITY);
    let constant = coefficient_constant(degrees);
    Ok(SupnormReport {
        degrees: degrees.to_vec(),
        coeff_max,
        mean,
        mean_error,
        variant,
        constant,
        sup_norm: fs_sup_norm(s, degrees),
        holds: coeff_max <= constant * (mean + mean_error) * (1.0 + 1e-12),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly_in, parse_tuple};
    use crate::symbolic::LogLinear;

    fn pt(s: &str, d: usize) -> PointSpec {
        PointSpec::Point {
            point: ProjPoint::new(parse_tuple(s, Some(d)).unwrap()).unwrap(),
        }
    }

    fn block(s: &str, d: usize) -> PointSpec {
        PointSpec::Block {
            form: BinaryForm::parse(s, Some(d)).unwrap(),
        }
    }

    fn form(z: &ZeroCycle) -> String {
        chow_form(z).unwrap().to_string()
    }

    #[test]
    fn chow_forms() {
        let z = ZeroCycle::new(1, 0, vec![(1, pt("(1, 0)", 0))]).unwrap();
        assert_eq!(form(&z), "u0");
        let z = ZeroCycle::new(1, 1, vec![(1, pt("(1, z1)", 1))]).unwrap();
        assert_eq!(chow_form(&z).unwrap().poly, parse_poly_in("z2 + z1*z3", 3).unwrap());
        let z = ZeroCycle::new(1, 0, vec![(1, block("X1^2 - 2*X0^2", 0))]).unwrap();
        let f = chow_form(&z).unwrap();
        assert_eq!(f.poly, parse_poly_in("z1^2 - 2*z2^2", 2).unwrap());
        assert_eq!(f.chow_point().unwrap(), ProjPoint::from_integers(0, &[1, 0, -2]).unwrap());
    }

    #[test]
    fn block_validation() {
        assert!(matches!(BinaryForm::parse("(X1 - X0)^2", None), Err(Error::NotSquareFree(_))));
        assert!(BinaryForm::parse("2*X1^2 - 4*X0^2", None).is_err());
        assert!(BinaryForm::parse("X1^2 - X0", None).is_err());
        // a linear block is a rational point
        let z = ZeroCycle::new(1, 1, vec![(1, block("X1 - z1*X0", 1))]).unwrap();
        assert_eq!(z, ZeroCycle::new(1, 1, vec![(1, pt("(1, z1)", 1))]).unwrap());
    }

    #[test]
    fn cycle_heights() {
        let e = Engine::default();
        let fs0 = Polarization::fs(0);
        let z = ZeroCycle::new(1, 0, vec![(2, pt("(1, 2)", 0))]).unwrap();
        let h = cycle_height_dim0(&e, &z, &fs0, 1e-10).unwrap();
        assert_eq!(h.symbolic, Some(LogLinear::log_scaled(&5.into(), BigRational::new(1.into(), 2.into()))));
        let fs1 = Polarization::fs(1);
        let z = ZeroCycle::new(1, 1, vec![(1, pt("(1, z1)", 1)), (1, pt("(1, 0)", 1))]).unwrap();
        let h = cycle_height_dim0(&e, &z, &fs1, 1e-10).unwrap();
        assert_eq!(h.symbolic, Some(LogLinear::from_ratio(1, 4)));
        // roots ±sqrt(2): each contributes (1/2) log 3
        let z = ZeroCycle::new(1, 0, vec![(1, block("X1^2 - 2*X0^2", 0))]).unwrap();
        let h = cycle_height_dim0(&e, &z, &fs0, 1e-10).unwrap();
        assert!((h.numeric - 0.5 * 3f64.ln()).abs() < 1e-9, "{h}");
        let c = chow_height(&e, &z, &fs0, 1e-10).unwrap();
        assert!((c.numeric - 0.5 * 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn linear_block_matches_point_height() {
        let e = Engine::default();
        let fs1 = Polarization::fs(1);
        for (p, g) in [("(1, z1)", "X1 - z1*X0"), ("(z1 + 2, 3*z1 - 1)", "(z1 + 2)*X1 - (3*z1 - 1)*X0")] {
            let a = height_form(&e, &ProjPoint::new(parse_tuple(p, Some(1)).unwrap()).unwrap(), &fs1).unwrap();
            let b = block_form(&e, &BinaryForm::parse(g, Some(1)).unwrap(), &fs1).unwrap();
            let va = a.evaluate(e.quadrature(), 1e-9).unwrap();
            let vb = b.evaluate(e.quadrature(), 1e-9).unwrap();
            assert!((va.numeric - vb.numeric).abs() < 1e-7, "{p}: {va} vs {vb}");
        }
    }

    #[test]
    fn injectivity() {
        let a = ZeroCycle::new(1, 1, vec![(1, pt("(1, z1)", 1))]).unwrap();
        let b = ZeroCycle::new(1, 1, vec![(1, pt("(1, z1 + 1)", 1))]).unwrap();
        let c = ZeroCycle::new(1, 1, vec![(1, pt("(1, 0)", 1))]).unwrap();
        let r = chow_injectivity_check(&[a.clone(), b, c, a]).unwrap();
        assert!(r.injective());
        assert_eq!((r.distinct_cycles, r.distinct_forms), (3, 3));
    }

    #[test]
    fn supnorm_examples() {
        let q = Quadrature::default();
        let s = parse_poly_in("z1", 1).unwrap();
        let r = supnorm_vs_mean(&q, &s, &[2], MeanVariant::Log, 1e-10).unwrap();
        assert!((r.sup_norm - 0.5).abs() < 1e-12, "{}", r.sup_norm);
        assert!(r.holds);
        let r = supnorm_vs_mean(&q, &MultiPoly::one(1), &[3], MeanVariant::Literal, 1e-6).unwrap();
        assert!(r.holds && (r.sup_norm - 1.0).abs() < 1e-12);
        let s = parse_poly_in("3*z1^2*z2 - z2^3 + 5*z1 + 1", 2).unwrap();
        let r = supnorm_vs_mean(&q, &s, &[2, 3], MeanVariant::Log, 1e-5).unwrap();
        assert!(r.holds);
    }
}
