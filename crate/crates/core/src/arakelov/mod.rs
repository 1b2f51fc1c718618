//! Arithmetic intersection numbers on `(P^1_Z)^m` for Fubini–Study classes,
//! constant twists and one section-pullback class.
//!
//! Conventions: the Fubini–Study norm is `‖X_j‖ = |x_j| / |x|`; the constant
//! twist with parameter `c` is the trivial bundle with `‖1‖ = e^{-c}`; the
//! section class of a tuple `(T_0, ..., T_n)` of multidegree `e` is `O(e)`
//! with `‖s‖ = |s| / (sum |T_k|^2)^{1/2}` after bihomogenization.
//!
//! A problem is evaluated by expanding every class multilinearly into atoms
//! and peeling one Fubini–Study atom at a time with the section `X_0`, whose
//! divisor is the fiber `z_i = ∞` and whose Green function is
//! `(1/2) log(1 + |z_i|^2)`. The section class is only ever restricted.

mod engine;
mod form;
mod mixed;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use engine::{Engine, EngineConfig, TraceNode};
pub use form::{describe, LinearForm, RigorousValue};
pub use mixed::mixed_degree;

use crate::error::{Error, Result};
use crate::polyring::{factor_integer, normalize, MultiPoly, ProjPoint};
use crate::symbolic::LogLinear;

/// Metrized `O(degree)` whose metric is defined by a polynomial tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionClass {
    pub coords: Vec<MultiPoly>,
    /// Declared multidegree; at least the actual degree in every variable.
    pub degree: Vec<u32>,
}

impl SectionClass {
    pub fn from_point(p: &ProjPoint) -> Self {
        SectionClass {
            coords: p.coords().to_vec(),
            degree: p.multidegree().to_vec(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.degree.len()
    }

    pub fn actual_degree(&self) -> Vec<u32> {
        (0..self.num_vars())
            .map(|v| {
                self.coords
                    .iter()
                    .filter_map(|c| c.degree_in(v).finite())
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }
}

/// `⊗ p_i^* O(q_i)_FS ⊗ (O, e^{-c}|·|) ⊗ (section class)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetrizedBundle {
    pub fs_part: Vec<BigRational>,
    pub const_part: LogLinear,
    pub section_part: Option<SectionClass>,
}

impl MetrizedBundle {
    pub fn trivial(m: usize) -> Self {
        MetrizedBundle {
            fs_part: vec![BigRational::zero(); m],
            const_part: LogLinear::zero(),
            section_part: None,
        }
    }

    /// `p_i^* O(1)_FS`.
    pub fn fs(m: usize, i: usize) -> Self {
        let mut b = Self::trivial(m);
        b.fs_part[i] = BigRational::one();
        b
    }

    /// `⊗ p_i^* O(q_i)_FS`.
    pub fn fs_multi(q: Vec<BigRational>) -> Self {
        MetrizedBundle {
            fs_part: q,
            const_part: LogLinear::zero(),
            section_part: None,
        }
    }

    /// `(O, e^{-c}|·|)`.
    pub fn constant(m: usize, c: LogLinear) -> Self {
        let mut b = Self::trivial(m);
        b.const_part = c;
        b
    }

    /// `(O, λ|·|)` for rational `λ > 0`, i.e. `c = -log λ`.
    pub fn twist(m: usize, lambda: &BigRational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::Invalid(format!("twist parameter {lambda} must be positive")));
        }
        let c = LogLinear::log(lambda.denom()) - LogLinear::log(lambda.numer());
        Ok(Self::constant(m, c))
    }

    /// `P^*(O(1), FS)` for a point with coordinates in `Q(z_1..z_m)`.
    pub fn pullback(p: &ProjPoint) -> Self {
        let mut b = Self::trivial(p.num_vars());
        b.section_part = Some(SectionClass::from_point(p));
        b
    }

    pub fn num_vars(&self) -> usize {
        self.fs_part.len()
    }

    pub fn is_nef(&self) -> bool {
        self.fs_part.iter().all(|q| !q.is_negative()) && self.const_part.to_f64() >= -1e-15
    }

    pub fn scale(&self, t: &BigRational) -> Result<Self> {
        if self.section_part.is_some() && !t.is_one() {
            return Err(Error::UnsupportedShape(
                "section classes cannot be scaled".into(),
            ));
        }
        Ok(MetrizedBundle {
            fs_part: self.fs_part.iter().map(|q| q * t).collect(),
            const_part: self.const_part.scale(t),
            section_part: self.section_part.clone(),
        })
    }

    /// Tensor product. At most one side may carry a section class.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.section_part.is_some() && other.section_part.is_some() {
            return Err(Error::UnsupportedShape("two section classes in one bundle".into()));
        }
        Ok(MetrizedBundle {
            fs_part: self.fs_part.iter().zip(&other.fs_part).map(|(a, b)| a + b).collect(),
            const_part: self.const_part.clone() + other.const_part.clone(),
            section_part: self.section_part.clone().or_else(|| other.section_part.clone()),
        })
    }
}

/// One factor of the base cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseFactor {
    Free,
    /// The rational point `(x0 : x1)`.
    Point { x0: BigInt, x1: BigInt },
}

impl BaseFactor {
    pub fn infinity() -> Self {
        BaseFactor::Point {
            x0: BigInt::zero(),
            x1: BigInt::one(),
        }
    }
}

/// `deg(ĉ_1(L_1) ... ĉ_1(L_k) · Z)` where `Z` is a product of free factors
/// and rational points, optionally inside the fiber over a prime.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionProblem {
    pub m: usize,
    pub classes: Vec<MetrizedBundle>,
    pub base: Vec<BaseFactor>,
    #[serde(default)]
    pub fiber: Option<BigInt>,
}

impl IntersectionProblem {
    /// Problem on the whole of `(P^1_Z)^m`.
    pub fn full(m: usize, classes: Vec<MetrizedBundle>) -> Self {
        IntersectionProblem {
            m,
            classes,
            base: vec![BaseFactor::Free; m],
            fiber: None,
        }
    }

    pub fn free_factors(&self) -> Vec<usize> {
        (0..self.m)
            .filter(|&i| self.base[i] == BaseFactor::Free)
            .collect()
    }

    /// Number of classes the base cycle requires.
    pub fn expected_classes(&self) -> usize {
        self.free_factors().len() + usize::from(self.fiber.is_none())
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |s: String| Err(Error::Invalid(s));
        if self.base.len() != self.m {
            return invalid(format!("base has {} factors, expected {}", self.base.len(), self.m));
        }
        if self.classes.len() != self.expected_classes() {
            return invalid(format!(
                "{} classes given, the base cycle needs {}",
                self.classes.len(),
                self.expected_classes()
            ));
        }
        for f in &self.base {
            if let BaseFactor::Point { x0, x1 } = f {
                if x0.is_zero() && x1.is_zero() || !x0.gcd(x1).is_one() {
                    return invalid(format!("({x0} : {x1}) is not a primitive point"));
                }
            }
        }
        if let Some(p) = &self.fiber {
            if *p <= BigInt::one() {
                return invalid(format!("fiber over {p} is not a prime fiber"));
            }
        }
        let mut sections = 0;
        for c in &self.classes {
            if c.fs_part.len() != self.m {
                return invalid("class with wrong number of Fubini–Study exponents".into());
            }
            if let Some(s) = &c.section_part {
                sections += 1;
                if s.degree.len() != self.m || s.coords.iter().any(|p| p.num_vars() != self.m) {
                    return Err(Error::VarMismatch {
                        expected: self.m,
                        found: s.coords.first().map_or(0, |p| p.num_vars()),
                    });
                }
                if s.coords.iter().all(|p| p.is_zero()) {
                    return Err(Error::AllZero);
                }
                if s.actual_degree().iter().zip(&s.degree).any(|(a, d)| a > d) {
                    return invalid("declared section degree below the actual degree".into());
                }
            }
        }
        if sections > 1 {
            return Err(Error::UnsupportedShape(
                "more than one section-pullback class".into(),
            ));
        }
        Ok(())
    }
}

/// Exact or numeric value of `prob` with the default engine.
pub fn intersection_degree(prob: &IntersectionProblem, tol: f64) -> Result<RigorousValue> {
    Engine::default().intersection_degree(prob, tol)
}

/// A correction term produced by restricting a section class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Correction {
    /// `multiplicity * log p * deg(remaining classes | fiber over p)`.
    Vertical {
        prime: BigInt,
        multiplicity: u32,
        problem: IntersectionProblem,
    },
    /// Contribution of the removed polynomial gcd, as a single-coordinate section.
    Horizontal {
        gcd: MultiPoly,
        problem: IntersectionProblem,
    },
}

/// The divisor term of peeling `p_i^* O(1)_FS` off a class list: the
/// remaining classes on the base with factor `i` collapsed to `∞`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Restriction {
    pub factor: usize,
    /// Fubini–Study exponent of the peeled class at the factor.
    pub weight: BigRational,
    pub problem: IntersectionProblem,
    pub corrections: Vec<Correction>,
}

impl Restriction {
    /// Sum of the restricted problem and all corrections (not multiplied by `weight`).
    pub fn form(&self, engine: &Engine) -> Result<LinearForm> {
        let mut out = engine.form(&self.problem)?;
        for c in &self.corrections {
            match c {
                Correction::Vertical {
                    multiplicity,
                    problem,
                    ..
                } => out.add_scaled(
                    &engine.form(problem)?,
                    &BigRational::from_integer((*multiplicity).into()),
                ),
                Correction::Horizontal { problem, .. } => out += engine.form(problem)?,
            }
        }
        Ok(out)
    }

    pub fn value(&self, engine: &Engine, tol: f64) -> Result<RigorousValue> {
        self.form(engine)?.evaluate(engine.quadrature(), tol)
    }
}

/// Collapses factor `i` to `∞` after removing the first class with a
/// positive Fubini–Study exponent at `i`. The section class is replaced by
/// its normalized leading tuple; removed content and gcd become corrections.
pub fn restrict_to_infinity(prob: &IntersectionProblem, i: usize) -> Result<Restriction> {
    prob.validate()?;
    if i >= prob.m {
        return Err(Error::VarIndex {
            index: i,
            num_vars: prob.m,
        });
    }
    if prob.base[i] != BaseFactor::Free {
        return Err(Error::Invalid(format!("factor {} is not free", i + 1)));
    }
    let peel = prob
        .classes
        .iter()
        .position(|c| c.fs_part[i].is_positive())
        .ok_or_else(|| {
            Error::Invalid(format!("no class has a positive exponent at factor {}", i + 1))
        })?;
    let weight = prob.classes[peel].fs_part[i].clone();
    let mut base = prob.base.clone();
    base[i] = BaseFactor::infinity();
    let mut classes: Vec<MetrizedBundle> = prob
        .classes
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != peel)
        .map(|(_, c)| {
            let mut c = c.clone();
            // the Fubini–Study metric is trivial at (0 : 1)
            c.fs_part[i] = BigRational::zero();
            c
        })
        .collect();
    let mut corrections = Vec::new();
    if let Some(k) = classes.iter().position(|c| c.section_part.is_some()) {
        let s = classes[k].section_part.take().expect("section present");
        let e = s.degree[i];
        let lead: Vec<MultiPoly> = s
            .coords
            .iter()
            .map(|c| c.specialize_homogeneous(i, e, &BigInt::zero(), &BigInt::one()))
            .collect();
        if lead.iter().all(|p| p.is_zero()) {
            return Err(Error::BaseLocusHit { factor: i + 1 });
        }
        let nz = normalize(&lead)?;
        let mut declared = s.degree.clone();
        declared[i] = 0;
        let actual = nz.point.multidegree().to_vec();
        let others: Vec<MetrizedBundle> = classes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, c)| c.clone())
            .collect();
        let f = factor_integer(&nz.content);
        let mut primes = f.primes.clone();
        if !f.cofactor.is_one() {
            primes.push((f.cofactor.clone(), 1));
        }
        for (p, mult) in primes {
            corrections.push(Correction::Vertical {
                prime: p.clone(),
                multiplicity: mult,
                problem: IntersectionProblem {
                    m: prob.m,
                    classes: others.clone(),
                    base: base.clone(),
                    fiber: Some(p),
                },
            });
        }
        let gdeg: Vec<u32> = declared.iter().zip(&actual).map(|(d, a)| d - a).collect();
        if !nz.gcd.is_constant() || gdeg.iter().any(|&d| d > 0) {
            let mut g_classes = others.clone();
            let mut gb = MetrizedBundle::trivial(prob.m);
            gb.section_part = Some(SectionClass {
                coords: vec![nz.gcd.clone()],
                degree: gdeg,
            });
            g_classes.insert(k, gb);
            corrections.push(Correction::Horizontal {
                gcd: nz.gcd.clone(),
                problem: IntersectionProblem {
                    m: prob.m,
                    classes: g_classes,
                    base: base.clone(),
                    fiber: None,
                },
            });
        }
        classes[k].section_part = Some(SectionClass {
            coords: nz.point.coords().to_vec(),
            degree: actual,
        });
    }
    Ok(Restriction {
        factor: i,
        weight,
        problem: IntersectionProblem {
            m: prob.m,
            classes,
            base,
            fiber: None,
        },
        corrections,
    })
}

#[cfg(test)]
mod tests;
