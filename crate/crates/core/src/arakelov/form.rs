//! Exact linear combinations of logarithms and Fubini–Study integrals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fsquad::{Integrand, Quadrature};
use crate::symbolic::LogLinear;

/// `exact + sum_k q_k * ∫ g_k dμ_FS` with rational `q_k`. Integrals are
/// keyed by their canonical serialization, so equal integrals combine and
/// cancel exactly.
#[derive(Clone, Debug, Default)]
pub struct LinearForm {
    exact: LogLinear,
    integrals: BTreeMap<String, (Integrand, BigRational)>,
}

/// A numeric result with its symbolic value when one is known.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigorousValue {
    pub symbolic: Option<LogLinear>,
    pub numeric: f64,
    pub error_bound: f64,
}

impl RigorousValue {
    pub fn exact(v: LogLinear) -> Self {
        RigorousValue {
            numeric: v.to_f64(),
            symbolic: Some(v),
            error_bound: 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.symbolic.is_some()
    }

    pub fn is_symbolic_zero(&self) -> bool {
        self.symbolic.as_ref().is_some_and(|s| s.is_zero())
    }
}

impl fmt::Display for RigorousValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.symbolic {
            Some(s) => write!(f, "{s} = {:.12}", self.numeric),
            None => write!(f, "{:.12} ± {:.3e}", self.numeric, self.error_bound),
        }
    }
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn exact(v: LogLinear) -> Self {
        LinearForm {
            exact: v,
            integrals: BTreeMap::new(),
        }
    }

    pub fn integral(g: Integrand, q: BigRational) -> Self {
        let mut f = Self::zero();
        f.add_integral(g, q);
        f
    }

    pub fn exact_part(&self) -> &LogLinear {
        &self.exact
    }

    pub fn integrals(&self) -> impl Iterator<Item = (&Integrand, &BigRational)> {
        self.integrals.values().map(|(g, q)| (g, q))
    }

    pub fn is_zero(&self) -> bool {
        self.exact.is_zero() && self.integrals.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.integrals.is_empty()
    }

    pub fn add_exact(&mut self, v: &LogLinear) {
        self.exact += v.clone();
    }

    pub fn add_integral(&mut self, g: Integrand, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let key = serde_json::to_string(&g).expect("integrand serializes");
        let e = self
            .integrals
            .entry(key.clone())
            .or_insert_with(|| (g, BigRational::zero()));
        e.1 += q;
        if e.1.is_zero() {
            self.integrals.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &LinearForm, q: &BigRational) {
        if q.is_zero() {
            return;
        }
        self.exact += other.exact.scale(q);
        for (g, c) in other.integrals.values() {
            self.add_integral(g.clone(), c * q);
        }
    }

    pub fn scale(&self, q: &BigRational) -> LinearForm {
        let mut out = LinearForm::zero();
        out.add_scaled(self, q);
        out
    }

    /// Evaluates the integrals so that the total error is at most `tol`
    /// whenever every integral converges; otherwise the bound reports the
    /// best error reached.
    pub fn evaluate(&self, quad: &Quadrature, tol: f64) -> Result<RigorousValue> {
        if self.integrals.is_empty() {
            return Ok(RigorousValue::exact(self.exact.clone()));
        }
        let n = self.integrals.len() as f64;
        let parts: Vec<(f64, f64)> = self
            .integrals
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|(g, q)| {
                let qf = q.to_f64().unwrap_or(f64::INFINITY);
                let r = quad.integrate_best(g, tol / (n * qf.abs()))?;
                Ok((qf * r.estimate, qf.abs() * r.error_bound))
            })
            .collect::<Result<Vec<_>>>()?;
        let (numeric, error_bound) = parts
            .iter()
            .fold((self.exact.to_f64(), 0.0), |(v, e), (a, b)| (v + a, e + b));
        Ok(RigorousValue {
            symbolic: None,
            numeric,
            error_bound,
        })
    }

    /// Sum of `|q_k|` over the integral terms.
    pub fn integral_weight(&self) -> BigRational {
        self.integrals.values().map(|(_, q)| q.abs()).sum()
    }
}

impl PartialEq for LinearForm {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl AddAssign for LinearForm {
    fn add_assign(&mut self, rhs: LinearForm) {
        self.exact += rhs.exact;
        for (_, (g, q)) in rhs.integrals {
            self.add_integral(g, q);
        }
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(mut self, rhs: LinearForm) -> LinearForm {
        self += rhs;
        self
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self.scale(&-BigRational::from_integer(1.into()))
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        self + (-rhs)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.exact.is_zero() || self.integrals.is_empty() {
            parts.push(self.exact.to_string());
        }
        for (g, q) in self.integrals.values() {
            parts.push(format!("{q}*I[{}]", describe(g)));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Short human-readable name of an integrand.
pub fn describe(g: &Integrand) -> String {
    let list = |ps: &[crate::MultiPoly]| {
        ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    };
    match g {
        Integrand::Const { value } => format!("{value}"),
        Integrand::LogSumSq { polys } => format!("log|({})|^2", list(polys)),
        Integrand::LogMaxAbs { polys } => format!("log max|({})|", list(polys)),
        Integrand::LogAbs { poly } => format!("log|{poly}|"),
        Integrand::LogOnePlusAbsSq { var } => format!("log(1+|z{}|^2)", var + 1),
        Integrand::Sum { terms } => terms
            .iter()
            .map(|(c, t)| format!("{c}*{}", describe(t)))
            .collect::<Vec<_>>()
            .join(" + "),
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    exact: LogLinear,
    integrals: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coefficient: BigRational,
    integrand: Integrand,
}

impl Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            exact: self.exact.clone(),
            integrals: self
                .integrals
                .values()
                .map(|(g, q)| TermRepr {
                    coefficient: q.clone(),
                    integrand: g.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FormRepr::deserialize(d)?;
        let mut out = LinearForm::exact(r.exact);
        for t in r.integrals {
            out.add_integral(t.integrand, t.coefficient);
        }
        Ok(out)
    }
}
