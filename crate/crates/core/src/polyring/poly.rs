//! Sparse multivariate polynomials over the integers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic on the exponents).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial in one variable. The zero polynomial has degree
/// `NegInfinity`, which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An element of `Z[z_1, ..., z_d]`. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigInt::one())
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(num_vars, vec![0; num_vars], c)
    }

    /// The variable `z_{index+1}`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[index] = 1;
        Self::monomial(num_vars, exps, 1)
    }

    pub fn monomial(num_vars: usize, exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), num_vars, "exponent vector length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        MultiPoly { num_vars, terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = MultiPoly::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The constant value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map(|m| Degree::Finite(m.total_degree() as u32))
            .unwrap_or(Degree::NegInfinity)
    }

    /// Degree in the variable with zero-based index `var`.
    pub fn partial_degree(&self, var: usize) -> Result<Degree> {
        if var >= self.num_vars {
            return Err(Error::VarIndex {
                index: var,
                num_vars: self.num_vars,
            });
        }
        Ok(self.degree_in(var))
    }

    pub(crate) fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.0[var])
            .max()
            .map(Degree::Finite)
            .unwrap_or(Degree::NegInfinity)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.num_vars).filter(|&v| self.depends_on(v)).collect()
    }

    /// Nonnegative gcd of the integer coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Divides every coefficient by `c`; panics if the division is inexact.
    pub fn div_integer_exact(&self, c: &BigInt) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let (q, r) = v.div_rem(c);
                    assert!(r.is_zero(), "inexact integer division");
                    (m.clone(), q)
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.num_vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients of `f` as a polynomial in `var`: entry `t` is the
    /// coefficient of `var^t`, with `var` absent from it.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_in(var) {
            Degree::NegInfinity => return Vec::new(),
            Degree::Finite(d) => d as usize,
        };
        let mut out = vec![MultiPoly::zero(self.num_vars); deg + 1];
        for (m, c) in &self.terms {
            let t = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[t].terms.insert(Monomial(e), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let n = coeffs.first().map(|c| c.num_vars).unwrap_or(0);
        let mut p = MultiPoly::zero(n);
        for (t, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut e = m.0.clone();
                e[var] += t as u32;
                p.add_term(Monomial(e), v.clone());
            }
        }
        p
    }

    /// Evaluates the bihomogenization of degree `degree` in `var` at the
    /// point `(x0 : x1)` of that factor, i.e. `sum_t c_t x1^t x0^(degree-t)`.
    /// The result no longer depends on `var`.
    pub fn specialize_homogeneous(
        &self,
        var: usize,
        degree: u32,
        x0: &BigInt,
        x1: &BigInt,
    ) -> MultiPoly {
        let coeffs = self.coefficients_in(var);
        assert!(coeffs.len() <= degree as usize + 1, "degree too small");
        let mut out = MultiPoly::zero(self.num_vars);
        for (t, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = num_traits::pow(x1.clone(), t) * num_traits::pow(x0.clone(), degree as usize - t);
            out = &out + &c.scale(&w);
        }
        out
    }

    /// Removes variable `var`, which must not occur.
    pub fn drop_var(&self, var: usize) -> MultiPoly {
        assert!(!self.depends_on(var), "dropping a variable that occurs");
        MultiPoly {
            num_vars: self.num_vars - 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.remove(var);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Re-embeds into `num_vars` variables, sending variable `i` to `map[i]`.
    pub fn remap_vars(&self, num_vars: usize, map: &[usize]) -> MultiPoly {
        let mut p = MultiPoly::zero(num_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; num_vars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[var] -= 1;
            p.add_term(Monomial(e), c * BigInt::from(k));
        }
        p
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.num_vars);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return None;
            }
            let (q, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let m = rm.div(&lm);
            let t = MultiPoly {
                num_vars: self.num_vars,
                terms: std::iter::once((m, q)).collect(),
            };
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `divisor` viewed as polynomials in `var`.
    pub fn pseudo_rem(&self, divisor: &MultiPoly, var: usize) -> MultiPoly {
        let db = match divisor.degree_in(var) {
            Degree::Finite(d) => d,
            Degree::NegInfinity => panic!("pseudo-division by zero"),
        };
        let lc_b = divisor.coefficients_in(var).pop().expect("nonzero divisor");
        let mut r = self.clone();
        while let Degree::Finite(dr) = r.degree_in(var) {
            if dr < db {
                break;
            }
            let lc_r = r.coefficients_in(var).pop().expect("nonzero remainder");
            let mut shift = vec![0u32; self.num_vars];
            shift[var] = dr - db;
            let xs = MultiPoly::monomial(self.num_vars, shift, 1);
            r = &(&lc_b * &r) - &(&(&lc_r * &xs) * divisor);
        }
        r
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Sum of squared coefficients.
    pub fn coefficient_norm_sq(&self) -> BigInt {
        self.terms.values().map(|c| c * c).sum()
    }

    pub(crate) fn with_sign_positive(self) -> MultiPoly {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => -self,
            _ => self,
        }
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPoly {
    /// Orders by leading terms, descending through the term lists.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = MultiPoly::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    num_vars: usize,
    terms: Vec<(Vec<u32>, String)>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.0.clone(), c.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PolyRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(r.terms.len());
        for (e, c) in r.terms {
            if e.len() != r.num_vars {
                return Err(D::Error::custom("exponent vector length"));
            }
            let c: BigInt = c.parse().map_err(|_| D::Error::custom("bad coefficient"))?;
            terms.push((e, c));
        }
        Ok(MultiPoly::from_terms(r.num_vars, terms))
    }
}

pub(crate) fn var_name(i: usize) -> String {
    format!("z{}", i + 1)
}

impl MultiPoly {
    /// Renders with custom variable names.
    pub fn display_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(i)),
                    _ => factors.push(format!("{}^{}", names(i), e)),
                }
            }
            if factors.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&var_name))
    }
}
