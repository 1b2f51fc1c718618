//! Exact values of the form `q_0 + sum q_i log(b_i)` with rational `q_i`
//! and integers `b_i > 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A rational linear combination of logarithms of positive integers plus a
/// rational constant. Bases are kept pairwise coprime, which makes
/// `is_zero` (and therefore equality) exact.
#[derive(Clone, Debug, Default)]
pub struct LogLinear {
    constant: BigRational,
    logs: BTreeMap<BigInt, BigRational>,
}

impl LogLinear {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: BigRational) -> Self {
        LogLinear {
            constant: q,
            logs: BTreeMap::new(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    /// `log(n)` for a positive integer `n`.
    pub fn log(n: &BigInt) -> Self {
        assert!(n.is_positive(), "logarithm of a non-positive integer");
        Self::log_scaled(n, BigRational::one())
    }

    /// `q * log(n)`.
    pub fn log_scaled(n: &BigInt, q: BigRational) -> Self {
        assert!(n.is_positive(), "logarithm of a non-positive integer");
        let mut out = LogLinear::zero();
        if !n.is_one() && !q.is_zero() {
            out.logs.insert(n.clone(), q);
        }
        out
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    /// `(coefficient, base)` pairs in increasing base order.
    pub fn log_terms(&self) -> impl Iterator<Item = (&BigRational, &BigInt)> {
        self.logs.iter().map(|(b, q)| (q, b))
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.logs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn scale(&self, q: &BigRational) -> LogLinear {
        if q.is_zero() {
            return LogLinear::zero();
        }
        LogLinear {
            constant: &self.constant * q,
            logs: self.logs.iter().map(|(b, c)| (b.clone(), c * q)).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = self.constant.to_f64().unwrap_or(f64::NAN);
        for (b, q) in &self.logs {
            v += q.to_f64().unwrap_or(f64::NAN) * ln_bigint(b);
        }
        v
    }

    fn insert(&mut self, b: BigInt, q: BigRational) {
        if b.is_one() || q.is_zero() {
            return;
        }
        let e = self.logs.entry(b.clone()).or_insert_with(BigRational::zero);
        *e += q;
        if e.is_zero() {
            self.logs.remove(&b);
        }
    }

    /// Refines the bases into a pairwise coprime family.
    fn canonicalize(&mut self) {
        loop {
            let bases: Vec<BigInt> = self.logs.keys().cloned().collect();
            let mut split = None;
            'outer: for (i, a) in bases.iter().enumerate() {
                for b in &bases[i + 1..] {
                    let g = a.gcd(b);
                    if !g.is_one() {
                        split = Some((a.clone(), b.clone(), g));
                        break 'outer;
                    }
                }
            }
            let Some((a, b, g)) = split else { break };
            let qa = self.logs.remove(&a).expect("present");
            let qb = self.logs.remove(&b).expect("present");
            self.insert(g.clone(), &qa + &qb);
            self.insert(&a / &g, qa);
            self.insert(&b / &g, qb);
        }
    }
}

/// Natural logarithm of a positive big integer.
pub fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

impl PartialEq for LogLinear {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl Eq for LogLinear {}

impl Add for LogLinear {
    type Output = LogLinear;
    fn add(mut self, rhs: LogLinear) -> LogLinear {
        self += rhs;
        self
    }
}

impl AddAssign for LogLinear {
    fn add_assign(&mut self, rhs: LogLinear) {
        self.constant += rhs.constant;
        let fresh = rhs.logs.keys().any(|b| !self.logs.contains_key(b));
        for (b, q) in rhs.logs {
            self.insert(b, q);
        }
        if fresh {
            self.canonicalize();
        }
    }
}

impl Sub for LogLinear {
    type Output = LogLinear;
    fn sub(self, rhs: LogLinear) -> LogLinear {
        self + (-rhs)
    }
}

impl Neg for LogLinear {
    type Output = LogLinear;
    fn neg(self) -> LogLinear {
        LogLinear {
            constant: -self.constant,
            logs: self.logs.into_iter().map(|(b, q)| (b, -q)).collect(),
        }
    }
}

impl Mul<&BigRational> for LogLinear {
    type Output = LogLinear;
    fn mul(self, q: &BigRational) -> LogLinear {
        self.scale(q)
    }
}

impl std::iter::Sum for LogLinear {
    fn sum<I: Iterator<Item = LogLinear>>(iter: I) -> LogLinear {
        iter.fold(LogLinear::zero(), |a, b| a + b)
    }
}

fn fmt_ratio(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for LogLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (b, q) in &self.logs {
            let a = q.abs();
            let s = if a.is_one() {
                format!("log({b})")
            } else {
                format!("{}*log({b})", fmt_ratio(&a))
            };
            parts.push((q.is_negative(), s));
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push((self.constant.is_negative(), fmt_ratio(&self.constant.abs())));
        }
        for (i, (neg, s)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{s}")?,
                (0, false) => write!(f, "{s}")?,
                (_, true) => write!(f, " - {s}")?,
                (_, false) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

/// Serialized form: the rendered expression plus its machine-readable terms.
#[derive(Serialize, Deserialize)]
struct LogLinearRepr {
    text: String,
    constant: String,
    logs: Vec<(String, String)>,
}

impl Serialize for LogLinear {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LogLinearRepr {
            text: self.to_string(),
            constant: fmt_ratio(&self.constant),
            logs: self
                .logs
                .iter()
                .map(|(b, q)| (fmt_ratio(q), b.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

impl<'de> Deserialize<'de> for LogLinear {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = LogLinearRepr::deserialize(d)?;
        let mut out =
            LogLinear::rational(parse_ratio(&r.constant).ok_or_else(|| D::Error::custom("bad constant"))?);
        for (q, b) in r.logs {
            let q = parse_ratio(&q).ok_or_else(|| D::Error::custom("bad coefficient"))?;
            let b: BigInt = b.parse().map_err(|_| D::Error::custom("bad base"))?;
            if !b.is_positive() {
                return Err(D::Error::custom("non-positive logarithm base"));
            }
            out += LogLinear::log_scaled(&b, q);
        }
        Ok(out)
    }
}
