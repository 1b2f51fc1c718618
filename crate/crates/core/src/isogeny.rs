//! Formal intersection calculus for pullbacks by isogenies.
//!
//! An atom `([N]^k)^* S` is rewritten to `r^k · S` by a rule `[N]^* S = r S`;
//! pairings are the bilinear extension of a table of `deg(ĉ_1(S) · ĉ_1(T))`.
//! With `[2]^* H = 4 H` and a point `x_n` given by the section through
//! `[2]^n`, the height of `x_n` is `4^n deg(H · H)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `([N]^k)^* symbol`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub symbol: String,
    pub isogeny: u32,
    pub power: u32,
}

impl Atom {
    pub fn base(symbol: &str) -> Self {
        Atom {
            symbol: symbol.to_string(),
            isogeny: 1,
            power: 0,
        }
    }

    pub fn pullback(symbol: &str, isogeny: u32, power: u32) -> Self {
        Atom {
            symbol: symbol.to_string(),
            isogeny,
            power,
        }
    }

    fn is_base(&self) -> bool {
        self.power == 0 || self.isogeny == 1
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_base() {
            write!(f, "{}", self.symbol)
        } else {
            write!(f, "([{}]^{})*{}", self.isogeny, self.power, self.symbol)
        }
    }
}

/// A `Q`-linear combination of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalClass {
    terms: BTreeMap<Atom, BigRational>,
}

impl FormalClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn atom(a: Atom) -> Self {
        Self::zero().plus(a, BigRational::one())
    }

    pub fn plus(mut self, a: Atom, q: BigRational) -> Self {
        let a = if a.is_base() { Atom::base(&a.symbol) } else { a };
        let v = self.terms.entry(a.clone()).or_insert_with(BigRational::zero);
        *v += q;
        if v.is_zero() {
            self.terms.remove(&a);
        }
        self
    }

    pub fn add(&self, other: &FormalClass) -> FormalClass {
        other
            .terms
            .iter()
            .fold(self.clone(), |acc, (a, q)| acc.plus(a.clone(), q.clone()))
    }

    pub fn scale(&self, q: &BigRational) -> FormalClass {
        self.terms
            .iter()
            .fold(Self::zero(), |acc, (a, c)| acc.plus(a.clone(), c * q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, symbol: &str) -> BigRational {
        self.terms
            .get(&Atom::base(symbol))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(a, q)| format!("{q}·{a}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Rules `[N]^* S = r · S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSet {
    rules: BTreeMap<(String, u32), BigRational>,
}

impl Default for RuleSet {
    /// `[2]^* H = 4 H`: `H` is symmetric, so `[2]^*` acts by `2^2`.
    fn default() -> Self {
        RuleSet::empty().with("H", 2, BigRational::from_integer(4.into()))
    }
}

impl RuleSet {
    pub fn empty() -> Self {
        RuleSet {
            rules: BTreeMap::new(),
        }
    }

    pub fn with(mut self, symbol: &str, isogeny: u32, factor: BigRational) -> Self {
        self.rules.insert((symbol.to_string(), isogeny), factor);
        self
    }
}

/// Rewrites every pullback atom to a multiple of its base symbol.
pub fn reduce(cls: &FormalClass, rules: &RuleSet) -> Result<FormalClass> {
    let mut out = FormalClass::zero();
    for (a, q) in cls.terms() {
        let factor = if a.is_base() {
            BigRational::one()
        } else {
            let r = rules
                .rules
                .get(&(a.symbol.clone(), a.isogeny))
                .ok_or_else(|| Error::UnknownSymbol(format!("[{}]*{}", a.isogeny, a.symbol)))?;
            num_traits::pow(r.clone(), a.power as usize)
        };
        out = out.plus(Atom::base(&a.symbol), q * factor);
    }
    Ok(out)
}

/// Symmetric table of `deg(ĉ_1(S) · ĉ_1(T))`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingTable {
    values: BTreeMap<(String, String), BigRational>,
}

impl PairingTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, s: &str, t: &str, value: BigRational) -> Self {
        self.values.insert(Self::key(s, t), value);
        self
    }

    fn key(s: &str, t: &str) -> (String, String) {
        if s <= t {
            (s.to_string(), t.to_string())
        } else {
            (t.to_string(), s.to_string())
        }
    }

    pub fn get(&self, s: &str, t: &str) -> Result<&BigRational> {
        self.values
            .get(&Self::key(s, t))
            .ok_or_else(|| Error::UnknownSymbol(format!("{s}·{t}")))
    }
}

pub fn pair(a: &FormalClass, b: &FormalClass, rules: &RuleSet, table: &PairingTable) -> Result<BigRational> {
    let (a, b) = (reduce(a, rules)?, reduce(b, rules)?);
    let mut total = BigRational::zero();
    for (x, p) in a.terms() {
        for (y, q) in b.terms() {
            total += p * q * table.get(&x.symbol, &y.symbol)?;
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Infinitely many distinct points of height zero.
    NorthcottFails,
    /// Heights `4^n c` grow without bound.
    HeightsGrow,
    /// `c < 0`: the bundle is not nef.
    NotNef,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NorthcottFails => write!(f, "Northcott fails: the points x_n are distinct and all have height 0"),
            Verdict::HeightsGrow => write!(f, "heights grow like 4^n c: no infinite bounded family"),
            Verdict::NotNef => write!(f, "deg(H·H) < 0: H is not nef"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRow {
    pub n: u32,
    pub height: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    /// Weierstrass equation of the curve, for reference only.
    pub curve: String,
    pub c: BigRational,
    pub rows: Vec<CounterexampleRow>,
    pub verdict: Verdict,
}

/// The curve `E` over `Z[ε]`, `ε = (5 + sqrt(29))/2`.
pub const CURVE: &str = "Y^2 Z + X Y Z + ε^2 Y Z^2 - X^3 = 0, ε = (5 + sqrt(29))/2";

/// `h(x_n) = deg(([2]^n)^* H · H)` for `n = 0..=n_max`.
pub fn counterexample_heights(n_max: u32, c: &BigRational) -> Result<CounterexampleReport> {
    let rules = RuleSet::default();
    let table = PairingTable::new().with("H", "H", c.clone());
    let h = FormalClass::atom(Atom::base("H"));
    let rows = (0..=n_max)
        .map(|n| {
            let x = FormalClass::atom(Atom::pullback("H", 2, n));
            Ok(CounterexampleRow {
                n,
                height: pair(&x, &h, &rules, &table)?,
            })
        })
        .collect::<Result<_>>()?;
    let verdict = if c.is_zero() {
        Verdict::NorthcottFails
    } else if *c > BigRational::zero() {
        Verdict::HeightsGrow
    } else {
        Verdict::NotNef
    };
    Ok(CounterexampleReport {
        curve: CURVE.to_string(),
        c: c.clone(),
        rows,
        verdict,
    })
}

/// `4^n c` as an exact rational.
pub fn expected_height(n: u32, c: &BigRational) -> BigRational {
    c * BigRational::from_integer(num_traits::pow(BigInt::from(4), n as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rewriting() {
        let r = RuleSet::default();
        let c = FormalClass::atom(Atom::pullback("H", 2, 3));
        assert_eq!(reduce(&c, &r).unwrap().coefficient("H"), q(64, 1));
        let c = FormalClass::atom(Atom::pullback("H", 2, 0));
        assert_eq!(reduce(&c, &r).unwrap(), FormalClass::atom(Atom::base("H")));
        let c = FormalClass::zero()
            .plus(Atom::pullback("H", 2, 1), q(2, 1))
            .plus(Atom::base("H"), q(-8, 1));
        assert!(reduce(&c, &r).unwrap().is_zero());
        let c = FormalClass::atom(Atom::pullback("G", 3, 1));
        assert!(matches!(reduce(&c, &r), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn pairing() {
        let r = RuleSet::default();
        let h = FormalClass::atom(Atom::base("H"));
        let t0 = PairingTable::new().with("H", "H", q(0, 1));
        assert!(pair(&h, &h, &r, &t0).unwrap().is_zero());
        let t = PairingTable::new().with("H", "H", q(1, 2));
        let x = FormalClass::atom(Atom::pullback("H", 2, 5));
        assert_eq!(pair(&x, &h, &r, &t).unwrap(), q(512, 1));
        assert!(pair(&FormalClass::zero(), &h, &r, &t).unwrap().is_zero());
        assert!(pair(&h, &FormalClass::atom(Atom::base("G")), &r, &t).is_err());
    }

    #[test]
    fn counterexample() {
        let rep = counterexample_heights(30, &q(0, 1)).unwrap();
        assert_eq!(rep.rows.len(), 31);
        assert!(rep.rows.iter().all(|r| r.height.is_zero()));
        assert_eq!(rep.verdict, Verdict::NorthcottFails);
        let rep = counterexample_heights(3, &q(1, 2)).unwrap();
        assert_eq!(rep.rows[3].height, q(32, 1));
        assert_eq!(rep.rows[0].height, q(1, 2));
        assert_eq!(rep.verdict, Verdict::HeightsGrow);
    }
}
