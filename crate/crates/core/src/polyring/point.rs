//! Canonical projective points with polynomial coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::gcd::gcd_many;
use super::poly::{Degree, MultiPoly};
use crate::error::{Error, Result};

/// A point `(f_0 : ... : f_n)` of projective space over `Q(z_1..z_d)`,
/// stored as a coprime integer tuple with content 1 and canonical sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<MultiPoly>,
    multidegree: Vec<u32>,
}

/// What `normalize` removed: `raw[k] = content * gcd * point[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub point: ProjPoint,
    /// Positive integer content of the raw tuple.
    pub content: BigInt,
    /// Primitive polynomial gcd, signed so that the identity above holds exactly.
    pub gcd: MultiPoly,
}

/// Integer content split into prime powers, as far as trial division reaches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub primes: Vec<(BigInt, u32)>,
    /// Cofactor above the trial-division limit (not necessarily prime); 1 if none.
    pub cofactor: BigInt,
}

/// Corrections produced by `leading_restriction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionLedger {
    pub content: BigInt,
    pub content_factors: Factorization,
    pub gcd: MultiPoly,
}

impl CorrectionLedger {
    pub fn is_trivial(&self) -> bool {
        self.content.is_one() && self.gcd.constant_value().is_some_and(|c| c.is_one())
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

pub fn factor_integer(n: &BigInt) -> Factorization {
    let mut n = n.abs();
    let mut primes = Vec::new();
    if n.is_zero() {
        return Factorization {
            primes,
            cofactor: n,
        };
    }
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut k = 0;
        loop {
            let (q, r) = n.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            n = q;
            k += 1;
        }
        if k > 0 {
            primes.push((bp, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut cofactor = BigInt::one();
    if !n.is_one() {
        let lim = BigInt::from(TRIAL_LIMIT);
        if &lim * &lim >= n {
            primes.push((n, 1));
            primes.sort();
        } else {
            cofactor = n;
        }
    }
    Factorization { primes, cofactor }
}

/// Returns the canonical representative of the projective point with raw
/// coordinates `raw`, together with the removed content and gcd.
pub fn normalize(raw: &[MultiPoly]) -> Result<Normalized> {
    let first = raw.first().ok_or(Error::AllZero)?;
    let n = first.num_vars();
    for p in raw {
        if p.num_vars() != n {
            return Err(Error::VarMismatch {
                expected: n,
                found: p.num_vars(),
            });
        }
    }
    if raw.iter().all(|p| p.is_zero()) {
        return Err(Error::AllZero);
    }
    let g = gcd_many(n, raw.iter());
    let content = g.content();
    let prim_g = g.div_integer_exact(&content);
    let mut coords: Vec<MultiPoly> = raw
        .iter()
        .map(|p| {
            p.div_exact(&g)
                .expect("gcd divides every coordinate")
        })
        .collect();
    let mut signed_g = prim_g;
    let lead_negative = coords
        .iter()
        .find(|c| !c.is_zero())
        .and_then(|c| c.leading_coefficient())
        .is_some_and(|c| c.is_negative());
    if lead_negative {
        coords = coords.into_iter().map(|c| -c).collect();
        signed_g = -signed_g;
    }
    let multidegree = compute_multidegree(n, &coords);
    Ok(Normalized {
        point: ProjPoint {
            coords,
            multidegree,
        },
        content,
        gcd: signed_g,
    })
}

fn compute_multidegree(n: usize, coords: &[MultiPoly]) -> Vec<u32> {
    (0..n)
        .map(|v| {
            coords
                .iter()
                .map(|c| c.degree_in(v))
                .max()
                .and_then(Degree::finite)
                .unwrap_or(0)
        })
        .collect()
}

impl ProjPoint {
    /// Normalizes `raw` and keeps only the point.
    pub fn new(raw: Vec<MultiPoly>) -> Result<Self> {
        Ok(normalize(&raw)?.point)
    }

    /// A point with constant integer coordinates over `num_vars` variables.
    pub fn from_integers(num_vars: usize, coords: &[i64]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|&c| MultiPoly::constant(num_vars, c))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    /// The `n` of the ambient projective space.
    pub fn dim_n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.coords[0].num_vars()
    }

    /// `e_i = max_j deg_i(f_j)` for each variable.
    pub fn multidegree(&self) -> &[u32] {
        &self.multidegree
    }

    pub fn is_constant(&self) -> bool {
        self.multidegree.iter().all(|&e| e == 0)
    }

    /// Integer coordinates of a constant point.
    pub fn constant_coords(&self) -> Option<Vec<BigInt>> {
        self.coords.iter().map(|c| c.constant_value()).collect()
    }

    /// The tuple of coefficients of `z_i^{e_i}` in each coordinate, as
    /// polynomials in the remaining variables.
    pub fn leading_tuple(&self, var: usize) -> Result<Vec<MultiPoly>> {
        if var >= self.num_vars() {
            return Err(Error::VarIndex {
                index: var,
                num_vars: self.num_vars(),
            });
        }
        let e = self.multidegree[var] as usize;
        Ok(self
            .coords
            .iter()
            .map(|c| {
                let mut cs = c.coefficients_in(var);
                let lead = if cs.len() == e + 1 {
                    cs.pop().expect("nonempty")
                } else {
                    MultiPoly::zero(c.num_vars())
                };
                lead.drop_var(var)
            })
            .collect())
    }

    /// Restricts the point to the fiber `z_i = infinity`: the leading tuple,
    /// re-normalized, with the removed content and gcd recorded.
    pub fn leading_restriction(&self, var: usize) -> Result<(ProjPoint, CorrectionLedger)> {
        let raw = self.leading_tuple(var)?;
        let nz = normalize(&raw)?;
        let ledger = CorrectionLedger {
            content_factors: factor_integer(&nz.content),
            content: nz.content,
            gcd: nz.gcd,
        };
        Ok((nz.point, ledger))
    }

    /// Substitutes the rational point `(x0 : x1)` for variable `var`, using the
    /// homogenization of degree `e_var`. Returns the raw (unnormalized) tuple.
    pub fn specialize(&self, var: usize, x0: &BigInt, x1: &BigInt) -> Vec<MultiPoly> {
        let e = self.multidegree[var];
        self.coords
            .iter()
            .map(|c| c.specialize_homogeneous(var, e, x0, x1).drop_var(var))
            .collect()
    }

    /// Sum of squared coordinate values for a constant point.
    pub fn norm_sq(&self) -> Option<BigInt> {
        self.constant_coords()
            .map(|cs| cs.iter().map(|c| c * c).sum())
    }

    pub fn display_with(&self, names: &dyn Fn(usize) -> String) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.display_with(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&super::poly::var_name))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let raw = super::parse::parse_tuple(&s, None).map_err(serde::de::Error::custom)?;
        ProjPoint::new(raw).map_err(serde::de::Error::custom)
    }
}
