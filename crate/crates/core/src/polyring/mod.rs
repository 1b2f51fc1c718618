//! Exact arithmetic in `Z[z_1..z_d]` and canonical projective points.

mod eval;
mod gcd;
mod parse;
mod point;
mod poly;

pub use eval::{eval_complex, eval_real, Evaluated};
pub use gcd::{gcd, gcd_many};
pub use parse::{parse_binary_form, parse_poly, parse_poly_in, parse_tuple};
pub use point::{factor_integer, normalize, CorrectionLedger, Factorization, Normalized, ProjPoint};
pub use poly::{Degree, Monomial, MultiPoly};

use crate::error::Result;

/// Degree of `f` in the variable with zero-based index `i`.
pub fn partial_degree(f: &MultiPoly, i: usize) -> Result<Degree> {
    f.partial_degree(i)
}
