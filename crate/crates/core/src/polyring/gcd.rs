//! Multivariate gcd via primitive pseudo-remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::{Degree, MultiPoly};

/// Greatest common divisor in `Z[z_1..z_d]`, with positive leading coefficient.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.num_vars(), b.num_vars(), "gcd of polynomials in different rings");
    if a.is_zero() {
        return b.clone().with_sign_positive();
    }
    if b.is_zero() {
        return a.clone().with_sign_positive();
    }
    if let (Some(x), Some(y)) = (a.constant_value(), b.constant_value()) {
        return MultiPoly::constant(a.num_vars(), x.gcd(&y));
    }
    let v = main_var(a).max(main_var(b)).expect("non-constant operand");
    let (ca, pa) = content_in(a, v);
    let (cb, pb) = content_in(b, v);
    let c = gcd(&ca, &cb);
    let g = if !pa.depends_on(v) || !pb.depends_on(v) {
        MultiPoly::one(a.num_vars())
    } else {
        primitive_prs(pa, pb, v)
    };
    (&c * &g).with_sign_positive()
}

pub fn gcd_many<'a, I: IntoIterator<Item = &'a MultiPoly>>(num_vars: usize, polys: I) -> MultiPoly {
    let mut g = MultiPoly::zero(num_vars);
    for p in polys {
        g = gcd(&g, p);
        if g.is_constant() && g.constant_value().is_some_and(|c| c.is_one()) {
            break;
        }
    }
    g
}

fn main_var(p: &MultiPoly) -> Option<usize> {
    (0..p.num_vars()).rev().find(|&v| p.depends_on(v))
}

/// Splits `p` into its content with respect to `v` (a polynomial free of `v`)
/// and the primitive part.
pub(crate) fn content_in(p: &MultiPoly, v: usize) -> (MultiPoly, MultiPoly) {
    let coeffs = p.coefficients_in(v);
    let c = gcd_many(p.num_vars(), coeffs.iter());
    if c.is_zero() {
        return (c, p.clone());
    }
    let c = if leading_in(p, v).is_some_and(|lc| is_negative_leading(&lc)) {
        -c
    } else {
        c
    };
    let pp = p.div_exact(&c).expect("content divides polynomial");
    (c, pp)
}

fn leading_in(p: &MultiPoly, v: usize) -> Option<MultiPoly> {
    p.coefficients_in(v).pop()
}

fn is_negative_leading(p: &MultiPoly) -> bool {
    p.leading_coefficient()
        .is_some_and(|c| c < &BigInt::zero())
}

fn primitive_prs(mut a: MultiPoly, mut b: MultiPoly, v: usize) -> MultiPoly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = a.pseudo_rem(&b, v);
        if r.is_zero() {
            return content_in(&b, v).1;
        }
        if r.degree_in(v) == Degree::Finite(0) {
            return MultiPoly::one(a.num_vars());
        }
        a = b;
        b = content_in(&r, v).1;
    }
}
