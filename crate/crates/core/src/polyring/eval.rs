//! Floating-point evaluation with a propagated error bound.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Result of evaluating a polynomial in double precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluated {
    pub value: Complex64,
    /// Bound on `|value - exact|`; infinite when `overflow` is set.
    pub error_bound: f64,
    pub overflow: bool,
}

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Evaluates `f` at the complex point `z`.
///
/// Each term is formed by repeated multiplication; the bound is the standard
/// `gamma_k * sum |c| |z|^e` estimate with `k` covering coefficient rounding,
/// the monomial products (each complex product costs at most `2 sqrt 2` units)
/// and the summation.
pub fn eval_complex(f: &MultiPoly, z: &[Complex64]) -> Result<Evaluated> {
    if z.len() != f.num_vars() {
        return Err(Error::VarMismatch {
            expected: f.num_vars(),
            found: z.len(),
        });
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0f64;
    let mut max_deg = 0u64;
    for (m, c) in f.terms() {
        let cf = c.to_f64().unwrap_or(f64::INFINITY);
        let mut t = Complex64::new(cf, 0.0);
        let mut abs = cf.abs();
        for (zi, &e) in z.iter().zip(&m.0) {
            for _ in 0..e {
                t *= zi;
            }
            abs *= zi.norm().powi(e as i32);
        }
        max_deg = max_deg.max(m.total_degree());
        value += t;
        magnitude += abs;
    }
    let k = 1.0 + 3.0 * max_deg as f64 + f.len() as f64;
    let gamma = k * UNIT_ROUNDOFF / (1.0 - k * UNIT_ROUNDOFF);
    let error_bound = gamma * magnitude;
    let overflow = !value.re.is_finite() || !value.im.is_finite() || !error_bound.is_finite();
    Ok(Evaluated {
        value,
        error_bound: if overflow { f64::INFINITY } else { error_bound },
        overflow,
    })
}

/// Evaluates at a real point (no complex overhead).
pub fn eval_real(f: &MultiPoly, x: &[f64]) -> f64 {
    let mut v = 0.0;
    for (m, c) in f.terms() {
        let mut t = c.to_f64().unwrap_or(f64::INFINITY);
        for (xi, &e) in x.iter().zip(&m.0) {
            t *= xi.powi(e as i32);
        }
        v += t;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly_in;

    #[test]
    fn examples() {
        let f = parse_poly_in("z1^2 + 1", 1).unwrap();
        let r = eval_complex(&f, &[Complex64::new(0.0, 1.0)]).unwrap();
        assert!(r.value.norm() <= r.error_bound);

        let g = parse_poly_in("z1*z2", 2).unwrap();
        let r = eval_complex(&g, &[Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)]).unwrap();
        assert_eq!(r.value, Complex64::new(6.0, 0.0));
    }

    #[test]
    fn large_argument_within_bound() {
        let f = parse_poly_in("3*z1 - 1", 1).unwrap();
        let r = eval_complex(&f, &[Complex64::new(1e15, 0.0)]).unwrap();
        let exact = 3e15 - 1.0;
        assert!((r.value.re - exact).abs() <= r.error_bound);
        assert!(!r.overflow);
    }

    #[test]
    fn overflow_flagged() {
        let f = parse_poly_in("z1^400", 1).unwrap();
        let r = eval_complex(&f, &[Complex64::new(1e10, 0.0)]).unwrap();
        assert!(r.overflow);
        assert!(r.error_bound.is_infinite());
    }
}
