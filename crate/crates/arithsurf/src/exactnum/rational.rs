//! The universal scalar: arbitrary-precision reduced rationals, plus the
//! integer-side helpers (valuations, perfect-square detection, squarefree
//! parts) the surface modules lean on.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator. `BigRational` maintains exactly that invariant.
pub type ExactRational = BigRational;

/// Shorthand constructor used all over the crate and its tests.
pub fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"` or `"p/q"` with optional sign, exact.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let denom: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(ExactRational::new(numer, denom))
}

/// Render as `"p"` for integers and `"p/q"` otherwise; inverse of
/// [`parse_rational`] on reduced values.
pub fn format_rational(q: &ExactRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A p-adic valuation: finite, or the +∞ sentinel assigned to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_even(self) -> bool {
        match self {
            Valuation::Finite(v) => v % 2 == 0,
            Valuation::Infinity => true,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// Exact power of `p` dividing the nonzero integer `n`.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let mut v = 0u64;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

/// p-adic valuation of a rational; zero maps to the +∞ sentinel.
/// Caller guarantees `p` prime.
pub fn padic_valuation(q: &ExactRational, p: &BigInt) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinity;
    }
    let vn = int_valuation(q.numer(), p) as i64;
    let vd = int_valuation(q.denom(), p) as i64;
    Valuation::Finite(vn - vd)
}

/// Nonnegative integer square root when `n` is a perfect square.
pub fn int_sqrt_if_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Nonnegative rational square root when `q` is the square of a rational.
/// A reduced fraction is a square exactly when numerator and denominator
/// both are.
pub fn square_root_if_square(q: &ExactRational) -> Option<ExactRational> {
    let rn = int_sqrt_if_square(q.numer())?;
    let rd = int_sqrt_if_square(q.denom())?;
    Some(ExactRational::new(rn, rd))
}

/// The unique squarefree `d` with `n = d·m²` and `sign(d) = sign(n)`.
/// Trial division up to the square root of the shrinking cofactor; complete,
/// intended for moderate inputs.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut rest = n.abs();
    let mut free = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let mut e = 0u64;
        loop {
            let (q, r) = rest.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e % 2 == 1 {
            free *= &d;
        }
        d += 1;
    }
    // rest is now 1 or a prime, hence squarefree
    free *= rest;
    if n.is_negative() {
        free = -free;
    }
    Ok(free)
}
