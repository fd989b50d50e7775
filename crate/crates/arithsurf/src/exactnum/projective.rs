//! Points of Pⁿ(ℚ) in a canonical integer representation, so that equality
//! and set membership are plain structural comparisons.

use super::rational::ExactRational;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A projective rational point stored as coprime integers with the first
/// nonzero coordinate positive. The constructor enforces both invariants, so
/// two equal points always compare equal componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl ProjectivePoint {
    /// Normalize arbitrary integer homogeneous coordinates.
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let mut g = BigInt::zero();
        for c in &coords {
            g = g.gcd(c);
        }
        let mut coords: Vec<BigInt> = coords.into_iter().map(|c| c / &g).collect();
        if coords
            .iter()
            .find(|c| !c.is_zero())
            .map(Signed::is_negative)
            == Some(true)
        {
            for c in &mut coords {
                *c = -std::mem::take(c);
            }
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clear denominators and normalize.
    pub fn from_rationals(coords: &[ExactRational]) -> Result<Self> {
        let mut lcm = BigInt::one();
        for c in coords {
            lcm = lcm.lcm(c.denom());
        }
        Self::new(
            coords
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Number of coordinates (n+1 for a point of Pⁿ).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Decimal digit count of the largest coordinate.
    pub fn max_digits(&self) -> usize {
        self.coords
            .iter()
            .map(|c| c.to_string().trim_start_matches('-').len())
            .max()
            .unwrap_or(1)
    }
}

impl std::fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Normalize a rational coordinate tuple into the canonical representative.
pub fn normalize_projective(coords: &[ExactRational]) -> Result<ProjectivePoint> {
    ProjectivePoint::from_rationals(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn normalization_examples() {
        let p = ProjectivePoint::from_i64(&[2, 4, 6]).unwrap();
        assert_eq!(p, ProjectivePoint::from_i64(&[1, 2, 3]).unwrap());
        let q = ProjectivePoint::from_i64(&[-1, 2]).unwrap();
        assert_eq!(q.coords(), &[BigInt::from(1), BigInt::from(-2)]);
        let r = normalize_projective(&[rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(r, ProjectivePoint::from_i64(&[3, 2]).unwrap());
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(ProjectivePoint::from_i64(&[0, 0, 0]), Err(Error::ZeroPoint));
    }

    #[test]
    fn idempotent() {
        let p = ProjectivePoint::from_i64(&[-6, 0, 9, -3]).unwrap();
        let again = ProjectivePoint::new(p.coords().to_vec()).unwrap();
        assert_eq!(p, again);
        // first nonzero coordinate positive, gcd one
        assert!(p.coords()[0] > BigInt::from(0));
    }

    proptest::proptest! {
        #[test]
        fn normalization_invariants(a in -60i64..60, b in -60i64..60, c in -60i64..60,
                                    d1 in 1i64..9, d2 in 1i64..9, d3 in 1i64..9) {
            proptest::prop_assume!(a != 0 || b != 0 || c != 0);
            let p = normalize_projective(&[rat(a, d1), rat(b, d2), rat(c, d3)]).unwrap();
            let again = ProjectivePoint::new(p.coords().to_vec()).unwrap();
            proptest::prop_assert_eq!(&p, &again);
            let mut g = BigInt::from(0);
            for x in p.coords() {
                g = num_integer::Integer::gcd(&g, x);
            }
            proptest::prop_assert_eq!(g, BigInt::from(1));
            let first = p.coords().iter().find(|x| !num_traits::Zero::is_zero(*x)).unwrap();
            proptest::prop_assert!(first > &BigInt::from(0));
        }
    }
}
