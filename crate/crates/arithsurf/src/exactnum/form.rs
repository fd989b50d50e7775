//! Homogeneous forms with integer coefficients, plus the small rational
//! polynomial type used to build them by substitution (fiber equations are
//! quartics restricted to pencils of planes, so they are assembled from
//! products of linear forms with rational parameters).

use super::projective::ProjectivePoint;
use super::rational::ExactRational;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A multivariate polynomial over ℚ in a fixed number of variables. Only a
/// construction tool: finished objects become [`HomogeneousForm`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, ExactRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: ExactRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The i-th variable.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, ExactRational::one());
        p
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(ExactRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-ExactRational::one()))
    }

    pub fn scale(&self, c: &ExactRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Vec<u32>, ExactRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(e.clone()).or_insert_with(ExactRational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, ExactRational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// A homogeneous form with integer coefficients: the degree is fixed and
/// every exponent tuple sums to it. Stored primitive is not required, but
/// the [`Poly`] conversion produces primitive forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl HomogeneousForm {
    /// Build from explicit integer terms; rejects exponent tuples of the
    /// wrong length or total degree, merges duplicates, drops zeros.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (BigInt, Vec<u32>)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    form: nvars,
                    point: e.len(),
                });
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::DegreeMismatch);
            }
            let entry = map.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                map.remove(&e);
            }
        }
        Ok(HomogeneousForm {
            nvars,
            degree,
            terms: map,
        })
    }

    pub fn from_i64_terms(nvars: usize, degree: u32, terms: &[(i64, &[u32])]) -> Result<Self> {
        Self::from_terms(
            nvars,
            degree,
            terms.iter().map(|(c, e)| (BigInt::from(*c), e.to_vec())),
        )
    }

    /// Convert a homogeneous [`Poly`]: clears denominators and divides out
    /// the integer content, keeping the orientation of the input.
    pub fn from_poly(p: &Poly) -> Result<Self> {
        if p.terms.is_empty() {
            return Err(Error::ZeroForm);
        }
        let degree = p
            .terms
            .keys()
            .next()
            .map(|e| e.iter().sum::<u32>())
            .unwrap();
        if p.terms.keys().any(|e| e.iter().sum::<u32>() != degree) {
            return Err(Error::NotHomogeneous);
        }
        let mut lcm = BigInt::one();
        for c in p.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: BTreeMap<Vec<u32>, BigInt> = p
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.numer() * (&lcm / c.denom())))
            .collect();
        let mut content = BigInt::zero();
        for c in ints.values() {
            content = content.gcd(c);
        }
        for c in ints.values_mut() {
            *c /= &content;
        }
        Ok(HomogeneousForm {
            nvars: p.nvars,
            degree,
            terms: ints,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Exact value at integer coordinates.
    pub fn evaluate_at(&self, coords: &[BigInt]) -> Result<BigInt> {
        if coords.len() != self.nvars {
            return Err(Error::ArityMismatch {
                form: self.nvars,
                point: coords.len(),
            });
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in coords.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact value at the normalized coordinates of a projective point;
    /// zero exactly when the point lies on the hypersurface.
    pub fn evaluate(&self, p: &ProjectivePoint) -> Result<BigInt> {
        self.evaluate_at(p.coords())
    }

    pub fn vanishes_at(&self, p: &ProjectivePoint) -> Result<bool> {
        Ok(self.evaluate(p)?.is_zero())
    }

    /// All partial derivatives evaluated at integer coordinates.
    pub fn gradient_at(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        if coords.len() != self.nvars {
            return Err(Error::ArityMismatch {
                form: self.nvars,
                point: coords.len(),
            });
        }
        let mut grad = vec![BigInt::zero(); self.nvars];
        for (e, c) in &self.terms {
            for i in 0..self.nvars {
                if e[i] == 0 {
                    continue;
                }
                let mut t = c * BigInt::from(e[i]);
                for (j, (x, &k)) in coords.iter().zip(e).enumerate() {
                    let k = if j == i { k - 1 } else { k };
                    for _ in 0..k {
                        t *= x;
                    }
                }
                grad[i] += t;
            }
        }
        Ok(grad)
    }

    /// Restrict to the line s·p + t·q: coefficients of the binary form in
    /// (s, t), ascending in the power of t (index k holds s^{d-k} t^k).
    pub fn restrict_to_line(&self, p: &[BigInt], q: &[BigInt]) -> Result<Vec<BigInt>> {
        if p.len() != self.nvars || q.len() != self.nvars {
            return Err(Error::ArityMismatch {
                form: self.nvars,
                point: p.len(),
            });
        }
        let d = self.degree as usize;
        let mut out = vec![BigInt::zero(); d + 1];
        for (e, c) in &self.terms {
            // expand ∏ (s·p_i + t·q_i)^{e_i} as a polynomial in t of degree d
            let mut factor = vec![BigInt::one()];
            for i in 0..self.nvars {
                for _ in 0..e[i] {
                    let mut next = vec![BigInt::zero(); factor.len() + 1];
                    for (k, f) in factor.iter().enumerate() {
                        next[k] += f * &p[i];
                        next[k + 1] += f * &q[i];
                    }
                    factor = next;
                }
            }
            for (k, f) in factor.into_iter().enumerate() {
                out[k] += c * f;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    /// x⁴+y⁴−z⁴−w⁴ assembled from terms.
    fn quartic() -> HomogeneousForm {
        HomogeneousForm::from_i64_terms(
            4,
            4,
            &[
                (1, &[4, 0, 0, 0]),
                (1, &[0, 4, 0, 0]),
                (-1, &[0, 0, 4, 0]),
                (-1, &[0, 0, 0, 4]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = quartic();
        let on = ProjectivePoint::from_i64(&[1, 1, 1, 1]).unwrap();
        assert_eq!(f.evaluate(&on).unwrap(), BigInt::zero());
        let off = ProjectivePoint::from_i64(&[1, 2, 0, 0]).unwrap();
        assert_eq!(f.evaluate(&off).unwrap(), BigInt::from(17));
    }

    #[test]
    fn arity_checked() {
        let f = quartic();
        let p = ProjectivePoint::from_i64(&[1, 2, 3]).unwrap();
        assert!(matches!(f.evaluate(&p), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn poly_substitution_builds_primitive_forms() {
        // (x + (1/2)y)² · y expands to x²y + xy² + y³/4, primitive 4x²y+4xy²+y³
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let lin = x.add(&y.scale(&rat(1, 2)));
        let p = lin.pow(2).mul(&y);
        let f = HomogeneousForm::from_poly(&p).unwrap();
        let expect =
            HomogeneousForm::from_i64_terms(2, 3, &[(4, &[2, 1]), (4, &[1, 2]), (1, &[0, 3])])
                .unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let x = Poly::var(2, 0);
        let p = x.add(&x.pow(2));
        assert_eq!(HomogeneousForm::from_poly(&p), Err(Error::NotHomogeneous));
    }

    #[test]
    fn line_restriction_matches_direct_evaluation() {
        let f = quartic();
        let p: Vec<BigInt> = [1i64, 0, 1, 0].iter().map(|&c| BigInt::from(c)).collect();
        let q: Vec<BigInt> = [0i64, 1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let coeffs = f.restrict_to_line(&p, &q).unwrap();
        // the line x=z, y=w lies on the quartic: identically zero
        assert!(coeffs.iter().all(|c| c.is_zero()));

        let r: Vec<BigInt> = [1i64, 2, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let coeffs = f.restrict_to_line(&p, &r).unwrap();
        // evaluate the binary form at (s,t)=(2,3) against direct substitution
        let (s, t) = (BigInt::from(2), BigInt::from(3));
        let pt: Vec<BigInt> = p.iter().zip(&r).map(|(a, b)| a * &s + b * &t).collect();
        let direct = f.evaluate_at(&pt).unwrap();
        let mut via = BigInt::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mut term = c.clone();
            for _ in 0..(4 - k) {
                term *= &s;
            }
            for _ in 0..k {
                term *= &t;
            }
            via += term;
        }
        assert_eq!(via, direct);
    }
}
