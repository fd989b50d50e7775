//! Modular arithmetic: residues against prime moduli, Legendre symbols,
//! square roots mod p (direct exponentiation for p ≡ 3 mod 4, Tonelli–Shanks
//! otherwise, with a deterministic non-residue scan), and the Chinese
//! remainder combination used to satisfy several primes at once.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Deterministic Miller–Rabin witness set, sufficient for all n < 3.3·10²⁴;
/// for larger inputs the same bases make the test probabilistic, far beyond
/// anything this crate feeds it.
const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin primality test.
pub fn is_prime(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    for b in MR_BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'base: for b in MR_BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2u32), n);
            if x == n_minus_1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Canonical representative of `a` in `[0, m)`.
pub fn mod_norm(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

/// Inverse of `a` mod `m`, when `gcd(a, m) = 1`.
pub fn mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(mod_norm(&e.x, m))
    } else {
        None
    }
}

/// Legendre symbol (a/p) for an odd prime p: 0, 1 or −1.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let a = mod_norm(a, p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - BigInt::one()) >> 1;
    let s = a.modpow(&e, p);
    if s.is_one() {
        1
    } else {
        -1
    }
}

/// Square root of `a` modulo the odd prime `p`, returning the smaller of the
/// two representatives, or `None` for a non-residue. Deterministic: the
/// Tonelli–Shanks non-residue is found by scanning 2, 3, 4, …
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = mod_norm(a, p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if legendre(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let r = if (p % BigInt::from(4u32)) == BigInt::from(3u32) {
        let e = (p + &one) >> 2;
        a.modpow(&e, p)
    } else {
        // Tonelli–Shanks: p − 1 = q·2^s with q odd
        let p_minus_1 = p - &one;
        let s = p_minus_1.trailing_zeros().unwrap_or(0);
        let q = &p_minus_1 >> s;
        let mut z = BigInt::from(2u32);
        while legendre(&z, p) != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = z.modpow(&q, p);
        let mut t = a.modpow(&q, p);
        let mut r = a.modpow(&((&q + &one) >> 1), p);
        while !t.is_one() {
            let mut i = 0u64;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = t2.modpow(&BigInt::from(2u32), p);
                i += 1;
            }
            let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
            m = i;
            c = b.modpow(&BigInt::from(2u32), p);
            t = (&t * &c) % p;
            r = (&r * &b) % p;
        }
        r
    };
    let other = p - &r;
    Some(r.min(other))
}

/// A residue class against a prime modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    value: BigInt,
    modulus: BigInt,
}

impl Residue {
    /// Reduce `value` into `[0, modulus)`; the modulus must be prime.
    pub fn new(value: BigInt, modulus: BigInt) -> Result<Self> {
        if !is_prime(&modulus) {
            return Err(Error::NonPrimeModulus(modulus.to_string()));
        }
        Ok(Residue {
            value: mod_norm(&value, &modulus),
            modulus,
        })
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Square root within a residue class (odd prime modulus), smaller
/// representative, or `None` for a non-residue.
pub fn sqrt_mod(a: &Residue) -> Option<Residue> {
    let r = sqrt_mod_prime(&a.value, &a.modulus)?;
    Some(Residue {
        value: r,
        modulus: a.modulus.clone(),
    })
}

/// Least nonnegative solution of a system of congruences with pairwise
/// distinct prime moduli.
pub fn crt(residues: &[Residue]) -> Result<BigInt> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for r in residues {
        if (&m % r.modulus()).is_zero() {
            return Err(Error::RepeatedModulus(r.modulus().to_string()));
        }
        // x' ≡ x (mod m), x' ≡ r (mod r.modulus)
        let inv = mod_inv(&m, r.modulus())
            .ok_or_else(|| Error::RepeatedModulus(r.modulus().to_string()))?;
        let t = mod_norm(&((r.value() - &x) * inv), r.modulus());
        x += &m * t;
        m *= r.modulus();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn res(v: i64, m: i64) -> Residue {
        Residue::new(BigInt::from(v), BigInt::from(m)).unwrap()
    }

    #[test]
    fn sqrt_mod_examples() {
        assert_eq!(sqrt_mod(&res(2, 7)).unwrap().value(), &BigInt::from(3));
        assert_eq!(sqrt_mod(&res(3, 7)), None);
        assert_eq!(sqrt_mod(&res(0, 11)).unwrap().value(), &BigInt::from(0));
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[res(2, 3), res(3, 5)]).unwrap(), BigInt::from(8));
        assert_eq!(crt(&[res(0, 7)]).unwrap(), BigInt::from(0));
        assert_eq!(
            crt(&[res(1, 2), res(1, 3), res(1, 5)]).unwrap(),
            BigInt::from(1)
        );
        assert!(matches!(
            crt(&[res(1, 5), res(2, 5)]),
            Err(Error::RepeatedModulus(_))
        ));
    }

    #[test]
    fn residue_requires_prime_modulus() {
        assert!(Residue::new(BigInt::from(1), BigInt::from(10)).is_err());
    }

    #[test]
    fn primality_basics() {
        for p in [2u32, 3, 5, 101, 103, 7919] {
            assert!(is_prime(&BigInt::from(p)), "{p}");
        }
        for c in [1u32, 4, 9, 100, 561, 7917] {
            assert!(!is_prime(&BigInt::from(c)), "{c}");
        }
    }

    proptest! {
        #[test]
        fn sqrt_of_square_is_present(r in 0i64..500, pick in 0usize..3) {
            let p = BigInt::from([101i64, 103, 10007][pick]);
            let sq = mod_norm(&BigInt::from(r * r), &p);
            let root = sqrt_mod_prime(&sq, &p).expect("square must have a root");
            prop_assert_eq!(mod_norm(&(&root * &root), &p), sq);
        }

        #[test]
        fn crt_reduces_to_inputs(a in 0i64..3, b in 0i64..5, c in 0i64..11) {
            let rs = [res(a, 3), res(b, 5), res(c, 11)];
            let x = crt(&rs).unwrap();
            for r in &rs {
                prop_assert_eq!(mod_norm(&x, r.modulus()), r.value().clone());
            }
            prop_assert!(x >= BigInt::from(0) && x < BigInt::from(3 * 5 * 11));
        }
    }
}
