//! The surface x²+y²+z² = 3xyz over the positive integers: Vieta moves,
//! breadth-first orbit enumeration from (1,1,1), and the exhaustive scan
//! that confirms the single-orbit picture at bounded height.

use crate::{Error, Result};
use std::collections::BTreeSet;

/// A positive solution, stored sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkoffTriple {
    x: u64,
    y: u64,
    z: u64,
}

impl MarkoffTriple {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        let [x, y, z] = v;
        if x == 0 {
            return Err(Error::InvalidInput("coordinates must be positive".into()));
        }
        let lhs = x as u128 * x as u128 + y as u128 * y as u128 + z as u128 * z as u128;
        let rhs = 3 * x as u128 * y as u128 * z as u128;
        if lhs != rhs {
            return Err(Error::NotOnSurface);
        }
        Ok(MarkoffTriple { x, y, z })
    }

    pub fn coords(&self) -> (u64, u64, u64) {
        (self.x, self.y, self.z)
    }

    pub fn max_coord(&self) -> u64 {
        self.z
    }
}

impl std::fmt::Display for MarkoffTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// The ≤ 3 neighbours obtained by replacing one coordinate c with
/// 3·(product of the others) − c. The Vieta identity keeps every result on
/// the surface; non-positive results are discarded (none arise for positive
/// triples, since the two roots multiply to a positive number).
pub fn vieta_moves(t: &MarkoffTriple) -> BTreeSet<MarkoffTriple> {
    let (x, y, z) = t.coords();
    let mut out = BTreeSet::new();
    for (keep_a, keep_b, other) in [(x, y, z), (x, z, y), (y, z, x)] {
        let prod = 3u128 * keep_a as u128 * keep_b as u128;
        if prod <= other as u128 {
            continue;
        }
        let replaced = prod - other as u128;
        if let Ok(replaced) = u64::try_from(replaced) {
            out.insert(
                MarkoffTriple::new(keep_a, keep_b, replaced)
                    .expect("Vieta move stays on the surface"),
            );
        }
    }
    out
}

/// Breadth-first closure of (1,1,1) under Vieta moves, pruned to max
/// coordinate ≤ bound. Pruning is safe here: from any sorted solution the
/// move on the largest coordinate descends toward (1,1,1), so no in-bound
/// triple is reachable only through out-of-bound ones — the equality with
/// [`exhaustive_solutions`] asserts exactly that.
pub fn orbit(bound: u64) -> BTreeSet<MarkoffTriple> {
    assert!(bound >= 1);
    let root = MarkoffTriple::new(1, 1, 1).expect("(1,1,1) is a solution");
    let mut seen = BTreeSet::new();
    let mut frontier = vec![root];
    seen.insert(root);
    while let Some(t) = frontier.pop() {
        for next in vieta_moves(&t) {
            if next.max_coord() <= bound && seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// Direct scan: all sorted positive triples with z ≤ bound. For fixed (x, y)
/// the equation is quadratic in z, so only a discriminant check per pair is
/// needed; x-slices go to workers.
pub fn exhaustive_solutions(bound: u64) -> BTreeSet<MarkoffTriple> {
    assert!(bound >= 1);
    let slice = |x: u64| -> Vec<MarkoffTriple> {
        let mut found = Vec::new();
        for y in x..=bound {
            // z² − 3xy·z + (x²+y²) = 0
            let p = 3 * x as u128 * y as u128;
            let q = x as u128 * x as u128 + y as u128 * y as u128;
            let disc = match (p * p).checked_sub(4 * q) {
                Some(d) => d,
                None => continue,
            };
            let s = disc.isqrt();
            if s * s != disc {
                continue;
            }
            for root in [p.checked_sub(s), p.checked_add(s)] {
                let Some(num) = root else { continue };
                if num % 2 != 0 {
                    continue;
                }
                let z = num / 2;
                if z >= y as u128 && z <= bound as u128 {
                    found.push(
                        MarkoffTriple::new(x, y, z as u64).expect("roots solve the equation"),
                    );
                }
            }
        }
        found
    };
    let rows: Vec<u64> = (1..=bound).collect();
    #[cfg(feature = "parallel")]
    {
        if crate::par::parallel_active() {
            use rayon::prelude::*;
            return rows.par_iter().flat_map_iter(|&x| slice(x)).collect();
        }
    }
    rows.iter().flat_map(|&x| slice(x)).collect()
}

/// Orbit enumeration and exhaustive scan agree at this bound.
pub fn verify_single_orbit(bound: u64) -> bool {
    orbit(bound) == exhaustive_solutions(bound)
}
