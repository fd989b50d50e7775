//! Prescribed-residue solving on variant A: given finitely many primes ℓ and
//! a target surface point modulo each, produce one rational point congruent
//! to every target.
//!
//! Pipeline, per prime: scan the finite field for a solution of
//!
//! ```text
//! 4v²(4z₀+8r−7) = f′(r)²,   r = 9(1/b²−1/4),   s = −(6/b)(r−2) − b,
//! a²+b² = 2,   α²+β² = 1,   v = aβ+sα ≠ 0
//! ```
//!
//! then lift (a,b) and (α,β) to rational conic points matching those residues
//! at every prime at once (chord slopes found mod ℓ, combined by CRT), drive
//! the seed (1,1,2) through rotate–double–rotate–double so its λ-coordinate
//! hits the target residue, and finish with one exact rotation inside the
//! conic fiber. The excluded residues 4z₀ ≡ 25, −11 are where the search
//! curve degenerates; below the configurable floor l₀ the scan may legally
//! come up empty and reports that instead of inventing an answer.

use super::{
    conic_chord_point, double_on_fiber, rotate, AffinePoint, FixedCoord, Rotation, Variant,
};
use crate::exactnum::ProjectivePoint;
use crate::exactnum::{crt, is_prime, mod_inv, mod_norm, sqrt_mod_prime, ExactRational, Residue};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Default floor for usable primes. Not pinned by theory here, only by the
/// requirement that the residue search is guaranteed nonempty for ℓ large
/// enough; exhaustion below the true threshold is reported, not fatal.
pub const DEFAULT_L0: u64 = 100;

/// The surface: everything in this module works on variant A.
const V: Variant = Variant::A;

/// Arithmetic in 𝔽_ℓ, values normalized to [0, ℓ).
struct Fp<'a> {
    p: &'a BigInt,
}

impl<'a> Fp<'a> {
    fn norm(&self, a: &BigInt) -> BigInt {
        mod_norm(a, self.p)
    }

    fn int(&self, a: i64) -> BigInt {
        self.norm(&BigInt::from(a))
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.norm(&(a + b))
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.norm(&(a - b))
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.norm(&(a * b))
    }

    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        mod_inv(a, self.p)
    }

    fn div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(self.mul(a, &self.inv(b)?))
    }

    fn sqrt(&self, a: &BigInt) -> Option<BigInt> {
        sqrt_mod_prime(a, self.p)
    }

    /// f(λ) of the surface, reduced.
    fn f(&self, lambda: &BigInt) -> BigInt {
        let [c0, c1, c2, c3] = V.f_coeffs().map(BigInt::from);
        self.norm(&(((c3 * lambda + c2) * lambda + c1) * lambda + c0))
    }

    /// f′(λ) of the surface, reduced.
    fn f_prime(&self, lambda: &BigInt) -> BigInt {
        let [_, c1, c2, c3] = V.f_coeffs().map(BigInt::from);
        self.norm(&((BigInt::from(3) * c3 * lambda + BigInt::from(2) * c2) * lambda + c1))
    }
}

/// A prime ℓ together with a target point of the surface over 𝔽_ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTarget {
    ell: BigInt,
    xi: BigInt,
    mu: BigInt,
    lambda: BigInt,
}

impl ResidueTarget {
    /// Validate every invariant: ℓ prime and above the floor, the point on
    /// the surface mod ℓ with a nondegenerate conic fiber, and λ avoiding
    /// the two excluded residues 25/4 and −11/4.
    pub fn new(ell: BigInt, xi: BigInt, mu: BigInt, lambda: BigInt, l0: u64) -> Result<Self> {
        if !is_prime(&ell) {
            return Err(Error::NonPrimeModulus(ell.to_string()));
        }
        if ell <= BigInt::from(l0) {
            return Err(Error::InvalidTarget(format!(
                "prime {ell} not above the floor {l0}"
            )));
        }
        let fp = Fp { p: &ell };
        let (xi, mu, lambda) = (fp.norm(&xi), fp.norm(&mu), fp.norm(&lambda));
        let fl = fp.f(&lambda);
        if fl.is_zero() {
            return Err(Error::InvalidTarget(
                "singular conic fiber: f(lambda) = 0".into(),
            ));
        }
        if fp.add(&fp.mul(&xi, &xi), &fp.mul(&mu, &mu)) != fl {
            return Err(Error::InvalidTarget("target off the surface".into()));
        }
        let four_lambda = fp.mul(&fp.int(4), &lambda);
        if four_lambda == fp.int(25) || four_lambda == fp.int(-11) {
            return Err(Error::InvalidTarget(
                "lambda residue 25/4 or -11/4 excluded".into(),
            ));
        }
        Ok(ResidueTarget {
            ell,
            xi,
            mu,
            lambda,
        })
    }

    pub fn ell(&self) -> &BigInt {
        &self.ell
    }

    pub fn coords(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.xi, &self.mu, &self.lambda)
    }
}

/// One solution of the residue search: seven field elements tied together by
/// the six defining congruences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSolution {
    pub ell: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub r: BigInt,
    pub s: BigInt,
    pub v: BigInt,
}

impl GammaSolution {
    /// Re-check every congruence against the given λ-target.
    pub fn verify(&self, z0: &BigInt) -> bool {
        let fp = Fp { p: &self.ell };
        let two = fp.int(2);
        let sq = |x: &BigInt| fp.mul(x, x);
        let on_c2 = fp.add(&sq(&self.a), &sq(&self.b)) == two;
        let on_c = fp.add(&sq(&self.alpha), &sq(&self.beta)) == fp.int(1);
        let b_inv = match fp.inv(&self.b) {
            Some(i) => i,
            None => return false,
        };
        let r_ok = self.r
            == fp.mul(
                &fp.int(9),
                &fp.sub(&sq(&b_inv), &fp.div(&fp.int(1), &fp.int(4)).unwrap()),
            );
        let s_ok = self.s
            == fp.sub(
                &fp.norm(&-fp.mul(&fp.mul(&fp.int(6), &b_inv), &fp.sub(&self.r, &two))),
                &self.b,
            );
        let v_ok = self.v == fp.add(&fp.mul(&self.a, &self.beta), &fp.mul(&self.s, &self.alpha))
            && !self.v.is_zero();
        let lhs = fp.mul(
            &fp.mul(&fp.int(4), &sq(&self.v)),
            &fp.add(
                &fp.mul(&fp.int(4), z0),
                &fp.sub(&fp.mul(&fp.int(8), &self.r), &fp.int(7)),
            ),
        );
        let eq = lhs == sq(&fp.f_prime(&self.r));
        on_c2 && on_c && !self.b.is_zero() && r_ok && s_ok && v_ok && eq
    }
}

/// Lazy deterministic scan over the solutions of the residue search, in the
/// fixed order b = 1, 2, … with the smaller square root first.
pub struct GammaScan {
    ell: BigInt,
    z0: BigInt,
    b: BigInt,
    queue: Vec<GammaSolution>,
}

impl GammaScan {
    fn refill(&mut self) {
        let fp = Fp { p: &self.ell };
        while self.queue.is_empty() && self.b < self.ell {
            let b = self.b.clone();
            self.b += 1;
            let b_inv = match fp.inv(&b) {
                Some(i) => i,
                None => continue,
            };
            let quarter = fp.div(&fp.int(1), &fp.int(4)).expect("odd prime");
            let r = fp.mul(&fp.int(9), &fp.sub(&fp.mul(&b_inv, &b_inv), &quarter));
            let s = fp.sub(
                &fp.norm(&-fp.mul(&fp.mul(&fp.int(6), &b_inv), &fp.sub(&r, &fp.int(2)))),
                &b,
            );
            // v² = f′(r)² / (4(4z₀+8r−7)); v must be nonzero
            let denom = fp.add(
                &fp.mul(&fp.int(4), &self.z0),
                &fp.sub(&fp.mul(&fp.int(8), &r), &fp.int(7)),
            );
            if denom.is_zero() {
                continue;
            }
            let fpr = fp.f_prime(&r);
            if fpr.is_zero() {
                continue;
            }
            let q = match fp.div(&fp.mul(&fpr, &fpr), &fp.mul(&fp.int(4), &denom)) {
                Some(q) => q,
                None => continue,
            };
            let v = match fp.sqrt(&q) {
                Some(v) if !v.is_zero() => v,
                _ => continue,
            };
            let a = match fp.sqrt(&fp.sub(&fp.int(2), &fp.mul(&b, &b))) {
                Some(a) if !a.is_zero() => a,
                _ => continue,
            };
            // β = (v−sα)/a turns α²+β² = 1 into a quadratic in α
            let a2s2 = fp.add(&fp.mul(&a, &a), &fp.mul(&s, &s));
            if a2s2.is_zero() {
                continue;
            }
            let disc = fp.sub(
                &fp.mul(&fp.mul(&fp.int(4), &fp.mul(&v, &v)), &fp.mul(&s, &s)),
                &fp.mul(
                    &fp.mul(&fp.int(4), &a2s2),
                    &fp.sub(&fp.mul(&v, &v), &fp.mul(&a, &a)),
                ),
            );
            let sd = match fp.sqrt(&disc) {
                Some(sd) => sd,
                None => continue,
            };
            let half = fp.inv(&fp.mul(&fp.int(2), &a2s2)).expect("nonzero");
            let two_vs = fp.mul(&fp.int(2), &fp.mul(&v, &s));
            let mut alphas = vec![fp.mul(&fp.add(&two_vs, &sd), &half)];
            if !sd.is_zero() {
                alphas.push(fp.mul(&fp.sub(&two_vs, &sd), &half));
            }
            for alpha in alphas {
                let beta = fp
                    .div(&fp.sub(&v, &fp.mul(&s, &alpha)), &a)
                    .expect("a is nonzero");
                let sol = GammaSolution {
                    ell: self.ell.clone(),
                    a: a.clone(),
                    b: b.clone(),
                    alpha,
                    beta,
                    r: r.clone(),
                    s: s.clone(),
                    v: v.clone(),
                };
                debug_assert!(sol.verify(&self.z0));
                self.queue.push(sol);
            }
            self.queue.reverse(); // restore scan order after pushes
        }
    }
}

impl Iterator for GammaScan {
    type Item = GammaSolution;

    fn next(&mut self) -> Option<GammaSolution> {
        if self.queue.is_empty() {
            self.refill();
        }
        self.queue.pop()
    }
}

/// All residue-search solutions modulo ℓ for the λ-target z₀, in scan order.
pub fn gamma_solutions(ell: &BigInt, z0: &BigInt, l0: u64) -> Result<GammaScan> {
    if !is_prime(ell) {
        return Err(Error::NonPrimeModulus(ell.to_string()));
    }
    if *ell <= BigInt::from(l0) {
        return Err(Error::InvalidTarget(format!(
            "prime {ell} not above the floor {l0}"
        )));
    }
    let fp = Fp { p: ell };
    let z0 = fp.norm(z0);
    let four_z0 = fp.mul(&fp.int(4), &z0);
    if four_z0 == fp.int(25) || four_z0 == fp.int(-11) {
        return Err(Error::InvalidTarget(
            "lambda residue 25/4 or -11/4 excluded".into(),
        ));
    }
    Ok(GammaScan {
        ell: ell.clone(),
        z0,
        b: BigInt::one(),
        queue: Vec::new(),
    })
}

/// First solution in scan order, or `GammaExhausted` (legal below the true
/// prime floor, a bug above it).
pub fn gamma_search_mod_l(ell: &BigInt, z0: &BigInt, l0: u64) -> Result<GammaSolution> {
    gamma_solutions(ell, z0, l0)?
        .next()
        .ok_or_else(|| Error::GammaExhausted(ell.to_string()))
}

/// Reduce a rational modulo ℓ; fails when ℓ divides the denominator.
pub fn reduce_rational_mod(q: &ExactRational, ell: &BigInt) -> Result<BigInt> {
    let d = mod_norm(q.denom(), ell);
    let d_inv = mod_inv(&d, ell).ok_or_else(|| Error::BadReduction(ell.to_string()))?;
    Ok(mod_norm(&(mod_norm(q.numer(), ell) * d_inv), ell))
}

type ConicPoint = (ExactRational, ExactRational);

/// Find a rational point on x²+y² = n congruent to the given target modulo
/// every listed prime, moving along chords through `base`. Slopes are found
/// modulo each prime and combined with one CRT. When the chord
/// parametrization misses a target (it covers all but one point of the conic
/// mod ℓ), the base is nudged by the fixed rotation (3/5, 4/5) and the whole
/// search reruns.
pub fn lift_conic_with_congruences(
    n: &ExactRational,
    base: &ConicPoint,
    constraints: &[(BigInt, (BigInt, BigInt))],
) -> Result<ConicPoint> {
    if constraints.is_empty() {
        return Ok(base.clone());
    }
    // the nudge must keep good reduction at every constraint prime, so its
    // hypotenuse may not be one of them; 5 only matters at desk scale
    let nudge = [(3i64, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29)]
        .iter()
        .find(|(_, _, h)| constraints.iter().all(|(ell, _)| *ell != BigInt::from(*h)))
        .map(|&(a, b, h)| {
            Rotation::new(
                ExactRational::new(a.into(), h.into()),
                ExactRational::new(b.into(), h.into()),
            )
            .expect("Pythagorean triple")
        })
        .ok_or_else(|| Error::UnreachableTarget(constraints[0].0.to_string()))?;
    let mut candidate = base.clone();
    'bases: for _ in 0..4 {
        let mut slopes = Vec::with_capacity(constraints.len());
        for (ell, target) in constraints {
            match slope_hitting_target(n, &candidate, ell, target)? {
                Some(m) => slopes.push(Residue::new(m, ell.clone())?),
                None => {
                    // unreachable point of this parametrization: rotate and retry
                    let rotated = rotate_conic(&nudge, &candidate);
                    candidate = rotated;
                    continue 'bases;
                }
            }
        }
        let m = ExactRational::from_integer(crt(&slopes)?);
        let lifted = conic_chord_point(n, &candidate, &m);
        for (ell, target) in constraints {
            let x = reduce_rational_mod(&lifted.0, ell)?;
            let y = reduce_rational_mod(&lifted.1, ell)?;
            if x != mod_norm(&target.0, ell) || y != mod_norm(&target.1, ell) {
                return Err(Error::Internal("conic lift missed its congruence"));
            }
        }
        return Ok(lifted);
    }
    Err(Error::UnreachableTarget(constraints[0].0.to_string()))
}

fn rotate_conic(g: &Rotation, p: &ConicPoint) -> ConicPoint {
    let (c, s) = g.parts();
    (&p.0 * c - &p.1 * s, &p.0 * s + &p.1 * c)
}

/// Scan the ≤ ℓ chord slopes through the base for one whose second
/// intersection reduces to the target.
fn slope_hitting_target(
    n: &ExactRational,
    base: &ConicPoint,
    ell: &BigInt,
    target: &(BigInt, BigInt),
) -> Result<Option<BigInt>> {
    let fp = Fp { p: ell };
    let n_red = reduce_rational_mod(n, ell)?;
    if n_red.is_zero() {
        return Err(Error::InvalidTarget(
            "conic degenerates modulo the prime".into(),
        ));
    }
    let (tx, ty) = (fp.norm(&target.0), fp.norm(&target.1));
    if fp.add(&fp.mul(&tx, &tx), &fp.mul(&ty, &ty)) != n_red {
        return Err(Error::InvalidTarget("conic target off the conic".into()));
    }
    let x0 = reduce_rational_mod(&base.0, ell)?;
    let y0 = reduce_rational_mod(&base.1, ell)?;
    let mut m = BigInt::zero();
    while &m < ell {
        let denom = fp.add(&fp.int(1), &fp.mul(&m, &m));
        if !denom.is_zero() {
            let t = fp
                .div(
                    &fp.norm(&-fp.mul(&fp.int(2), &fp.add(&x0, &fp.mul(&m, &y0)))),
                    &denom,
                )
                .expect("denominator nonzero");
            let x = fp.add(&x0, &t);
            let y = fp.add(&y0, &fp.mul(&m, &t));
            if x == tx && y == ty {
                return Ok(Some(m));
            }
        }
        m += 1;
    }
    Ok(None)
}

/// Solve all targets at once: returns a projective rational point of the
/// surface reducing to every target. See the module docs for the pipeline.
pub fn wwap_solve(targets: &[ResidueTarget]) -> Result<ProjectivePoint> {
    if targets.is_empty() {
        return Err(Error::InvalidTarget("no targets".into()));
    }
    for (i, a) in targets.iter().enumerate() {
        for b in &targets[i + 1..] {
            if a.ell == b.ell {
                return Err(Error::RepeatedModulus(a.ell.to_string()));
            }
        }
    }
    let mut scans: Vec<GammaScan> = targets
        .iter()
        .map(|t| gamma_solutions(&t.ell, &t.lambda, 0))
        .collect::<Result<_>>()?;
    let mut current: Vec<GammaSolution> = Vec::with_capacity(targets.len());
    for (scan, t) in scans.iter_mut().zip(targets) {
        current.push(
            scan.next()
                .ok_or_else(|| Error::GammaExhausted(t.ell.to_string()))?,
        );
    }
    let mut budget = vec![32usize; targets.len()];
    loop {
        match attempt(targets, &current) {
            Ok(point) => return Ok(point),
            Err(err) => {
                let idx = match &err {
                    Error::BadReduction(e) | Error::UnreachableTarget(e) => {
                        targets.iter().position(|t| t.ell.to_string() == *e)
                    }
                    _ => return Err(err),
                }
                .unwrap_or(0);
                if budget[idx] == 0 {
                    return Err(Error::RetryBudgetExhausted);
                }
                budget[idx] -= 1;
                current[idx] = scans[idx]
                    .next()
                    .ok_or_else(|| Error::GammaExhausted(targets[idx].ell.to_string()))?;
            }
        }
    }
}

fn attempt(targets: &[ResidueTarget], gammas: &[GammaSolution]) -> Result<ProjectivePoint> {
    let one = ExactRational::one();
    let two = ExactRational::from_integer(2.into());

    // lift the C₂-points (a,b) through (1,1), all congruences jointly
    let g_constraints: Vec<(BigInt, (BigInt, BigInt))> = gammas
        .iter()
        .map(|g| (g.ell.clone(), (g.a.clone(), g.b.clone())))
        .collect();
    let g_star = lift_conic_with_congruences(&two, &(one.clone(), one.clone()), &g_constraints)?;

    // lift the circle points (α,β) through (1,0)
    let h_constraints: Vec<(BigInt, (BigInt, BigInt))> = gammas
        .iter()
        .map(|g| (g.ell.clone(), (g.alpha.clone(), g.beta.clone())))
        .collect();
    let h_pt =
        lift_conic_with_congruences(&one, &(one.clone(), ExactRational::zero()), &h_constraints)?;
    let h = Rotation::new(h_pt.0, h_pt.1)?;

    // rotate the seed onto g*, double, rotate by h, double
    let seed = AffinePoint::from_i64(V, 1, 1, 2).expect("seed");
    let g = Rotation::between(&(one.clone(), one.clone()), &g_star, &two)?;
    let p1 = rotate(&g, &seed);
    let p2 = double_on_fiber(V, FixedCoord::Xi, &p1)?;
    let p3 = rotate(&h, &p2);
    let w = double_on_fiber(V, FixedCoord::Xi, &p3)?;

    // final in-fiber rotation: match the conic coordinates at every prime
    let mut rho_constraints = Vec::with_capacity(targets.len());
    for t in targets {
        let fp = Fp { p: &t.ell };
        let xi_w = reduce_rational_mod(&w.xi, &t.ell)?;
        let mu_w = reduce_rational_mod(&w.mu, &t.ell)?;
        let lam_w = reduce_rational_mod(&w.lambda, &t.ell)?;
        if lam_w != t.lambda {
            return Err(Error::BadReduction(t.ell.to_string()));
        }
        let n_ell = fp.f(&t.lambda);
        let c = fp
            .div(
                &fp.add(&fp.mul(&xi_w, &t.xi), &fp.mul(&mu_w, &t.mu)),
                &n_ell,
            )
            .expect("f(lambda) nonzero by target invariant");
        let s = fp
            .div(
                &fp.sub(&fp.mul(&xi_w, &t.mu), &fp.mul(&mu_w, &t.xi)),
                &n_ell,
            )
            .expect("f(lambda) nonzero by target invariant");
        rho_constraints.push((t.ell.clone(), (c, s)));
    }
    let rho_pt = lift_conic_with_congruences(
        &one,
        &(one.clone(), ExactRational::zero()),
        &rho_constraints,
    )?;
    let rho = Rotation::new(rho_pt.0, rho_pt.1)?;
    let solution = rotate(&rho, &w);

    for t in targets {
        let xi = reduce_rational_mod(&solution.xi, &t.ell)?;
        let mu = reduce_rational_mod(&solution.mu, &t.ell)?;
        let lam = reduce_rational_mod(&solution.lambda, &t.ell)?;
        if (xi, mu, lam) != (t.xi.clone(), t.mu.clone(), t.lambda.clone()) {
            return Err(Error::BadReduction(t.ell.to_string()));
        }
    }
    let point = solution.to_projective();
    if !V.on_surface(&point) {
        return Err(Error::Internal("solver output off the surface"));
    }
    Ok(point)
}
