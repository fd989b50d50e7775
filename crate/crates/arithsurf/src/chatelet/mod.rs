//! Two cubic surfaces t(x²+y²) = f(z, t) with f the homogenization of
//! (cz−7)(z²−2), c = 4 (variant A) and c = 2 (variant B).
//!
//! In the affine chart t ≠ 0 with ξ = x/t, μ = y/t, λ = z/t the surface is
//! ξ²+μ² = f(λ); fixing λ gives a conic, fixing one of ξ, μ gives a genus-1
//! cubic in the other two coordinates. The unit circle acts on the conic
//! direction by rotation, duplication acts along the cubic direction, and
//! composing the two walks rational points anywhere — including, modulo
//! primes, onto prescribed residues (see [`wwap`]).
//!
//! The height-bounded searches at the end verify the two obstruction claims:
//! no rational points on A with |z/t| ≤ √2, and none on B inside a specific
//! 2-adic neighbourhood.

pub mod wwap;

pub use wwap::{
    gamma_search_mod_l, lift_conic_with_congruences, wwap_solve, GammaSolution, ResidueTarget,
    DEFAULT_L0,
};

use crate::cubicgrp::{GroupContext, PlaneCubic};
use crate::exactnum::{ExactRational, HomogeneousForm, Poly, ProjectivePoint};
use crate::{Error, Limits, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Which of the two cubic surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    A,
    B,
}

impl Variant {
    /// Leading coefficient of f: the c in (cλ−7)(λ²−2).
    fn leading(self) -> i64 {
        match self {
            Variant::A => 4,
            Variant::B => 2,
        }
    }

    /// Coefficients of f(λ) = (cλ−7)(λ²−2) = cλ³ − 7λ² − 2cλ + 14,
    /// ascending in degree.
    pub fn f_coeffs(self) -> [i64; 4] {
        let c = self.leading();
        [14, -2 * c, -7, c]
    }

    /// f(λ), exact.
    pub fn f(self, lambda: &ExactRational) -> ExactRational {
        let [c0, c1, c2, c3] = self
            .f_coeffs()
            .map(|c| ExactRational::from_integer(c.into()));
        ((c3 * lambda + c2) * lambda + c1) * lambda + c0
    }

    /// f′(λ), exact.
    pub fn f_prime(self, lambda: &ExactRational) -> ExactRational {
        let [_, c1, c2, c3] = self
            .f_coeffs()
            .map(|c| ExactRational::from_integer(c.into()));
        (c3 * ExactRational::from_integer(3.into()) * lambda
            + c2 * ExactRational::from_integer(2.into()))
            * lambda
            + c1
    }

    /// The projective cubic form t(x²+y²) − (cz−7t)(z²−2t²) in (t:x:y:z).
    pub fn projective_form(self) -> HomogeneousForm {
        let c = self.leading();
        let t = Poly::var(4, 0);
        let x = Poly::var(4, 1);
        let y = Poly::var(4, 2);
        let z = Poly::var(4, 3);
        let f = z
            .scale(&ExactRational::from_integer(c.into()))
            .sub(&t.scale(&ExactRational::from_integer(7.into())))
            .mul(
                &z.pow(2)
                    .sub(&t.pow(2).scale(&ExactRational::from_integer(2.into()))),
            );
        let form = t.mul(&x.pow(2).add(&y.pow(2))).sub(&f);
        HomogeneousForm::from_poly(&form).expect("fixed form")
    }

    /// Exact membership test in (t:x:y:z) coordinates.
    pub fn on_surface(self, p: &ProjectivePoint) -> bool {
        self.projective_form().vanishes_at(p).unwrap_or(false)
    }
}

/// A point of the affine chart, carrying its surface: ξ²+μ² = f(λ) exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePoint {
    pub xi: ExactRational,
    pub mu: ExactRational,
    pub lambda: ExactRational,
}

impl AffinePoint {
    pub fn new(
        variant: Variant,
        xi: ExactRational,
        mu: ExactRational,
        lambda: ExactRational,
    ) -> Result<Self> {
        if &xi * &xi + &mu * &mu != variant.f(&lambda) {
            return Err(Error::NotOnSurface);
        }
        Ok(AffinePoint { xi, mu, lambda })
    }

    pub fn from_i64(variant: Variant, xi: i64, mu: i64, lambda: i64) -> Result<Self> {
        Self::new(
            variant,
            ExactRational::from_integer(xi.into()),
            ExactRational::from_integer(mu.into()),
            ExactRational::from_integer(lambda.into()),
        )
    }

    /// Clear denominators into (t:x:y:z).
    pub fn to_projective(&self) -> ProjectivePoint {
        ProjectivePoint::from_rationals(&[
            ExactRational::one(),
            self.xi.clone(),
            self.mu.clone(),
            self.lambda.clone(),
        ])
        .expect("t = 1 is nonzero")
    }
}

/// An exact rotation: a point of the unit circle c²+s² = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    c: ExactRational,
    s: ExactRational,
}

impl Rotation {
    pub fn new(c: ExactRational, s: ExactRational) -> Result<Self> {
        if &c * &c + &s * &s != ExactRational::one() {
            return Err(Error::InvalidInput("not on the unit circle".into()));
        }
        Ok(Rotation { c, s })
    }

    pub fn identity() -> Self {
        Rotation {
            c: ExactRational::one(),
            s: ExactRational::zero(),
        }
    }

    pub fn parts(&self) -> (&ExactRational, &ExactRational) {
        (&self.c, &self.s)
    }

    /// Complex multiplication of the two circle points.
    pub fn compose(&self, other: &Rotation) -> Rotation {
        Rotation {
            c: &self.c * &other.c - &self.s * &other.s,
            s: &self.c * &other.s + &self.s * &other.c,
        }
    }

    /// The rotation carrying the conic point `from` to `to`, both on
    /// x²+y² = n with n ≠ 0.
    pub fn between(
        from: &(ExactRational, ExactRational),
        to: &(ExactRational, ExactRational),
        n: &ExactRational,
    ) -> Result<Rotation> {
        if n.is_zero() {
            return Err(Error::Degenerate("zero conic"));
        }
        Rotation::new(
            (&from.0 * &to.0 + &from.1 * &to.1) / n,
            (&from.0 * &to.1 - &from.1 * &to.0) / n,
        )
    }
}

/// Rotate the conic coordinates, leaving λ alone: (ξ,μ) ↦ (ξc−μs, ξs+μc).
pub fn rotate(g: &Rotation, p: &AffinePoint) -> AffinePoint {
    AffinePoint {
        xi: &p.xi * &g.c - &p.mu * &g.s,
        mu: &p.xi * &g.s + &p.mu * &g.c,
        lambda: p.lambda.clone(),
    }
}

/// Which conic coordinate duplication holds fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedCoord {
    Xi,
    Mu,
}

/// Duplicate along the genus-1 fiber with one conic coordinate pinned: on
/// m² = f(λ) − c² the tangent construction gives, with k = f′(λ₀)/(2m),
///
/// ```text
/// λ′ = k²/c₃ − c₂/c₃ − 2λ₀,   m′ = −(m + k(λ′−λ₀))
/// ```
///
/// (c₃, c₂ the two top coefficients of f). For variant A the constant term
/// −c₂/c₃ is 7/4, for B it is 7/2. Errors when the moving coordinate is 0.
pub fn double_on_fiber(
    variant: Variant,
    fixed: FixedCoord,
    p: &AffinePoint,
) -> Result<AffinePoint> {
    let moving = match fixed {
        FixedCoord::Xi => &p.mu,
        FixedCoord::Mu => &p.xi,
    };
    if moving.is_zero() {
        return Err(Error::TwoTorsionLocus);
    }
    let [_, _, c2, c3] = variant
        .f_coeffs()
        .map(|c| ExactRational::from_integer(c.into()));
    let two = ExactRational::from_integer(2.into());
    let k = variant.f_prime(&p.lambda) / (&two * moving);
    let new_lambda = &k * &k / &c3 - &c2 / &c3 - &two * &p.lambda;
    let new_moving = -(moving + &k * (&new_lambda - &p.lambda));
    let (xi, mu) = match fixed {
        FixedCoord::Xi => (p.xi.clone(), new_moving),
        FixedCoord::Mu => (new_moving, p.mu.clone()),
    };
    AffinePoint::new(variant, xi, mu, new_lambda)
        .map_err(|_| Error::Internal("duplication left the surface"))
}

/// Rotate then duplicate with ξ fixed: the degree-4 self-map driving the
/// congruence solver.
pub fn sigma(variant: Variant, g: &Rotation, p: &AffinePoint) -> Result<AffinePoint> {
    double_on_fiber(variant, FixedCoord::Xi, &rotate(g, p))
}

/// Chord through `base` with slope m on the conic x²+y² = n: second
/// intersection point. Always defined over ℚ since 1+m² > 0.
pub fn conic_chord_point(
    n: &ExactRational,
    base: &(ExactRational, ExactRational),
    m: &ExactRational,
) -> (ExactRational, ExactRational) {
    debug_assert_eq!(&base.0 * &base.0 + &base.1 * &base.1, n.clone());
    let one = ExactRational::one();
    let t = -(&(&base.0 + m * &base.1) * ExactRational::from_integer(2.into())) / (&one + m * m);
    (&base.0 + &t, &base.1 + m * &t)
}

/// Multiples 1..count of the seed (ξ,μ,λ) = (1,1,2) along the fiber μ = 1 of
/// variant A, computed with the plane-cubic group law (origin at infinity).
pub fn generate_seed_points(count: usize, limits: Limits) -> Result<Vec<AffinePoint>> {
    let seed = AffinePoint::from_i64(Variant::A, 1, 1, 2).expect("seed on surface");
    fiber_multiples(Variant::A, &seed, count, limits)
}

/// Multiples of an affine point along its μ-fixed fiber, via cubicgrp.
pub fn fiber_multiples(
    variant: Variant,
    start: &AffinePoint,
    count: usize,
    limits: Limits,
) -> Result<Vec<AffinePoint>> {
    if count as i64 > limits.max_multiple {
        return Err(Error::MultipleCapExceeded {
            n: count as i64,
            cap: limits.max_multiple,
        });
    }
    let ctx = mu_fiber_ctx(variant, &start.mu)?.with_limits(limits);
    let plane = plane_point(start);
    let mut out = Vec::with_capacity(count);
    let mut acc = plane.clone();
    for _ in 0..count {
        out.push(affine_from_plane(variant, &start.mu, &acc)?);
        acc = ctx.add(&acc, &plane)?;
        ctx.check_size(&acc)?;
    }
    Ok(out)
}

/// Group context of the projectivized fiber ξ² = f(λ) − μ² in homogeneous
/// coordinates (λ:ξ:h), origin at the point at infinity (0:1:0).
pub fn mu_fiber_ctx(variant: Variant, mu: &ExactRational) -> Result<GroupContext> {
    let lam = Poly::var(3, 0);
    let xi = Poly::var(3, 1);
    let h = Poly::var(3, 2);
    let [c0, c1, c2, c3] = variant
        .f_coeffs()
        .map(|c| ExactRational::from_integer(c.into()));
    let shifted = c0 - mu * mu;
    let rhs = lam
        .pow(3)
        .scale(&c3)
        .add(&lam.pow(2).mul(&h).scale(&c2))
        .add(&lam.mul(&h.pow(2)).scale(&c1))
        .add(&h.pow(3).scale(&shifted));
    let cubic = PlaneCubic::new(HomogeneousForm::from_poly(&xi.pow(2).mul(&h).sub(&rhs))?)?;
    let origin = ProjectivePoint::from_i64(&[0, 1, 0]).expect("infinity");
    GroupContext::new(cubic, origin)
}

/// Duplication through the plane-cubic group law on the μ-fixed fiber:
/// the independent route against which [`double_on_fiber`] is checked.
pub fn double_via_group_law(variant: Variant, p: &AffinePoint) -> Result<AffinePoint> {
    let ctx = mu_fiber_ctx(variant, &p.mu)?;
    let doubled = ctx.multiply(2, &plane_point(p))?;
    affine_from_plane(variant, &p.mu, &doubled)
}

fn plane_point(p: &AffinePoint) -> ProjectivePoint {
    ProjectivePoint::from_rationals(&[p.lambda.clone(), p.xi.clone(), ExactRational::one()])
        .expect("h = 1 is nonzero")
}

fn affine_from_plane(
    variant: Variant,
    mu: &ExactRational,
    plane: &ProjectivePoint,
) -> Result<AffinePoint> {
    let [l, x, h] = [&plane.coords()[0], &plane.coords()[1], &plane.coords()[2]];
    if h.is_zero() {
        return Err(Error::Degenerate("point at infinity on the fiber"));
    }
    AffinePoint::new(
        variant,
        ExactRational::new(x.clone(), h.clone()),
        mu.clone(),
        ExactRational::new(l.clone(), h.clone()),
    )
}

/// Component filters for the height scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFilter {
    /// No restriction: control runs that must rediscover the known points.
    None,
    /// The real component |z/t| ≤ √2 of variant A, as the exact test z² ≤ 2t².
    RealComponentLow,
    /// The 2-adic neighbourhood on variant B: z² > 2t², t ≡ z ≡ 1 (mod 4),
    /// x even, y odd.
    TwoAdicNeighbourhood,
}

/// All points (t:x:y:z) with coprime integer coordinates, 0 < t ≤ H and
/// |z| ≤ H, passing the filter. x, y are recovered from x²+y² = M/t with
/// M = f(z, t), so the loop is the (t, z) grid; t-slices go to workers.
pub fn height_scan(variant: Variant, height: u32, filter: ScanFilter) -> Vec<ProjectivePoint> {
    let h = height as i64;
    let slice = |t: i64| -> Vec<ProjectivePoint> {
        let mut found = Vec::new();
        for z in -h..=h {
            if !filter_tz(filter, t, z) {
                continue;
            }
            let c = variant.leading() as i128;
            let (ti, zi) = (t as i128, z as i128);
            let m = (c * zi - 7 * ti) * (zi * zi - 2 * ti * ti);
            if m % ti != 0 {
                continue;
            }
            let n = m / ti;
            if n < 0 {
                continue;
            }
            let mut x = 0i128;
            while x * x * 2 <= n {
                let y2 = n - x * x;
                let y = isqrt(y2);
                if y * y == y2 {
                    for (sx, sy) in sign_pairs(x, y) {
                        if filter_xy(filter, sx, sy) {
                            found.push(
                                ProjectivePoint::new(vec![
                                    BigInt::from(t),
                                    BigInt::from(sx),
                                    BigInt::from(sy),
                                    BigInt::from(z),
                                ])
                                .expect("t > 0"),
                            );
                        }
                    }
                }
                x += 1;
            }
        }
        found
    };
    let rows: Vec<i64> = (1..=h).collect();
    let mut pts: Vec<ProjectivePoint>;
    #[cfg(feature = "parallel")]
    {
        if crate::par::parallel_active() {
            use rayon::prelude::*;
            pts = rows.par_iter().flat_map_iter(|&t| slice(t)).collect();
        } else {
            pts = rows.iter().flat_map(|&t| slice(t)).collect();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        pts = rows.iter().flat_map(|&t| slice(t)).collect();
    }
    pts.sort();
    pts.dedup();
    pts
}

fn filter_tz(filter: ScanFilter, t: i64, z: i64) -> bool {
    match filter {
        ScanFilter::None => true,
        ScanFilter::RealComponentLow => z * z <= 2 * t * t,
        ScanFilter::TwoAdicNeighbourhood => {
            z * z > 2 * t * t && t.rem_euclid(4) == 1 && z.rem_euclid(4) == 1
        }
    }
}

fn filter_xy(filter: ScanFilter, x: i128, y: i128) -> bool {
    match filter {
        ScanFilter::TwoAdicNeighbourhood => x.rem_euclid(2) == 0 && y.rem_euclid(2) == 1,
        _ => true,
    }
}

fn sign_pairs(x: i128, y: i128) -> Vec<(i128, i128)> {
    let xs = if x == 0 { vec![0] } else { vec![x, -x] };
    let ys = if y == 0 { vec![0] } else { vec![y, -y] };
    let mut out = Vec::new();
    for &a in &xs {
        for &b in &ys {
            out.push((a, b));
            // the swap (y, x) also solves x²+y² = n
            out.push((b, a));
        }
    }
    out
}

fn isqrt(n: i128) -> i128 {
    (n as u128).isqrt() as i128
}

/// Expected-empty search on variant A: points in the real component
/// |z/t| ≤ √2 up to the height bound.
pub fn wap_failure_search(height: u32) -> Vec<ProjectivePoint> {
    height_scan(Variant::A, height, ScanFilter::RealComponentLow)
}

/// Expected-empty search on variant B: points in the 2-adic neighbourhood
/// of (1:2:1:1) lying in the far real component.
pub fn two_adic_search(height: u32) -> Vec<ProjectivePoint> {
    height_scan(Variant::B, height, ScanFilter::TwoAdicNeighbourhood)
}
