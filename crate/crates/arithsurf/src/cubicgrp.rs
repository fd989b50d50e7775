//! Chord-tangent group law on smooth plane cubics with an arbitrary chosen
//! rational origin.
//!
//! The composition `p * q` is the residual intersection of the cubic with the
//! line through p and q (the tangent when p = q). With a fixed origin O the
//! abelian group law is `p + q := O * (p * q)` and `−p := p * (O * O)`.
//!
//! Smoothness is never asserted globally: the fibration modules exclude the
//! finitely many singular parameters in closed form, and `third_intersection`
//! fails loudly whenever it touches a point where all partials vanish.

use crate::exactnum::{HomogeneousForm, ProjectivePoint};
use crate::{Error, Limits, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// A ternary cubic form. Irreducibility and smoothness are not part of the
/// type; see the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCubic {
    form: HomogeneousForm,
}

impl PlaneCubic {
    pub fn new(form: HomogeneousForm) -> Result<Self> {
        if form.nvars() != 3 || form.degree() != 3 {
            return Err(Error::DegreeMismatch);
        }
        if form.terms().next().is_none() {
            return Err(Error::ZeroForm);
        }
        Ok(PlaneCubic { form })
    }

    pub fn form(&self) -> &HomogeneousForm {
        &self.form
    }

    /// True iff the form vanishes at p.
    pub fn on_curve(&self, p: &ProjectivePoint) -> bool {
        self.form.vanishes_at(p).unwrap_or(false)
    }

    fn gradient(&self, p: &ProjectivePoint) -> Vec<BigInt> {
        self.form.gradient_at(p.coords()).expect("cubic is ternary")
    }

    pub fn is_smooth_at(&self, p: &ProjectivePoint) -> bool {
        self.gradient(p).iter().any(|c| !c.is_zero())
    }

    /// The residual intersection point of the cubic with the line through p
    /// and q (tangent line when p = q), counting multiplicity.
    pub fn third_intersection(
        &self,
        p: &ProjectivePoint,
        q: &ProjectivePoint,
    ) -> Result<ProjectivePoint> {
        if !self.on_curve(p) || !self.on_curve(q) {
            return Err(Error::PointNotOnCurve);
        }
        for pt in [p, q] {
            if !self.is_smooth_at(pt) {
                return Err(Error::SingularPoint(pt.clone()));
            }
        }
        if p == q {
            return self.tangent_residual(p);
        }
        // distinct points: the restriction s·p + t·q has roots at s=0, t=0
        let coeffs = self.form.restrict_to_line(p.coords(), q.coords())?;
        debug_assert!(coeffs[0].is_zero() && coeffs[3].is_zero());
        let (c1, c2) = (&coeffs[1], &coeffs[2]);
        if c1.is_zero() && c2.is_zero() {
            return Err(Error::LineOnCurve);
        }
        // residual root c1·s + c2·t = 0
        combine(p, c2, q, &-c1)
    }

    /// Tangent case: the restriction along (p, d) has a double root at t = 0,
    /// where d spans the tangent line with p.
    fn tangent_residual(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let g = self.gradient(p);
        let d = tangent_direction(p, &g).ok_or_else(|| Error::SingularPoint(p.clone()))?;
        let coeffs = self.form.restrict_to_line(p.coords(), &d)?;
        debug_assert!(coeffs[0].is_zero() && coeffs[1].is_zero());
        let (c2, c3) = (&coeffs[2], &coeffs[3]);
        if c2.is_zero() && c3.is_zero() {
            return Err(Error::LineOnCurve);
        }
        // residual root c2·s + c3·t = 0; c2 = 0 means a flex, returning p
        let neg_c2 = -c2.clone();
        ProjectivePoint::new(
            p.coords()
                .iter()
                .zip(&d)
                .map(|(a, b)| a * c3 + b * &neg_c2)
                .collect(),
        )
    }
}

/// s·p + t·q as a normalized point.
fn combine(
    p: &ProjectivePoint,
    s: &BigInt,
    q: &ProjectivePoint,
    t: &BigInt,
) -> Result<ProjectivePoint> {
    ProjectivePoint::new(
        p.coords()
            .iter()
            .zip(q.coords())
            .map(|(a, b)| a * s + b * t)
            .collect(),
    )
}

/// A direction vector spanning the tangent line at p (gradient g ≠ 0):
/// orthogonal to g and independent of p. The kernel of g is a plane
/// containing p, so one of the three cross-style candidates works.
fn tangent_direction(p: &ProjectivePoint, g: &[BigInt]) -> Option<Vec<BigInt>> {
    let candidates = [
        vec![g[1].clone(), -g[0].clone(), BigInt::zero()],
        vec![g[2].clone(), BigInt::zero(), -g[0].clone()],
        vec![BigInt::zero(), g[2].clone(), -g[1].clone()],
    ];
    candidates
        .into_iter()
        .find(|d| d.iter().any(|c| !c.is_zero()) && !proportional(d, p.coords()))
}

fn proportional(a: &[BigInt], b: &[BigInt]) -> bool {
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// A plane cubic together with a chosen rational origin: the carrier of the
/// group law. The constructor checks that the origin lies on the curve and
/// that the curve is smooth there.
#[derive(Debug, Clone)]
pub struct GroupContext {
    curve: PlaneCubic,
    origin: ProjectivePoint,
    limits: Limits,
}

impl GroupContext {
    pub fn new(curve: PlaneCubic, origin: ProjectivePoint) -> Result<Self> {
        if !curve.on_curve(&origin) {
            return Err(Error::PointNotOnCurve);
        }
        if !curve.is_smooth_at(&origin) {
            return Err(Error::SingularPoint(origin));
        }
        Ok(GroupContext {
            curve,
            origin,
            limits: Limits::default(),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn curve(&self) -> &PlaneCubic {
        &self.curve
    }

    pub fn origin(&self) -> &ProjectivePoint {
        &self.origin
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn on_curve(&self, p: &ProjectivePoint) -> bool {
        self.curve.on_curve(p)
    }

    /// Group addition: O * (p * q).
    pub fn add(&self, p: &ProjectivePoint, q: &ProjectivePoint) -> Result<ProjectivePoint> {
        let r = self.curve.third_intersection(p, q)?;
        self.curve.third_intersection(&self.origin, &r)
    }

    /// Group inverse: p * (O * O).
    pub fn negate(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let oo = self.curve.third_intersection(&self.origin, &self.origin)?;
        self.curve.third_intersection(p, &oo)
    }

    /// n-fold sum by double-and-add. The multiple cap and the coordinate
    /// digit cap from [`Limits`] bound the quadratic height growth.
    pub fn multiply(&self, n: i64, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        if n.unsigned_abs() as i64 > self.limits.max_multiple {
            return Err(Error::MultipleCapExceeded {
                n,
                cap: self.limits.max_multiple,
            });
        }
        if n == 0 {
            return Ok(self.origin.clone());
        }
        if n < 0 {
            let m = self.multiply(-n, p)?;
            return self.negate(&m);
        }
        let mut acc: Option<ProjectivePoint> = None;
        let mut base = p.clone();
        let mut k = n as u64;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => self.add(&a, &base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = self.add(&base, &base)?;
            self.check_size(&base)?;
        }
        let out = acc.expect("n > 0");
        self.check_size(&out)?;
        Ok(out)
    }

    /// True iff some 1 ≤ n ≤ 12 kills p. Complete over ℚ: torsion elements
    /// of an elliptic curve over ℚ have order at most 12.
    pub fn is_torsion(&self, p: &ProjectivePoint) -> Result<bool> {
        let mut acc = p.clone();
        for _ in 1..=12u32 {
            if acc == self.origin {
                return Ok(true);
            }
            acc = self.add(&acc, p)?;
        }
        Ok(false)
    }

    /// Enforce the digit cap on a point of a multiplication chain.
    pub fn check_size(&self, p: &ProjectivePoint) -> Result<()> {
        // bits·log10(2) bounds the digit count; integer-only comparison
        let bits = p.coords().iter().map(|c| c.bits()).max().unwrap_or(0);
        if bits as u128 * 30103 > self.limits.max_digits as u128 * 100_000 {
            return Err(Error::DigitLimitExceeded {
                max_digits: self.limits.max_digits,
            });
        }
        Ok(())
    }
}
