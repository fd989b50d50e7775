//! Products of two elliptic cubics y² = fᵢ(x): the surface f₂(x₂) = w²f₁(x₁)
//! and the plane cubic family it contains.
//!
//! Specializing at rational points (aᵢ, bᵢ) of the two curves gives the
//! plane cubic b₁²f₂(x₂) = b₂²f₁(x₁) through (a₁, a₂). The tangent section
//! there generates, for non-torsion cases, infinitely many rational points
//! (u₁, u₂); each yields w with f₂(u₂) = w²f₁(u₁), and whenever f₁(u₁) is
//! not a rational square the pair witnesses two nonsquare values with a
//! square product.

use crate::cubicgrp::{GroupContext, PlaneCubic};
use crate::exactnum::{
    square_root_if_square, ExactRational, HomogeneousForm, Poly, ProjectivePoint,
};
use crate::{Error, Limits, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A cubic f with a marked rational point (a, b), b ≠ 0, b² = f(a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCubicData {
    /// Coefficients of f, ascending: f(x) = c₀ + c₁x + c₂x² + c₃x³, c₃ ≠ 0.
    coeffs: [BigInt; 4],
    point: (ExactRational, ExactRational),
}

impl EllipticCubicData {
    /// `coeffs_desc` is highest degree first, matching the CLI convention.
    pub fn new(coeffs_desc: [BigInt; 4], point: (ExactRational, ExactRational)) -> Result<Self> {
        let [c3, c2, c1, c0] = coeffs_desc;
        let coeffs = [c0, c1, c2, c3];
        if coeffs[3].is_zero() {
            return Err(Error::InvalidInput(
                "leading cubic coefficient is zero".into(),
            ));
        }
        let data = EllipticCubicData { coeffs, point };
        if data.discriminant().is_zero() {
            return Err(Error::InvalidInput("cubic has a repeated root".into()));
        }
        if data.point.1.is_zero() {
            return Err(Error::Degenerate("marked point has b = 0"));
        }
        if &data.point.1 * &data.point.1 != data.eval(&data.point.0) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(data)
    }

    pub fn from_i64(coeffs_desc: [i64; 4], point: (i64, i64)) -> Result<Self> {
        Self::new(
            coeffs_desc.map(BigInt::from),
            (
                ExactRational::from_integer(point.0.into()),
                ExactRational::from_integer(point.1.into()),
            ),
        )
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        let [c0, c1, c2, c3] = self.coeffs.clone().map(ExactRational::from_integer);
        ((c3 * x + c2) * x + c1) * x + c0
    }

    pub fn point(&self) -> &(ExactRational, ExactRational) {
        &self.point
    }

    fn discriminant(&self) -> BigInt {
        let [d, c, b, a] = self.coeffs.clone();
        BigInt::from(18) * &a * &b * &c * &d - BigInt::from(4) * (&b * &b * &b) * &d
            + (&b * &b) * (&c * &c)
            - BigInt::from(4) * &a * (&c * &c * &c)
            - BigInt::from(27) * (&a * &a) * (&d * &d)
    }

    /// Homogenization c₃x³ + c₂x²h + c₁xh² + c₀h³ as a [`Poly`] in the given
    /// variable of a 3-variable ring (the other being the partner curve's).
    fn homogenized(&self, var: usize) -> Poly {
        let x = Poly::var(3, var);
        let h = Poly::var(3, 2);
        let [c0, c1, c2, c3] = self.coeffs.clone().map(ExactRational::from_integer);
        x.pow(3)
            .scale(&c3)
            .add(&x.pow(2).mul(&h).scale(&c2))
            .add(&x.mul(&h.pow(2)).scale(&c1))
            .add(&h.pow(3).scale(&c0))
    }
}

/// The specialized plane cubic b₁²f₂(x₂) − b₂²f₁(x₁) = 0 in coordinates
/// (x₁:x₂:h) with origin at the marked point (a₁:a₂:1).
#[derive(Debug, Clone)]
pub struct ZCurveContext {
    ctx: GroupContext,
    /// |b₂/b₁|: the constant ratio f₂(u₂)/f₁(u₁) along the curve is its square.
    ratio: ExactRational,
}

impl ZCurveContext {
    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn ratio(&self) -> &ExactRational {
        &self.ratio
    }
}

/// Build the specialized curve, refusing the analytically reducible case
/// (identical cubics with b₁² = b₂², which contains the diagonal).
pub fn z_curve(
    d1: &EllipticCubicData,
    d2: &EllipticCubicData,
    limits: Limits,
) -> Result<ZCurveContext> {
    let b1 = &d1.point.1;
    let b2 = &d2.point.1;
    if d1.coeffs == d2.coeffs && b1 * b1 == b2 * b2 {
        return Err(Error::ReducibleCurve(
            "identical data on both sides contains the diagonal",
        ));
    }
    let poly = d2
        .homogenized(1)
        .scale(&(b1 * b1))
        .sub(&d1.homogenized(0).scale(&(b2 * b2)));
    let cubic = PlaneCubic::new(HomogeneousForm::from_poly(&poly)?)?;
    let origin = ProjectivePoint::from_rationals(&[
        d1.point.0.clone(),
        d2.point.0.clone(),
        ExactRational::one(),
    ])?;
    let ctx = GroupContext::new(cubic, origin)?.with_limits(limits);
    let ratio = ExactRational::new(b2.numer() * b1.denom(), b2.denom() * b1.numer());
    let ratio = if ratio.numer().sign() == num_bigint::Sign::Minus {
        -ratio
    } else {
        ratio
    };
    Ok(ZCurveContext { ctx, ratio })
}

/// The second section O*O: tangent line at the origin, residual point.
pub fn tangent_section(z: &ZCurveContext) -> Result<ProjectivePoint> {
    z.ctx
        .curve()
        .third_intersection(z.ctx.origin(), z.ctx.origin())
}

/// One retained witness: f₂(u₂) = w²f₁(u₁) with f₁(u₁) not a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub u1: ExactRational,
    pub u2: ExactRational,
    pub w: ExactRational,
}

/// Result of a witness run: retained triples plus the filter statistics.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub witnesses: Vec<Witness>,
    pub tried: usize,
}

/// Walk multiples of the tangent section and keep the affine points where
/// f₁(u₁) is not a rational square. Errors when the section is torsion or
/// every multiple gets filtered.
pub fn generate_witnesses(
    z: &ZCurveContext,
    d1: &EllipticCubicData,
    d2: &EllipticCubicData,
    count: usize,
) -> Result<WitnessReport> {
    if count as i64 > z.ctx.limits().max_multiple {
        return Err(Error::MultipleCapExceeded {
            n: count as i64,
            cap: z.ctx.limits().max_multiple,
        });
    }
    let section = tangent_section(z)?;
    if z.ctx.is_torsion(&section)? {
        return Err(Error::TorsionFiber);
    }
    let mut witnesses = Vec::new();
    let mut acc = section.clone();
    for _ in 0..count {
        if let Some((u1, u2)) = affine_coords(&acc) {
            let f1 = d1.eval(&u1);
            if square_root_if_square(&f1).is_none() {
                let w = z.ratio.clone();
                debug_assert_eq!(d2.eval(&u2), &w * &w * &f1);
                witnesses.push(Witness { u1, u2, w });
            }
        }
        acc = z.ctx.add(&acc, &section)?;
        z.ctx.check_size(&acc)?;
    }
    if witnesses.is_empty() {
        return Err(Error::WitnessExhausted(count));
    }
    Ok(WitnessReport {
        witnesses,
        tried: count,
    })
}

fn affine_coords(p: &ProjectivePoint) -> Option<(ExactRational, ExactRational)> {
    let [x1, x2, h] = [&p.coords()[0], &p.coords()[1], &p.coords()[2]];
    if h.is_zero() {
        return None;
    }
    Some((
        ExactRational::new(x1.clone(), h.clone()),
        ExactRational::new(x2.clone(), h.clone()),
    ))
}
