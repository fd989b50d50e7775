//! The quintic surface ℰ: x₀x₂⁴+x₁x₃⁴ = x₀²x₁³+x₀³x₁², the degree-4
//! pushforward from the quartic, and the lifting verifier: every rational
//! point of ℰ has ±x₀x₁ a perfect square, so it lifts to one of the two
//! double covers x₀x₁ = ±x₄².
//!
//! The verifier inspects coprime integer coordinates directly. Underlying
//! identity: the four monomials of the quintic have p-adic orders
//! e₀+4e₂, e₁+4e₃, 2e₀+3e₁, 3e₀+2e₁; if e₀+e₁ were odd these would be
//! pairwise incongruent mod 4, which no vanishing sum of four terms allows.

use crate::exactnum::{int_sqrt_if_square, int_valuation, HomogeneousForm, ProjectivePoint};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// x₀x₂⁴+x₁x₃⁴−x₀²x₁³−x₀³x₁² in coordinates (x₀:x₁:x₂:x₃).
pub fn quintic_form() -> HomogeneousForm {
    HomogeneousForm::from_i64_terms(
        4,
        5,
        &[
            (1, &[1, 0, 4, 0]),
            (1, &[0, 1, 0, 4]),
            (-1, &[2, 3, 0, 0]),
            (-1, &[3, 2, 0, 0]),
        ],
    )
    .expect("fixed form")
}

/// Exact membership test for ℰ.
pub fn on_e(p: &ProjectivePoint) -> bool {
    quintic_form().vanishes_at(p).unwrap_or(false)
}

/// Image of a point of F under (x:y:z:w) ↦ (x⁴ : y⁴ : xy²z : x²yw).
pub fn push_from_f(p: &ProjectivePoint) -> Result<ProjectivePoint> {
    if !crate::fermat::on_f(p) {
        return Err(Error::NotOnSurface);
    }
    let [x, y, z, w] = [
        &p.coords()[0],
        &p.coords()[1],
        &p.coords()[2],
        &p.coords()[3],
    ];
    let image = ProjectivePoint::new(vec![
        x * x * x * x,
        y * y * y * y,
        x * (y * y) * z,
        (x * x) * y * w,
    ])
    .map_err(|_| Error::Internal("pushforward image is the zero tuple"))?;
    if !on_e(&image) {
        return Err(Error::Internal("pushforward image off the quintic"));
    }
    Ok(image)
}

/// Which double cover a point lifts to, with the fifth coordinate witnessing
/// x₀x₁ = ±x₄². `Degenerate` exactly when x₀x₁ = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftResult {
    Plus { witness: BigInt },
    Minus { witness: BigInt },
    Degenerate,
}

impl LiftResult {
    pub fn cover_tag(&self) -> &'static str {
        match self {
            LiftResult::Plus { .. } => "plus",
            LiftResult::Minus { .. } => "minus",
            LiftResult::Degenerate => "degenerate",
        }
    }

    pub fn witness(&self) -> Option<&BigInt> {
        match self {
            LiftResult::Plus { witness } | LiftResult::Minus { witness } => Some(witness),
            LiftResult::Degenerate => None,
        }
    }
}

/// Decide which of ±x₀x₁ is a square at a point of ℰ. The theorem guarantees
/// one is; `TheoremViolation` is reported, never silently absorbed.
pub fn lift_check(p: &ProjectivePoint) -> Result<LiftResult> {
    if !on_e(p) {
        return Err(Error::NotOnSurface);
    }
    let prod = &p.coords()[0] * &p.coords()[1];
    if prod.is_zero() {
        return Ok(LiftResult::Degenerate);
    }
    if let Some(witness) = int_sqrt_if_square(&prod) {
        return Ok(LiftResult::Plus { witness });
    }
    if let Some(witness) = int_sqrt_if_square(&(-&prod)) {
        return Ok(LiftResult::Minus { witness });
    }
    Err(Error::TheoremViolation(p.clone()))
}

/// Directly check that the p-adic order of x₀x₁ is even at every prime.
/// Small primes are scanned one by one; the remaining cofactor has even
/// orders exactly when it is a perfect square.
pub fn valuation_parity_check(p: &ProjectivePoint) -> Result<bool> {
    if !on_e(p) {
        return Err(Error::NotOnSurface);
    }
    let prod = &p.coords()[0] * &p.coords()[1];
    if prod.is_zero() {
        return Err(Error::Degenerate("x0*x1 = 0"));
    }
    let mut rest = prod.abs();
    for q in 2u32..100_000 {
        let q = BigInt::from(q);
        if &q * &q > rest {
            break;
        }
        if (&rest % &q).is_zero() {
            let v = int_valuation(&rest, &q);
            if v % 2 == 1 {
                return Ok(false);
            }
            for _ in 0..v {
                rest /= &q;
            }
        }
    }
    Ok(int_sqrt_if_square(&rest).is_some())
}

/// Outcome of a height-bounded enumeration of ℰ(ℚ).
#[derive(Debug, Clone, Default)]
pub struct ScanReport {
    /// Every coprime-integer point found, with its lift classification.
    pub points: Vec<(ProjectivePoint, LiftResult)>,
    /// Points where neither ±x₀x₁ is a square; must stay empty.
    pub violations: Vec<ProjectivePoint>,
}

/// Enumerate all points of ℰ with coprime integer coordinates bounded by
/// `height`, classifying each through [`lift_check`]. For fixed (a₀,a₁,a₂)
/// the quintic pins down a₃⁴, so the grid is three-dimensional; the a₀-slices
/// are distributed across workers.
pub fn height_scan(height: u32) -> ScanReport {
    let h = height as i64;
    let slice = |a0: i64| -> Vec<ProjectivePoint> {
        let mut found = Vec::new();
        for a1 in -h..=h {
            for a2 in 0..=h {
                for p in solve_x3(a0, a1, a2, h) {
                    found.push(p);
                }
            }
        }
        found
    };
    let rows: Vec<i64> = (-h..=h).collect();
    let mut pts: Vec<ProjectivePoint>;
    #[cfg(feature = "parallel")]
    {
        if crate::par::parallel_active() {
            use rayon::prelude::*;
            pts = rows.par_iter().flat_map_iter(|&a0| slice(a0)).collect();
        } else {
            pts = rows.iter().flat_map(|&a0| slice(a0)).collect();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        pts = rows.iter().flat_map(|&a0| slice(a0)).collect();
    }
    pts.sort();
    pts.dedup();

    let mut report = ScanReport::default();
    for p in pts {
        match lift_check(&p) {
            Ok(result) => report.points.push((p, result)),
            Err(Error::TheoremViolation(_)) => report.violations.push(p),
            Err(_) => unreachable!("scan emits only on-surface points"),
        }
    }
    report
}

/// Solve x₁·x₃⁴ = x₀²x₁³ + x₀³x₁² − x₀x₂⁴ for x₃ over the integers, at fixed
/// (a₀, a₁, a₂ ≥ 0), emitting every sign combination within the height bound.
fn solve_x3(a0: i64, a1: i64, a2: i64, h: i64) -> Vec<ProjectivePoint> {
    let mut out = Vec::new();
    let mut push = |c: [i64; 4]| {
        if c.iter().any(|&v| v != 0) {
            out.push(ProjectivePoint::from_i64(&c).unwrap());
        }
    };
    let (b0, b1, b2) = (BigInt::from(a0), BigInt::from(a1), BigInt::from(a2));
    let rhs = &b0 * &b0 * &b1 * &b1 * (&b1 + &b0) - &b0 * (&b2 * &b2 * &b2 * &b2);
    if a1 == 0 {
        // the quintic degenerates to x₀x₂⁴ = 0
        if rhs.is_zero() {
            for a3 in -h..=h {
                for s2 in sign_range(a2) {
                    push([a0, 0, s2, a3]);
                }
            }
        }
        return out;
    }
    let (q, r) = rhs.div_rem(&b1);
    if !r.is_zero() || q.is_negative() {
        return out;
    }
    let root = q.nth_root(4);
    if &root * &root * &root * &root != q {
        return out;
    }
    let a3: i64 = match (&root).try_into() {
        Ok(v) => v,
        Err(_) => return out,
    };
    if a3 > h {
        return out;
    }
    for s2 in sign_range(a2) {
        for s3 in sign_range(a3) {
            push([a0, a1, s2, s3]);
        }
    }
    out
}

fn sign_range(a: i64) -> Vec<i64> {
    if a == 0 {
        vec![0]
    } else {
        vec![a, -a]
    }
}
