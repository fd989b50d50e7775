//! Exact-arithmetic computations on surfaces with elliptic and conic fibrations.
//!
//! Everything here runs over the rationals (or prime fields) with no floating
//! point anywhere: arbitrary-precision integers and reduced fractions are the
//! only scalars. The crate provides
//!
//! * [`exactnum`] — the arithmetic kernel: rationals, valuations, square
//!   detection, CRT, modular square roots, projective normalization and
//!   homogeneous-form evaluation;
//! * [`cubicgrp`] — the chord-tangent group law on smooth plane cubics with an
//!   arbitrary rational origin, plus a complete small-order torsion test;
//! * [`fermat`] — the quartic x⁴+y⁴ = z⁴+w⁴, its eight rational lines, two
//!   pencils of plane cubics, point generation along fibers and an exact
//!   linear-algebra density certificate;
//! * [`enriques`] — the quintic x₀x₂⁴+x₁x₃⁴ = x₀²x₁³+x₀³x₁², the pushforward
//!   from the quartic, and the ±x₀x₁-square lifting verifier;
//! * [`chatelet`] — two cubic surfaces t(x²+y²) = (cz−7t)(z²−2t²), conic
//!   rotations, fiberwise duplication, seed-point generation, congruence
//!   solving modulo large primes, and height-bounded obstruction searches;
//! * [`kummer`] — products of two elliptic cubics, the associated plane cubic
//!   family, tangent sections, and nonsquare-value witness generation;
//! * [`markoff`] — Vieta moves, orbit enumeration and exhaustive verification
//!   on x²+y²+z² = 3xyz.
//!
//! Grid-shaped searches run on rayon when the `parallel` feature (default) is
//! enabled; [`par::set_workers`] with `1` forces the sequential fallback.

pub mod chatelet;
pub mod cubicgrp;
pub mod enriques;
pub mod exactnum;
pub mod fermat;
pub mod kummer;
pub mod markoff;
pub mod par;

use exactnum::ProjectivePoint;

/// Crate-wide error type. Variants mirror the failure modes of the domain
/// operations; anything tagged `Internal` signals a broken invariant rather
/// than bad input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("zero input rejected")]
    ZeroInput,
    #[error("form in {form} variables evaluated at a point of dimension {point}")]
    ArityMismatch { form: usize, point: usize },
    #[error("exponent tuple does not sum to the stated degree")]
    DegreeMismatch,
    #[error("inhomogeneous polynomial cannot be converted to a form")]
    NotHomogeneous,
    #[error("modulus is not prime: {0}")]
    NonPrimeModulus(String),
    #[error("repeated modulus {0} in residue system")]
    RepeatedModulus(String),
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("point does not lie on the surface")]
    NotOnSurface,
    #[error("curve is singular at {0}")]
    SingularPoint(ProjectivePoint),
    #[error("line lies on the cubic: reducible curve")]
    LineOnCurve,
    #[error("zero form rejected")]
    ZeroForm,
    #[error("multiple cap exceeded: |{n}| > {cap}")]
    MultipleCapExceeded { n: i64, cap: i64 },
    #[error("coordinate size exceeded {max_digits} decimal digits")]
    DigitLimitExceeded { max_digits: usize },
    #[error("singular fiber at parameter {0}")]
    SingularFiber(String),
    #[error("section is torsion on this fiber")]
    TorsionFiber,
    #[error("fiber coordinate undefined at this point")]
    UndefinedFiberCoordinate,
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("theorem violation: neither x0*x1 nor -x0*x1 is a square at {0}")]
    TheoremViolation(ProjectivePoint),
    #[error("moving coordinate is zero: two-torsion locus")]
    TwoTorsionLocus,
    #[error("invalid residue target: {0}")]
    InvalidTarget(String),
    #[error("congruence search exhausted modulo {0}")]
    GammaExhausted(String),
    #[error("conic target unreachable modulo {0}")]
    UnreachableTarget(String),
    #[error("bad reduction modulo {0}")]
    BadReduction(String),
    #[error("retry budget exhausted in approximation solver")]
    RetryBudgetExhausted,
    #[error("reducible specialization: {0}")]
    ReducibleCurve(&'static str),
    #[error("no witness retained within {0} multiples")]
    WitnessExhausted(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal error: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource caps for multiplication chains on fiber cubics. Coordinate sizes
/// grow quadratically in the multiple, so both the multiple itself and the
/// coordinate digit count are bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest |n| accepted by scalar multiplication.
    pub max_multiple: i64,
    /// Largest decimal digit count tolerated in any projective coordinate.
    pub max_digits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_multiple: 50,
            max_digits: 10_000,
        }
    }
}
