//! Exact-arithmetic kernel: big integers and reduced rationals, p-adic
//! valuations, square detection, modular arithmetic, CRT, projective
//! normalization and homogeneous-form evaluation.
//!
//! Every value is immutable and every operation is pure; nothing here ever
//! touches floating point.

mod form;
mod projective;
mod rational;
mod residue;

pub use form::{HomogeneousForm, Poly};
pub use projective::{normalize_projective, ProjectivePoint};
pub use rational::{
    format_rational, int_sqrt_if_square, int_valuation, padic_valuation, parse_rational, rat,
    square_root_if_square, squarefree_part, ExactRational, Valuation,
};
pub use residue::{crt, is_prime, legendre, mod_inv, mod_norm, sqrt_mod, sqrt_mod_prime, Residue};
