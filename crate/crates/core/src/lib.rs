//! Factorization in the ring `Int(Z)` of integer-valued polynomials.
//!
//! The crate decides membership and irreducibility of elements given in
//! factored form, enumerates all essentially different factorizations with
//! their sets of lengths, and builds elements with any prescribed finite
//! multiset of lengths together with certificates that [`construct::verify_certificate`]
//! re-checks from scratch.

pub mod cli;
pub mod congruence;
pub mod construct;
pub mod error;
pub mod fixed_divisor;
pub mod lift;
pub mod monoid;
pub mod poly;
pub mod report;
pub mod serde_dec;

pub use error::{Error, Result};
pub use poly::{IntPoly, RationalPoly};
