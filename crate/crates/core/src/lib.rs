//! Exact-arithmetic Burau representations of the braid groups B3 and B4,
//! with a complete classification of the real specializations as discrete
//! or non-discrete and faithful or unfaithful, plus the supporting forensic
//! constructions: unfaithful-root hunting from 2-1 entries, the B4 kernel
//! pair, and Galois discreteness certificates at quadratic integers.
//!
//! All classification verdicts are produced in exact arithmetic (rationals
//! and real quadratic fields) wherever the inputs permit; floating-point
//! inputs yield verdicts labeled numerical, never certified.

pub mod braid;
pub mod burau;
pub mod classifier;
pub mod error;
pub mod forensics;
pub mod laurent;
pub mod moebius;
pub mod scalar;

pub use error::{Error, Result};
