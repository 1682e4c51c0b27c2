//! Verification engine for an explicit tower of spin arithmetic hyperbolic
//! surfaces with a uniform Dirac spectral gap.
//!
//! The construction lives on three explicit curves over Q(ζ₁₂): the genus-2
//! curve y² = x⁶ − 1 and the two genus-1 curves y² = x⁴ − x and y² = x³ − 1.
//! This crate provides exact cyclotomic arithmetic, divisor calculus on the
//! three curves, a certificate-based linear-equivalence engine that replays
//! the divisor-class argument behind the spectral gap, a numerical
//! Abel–Jacobi oracle that independently cross-checks every equivalence
//! verdict, and exact checks of the arithmetic uniformization data.
//!
//! All exact values are immutable after construction and every operation is
//! pure, so the whole crate is safe to use concurrently without locking.

pub mod exactfield;
pub mod poly;
pub mod curvekit;
pub mod equivengine;
pub mod spintower;
pub mod ajoracle;
pub mod uniformkit;
