//! Interval-verified number theory for sums of one prime, four prime cubes and
//! powers of two.
//!
//! The crate is `no_std` (it needs `alloc`). Every real-valued quantity is a
//! [`BoundedReal`](numerics::BoundedReal) enclosure computed with directed
//! rounding, so each reported inequality is decided on the whole interval.
//!
//! - [`arith`]: sieve, φ, μ, multiplicative order, primality.
//! - [`numerics`]: dyadic floats, intervals, points on the unit circle.
//! - [`series`]: local densities `A(n, q)`, Euler-factor minima and the
//!   product bounds behind the constant `C`.
//! - [`powers`]: powers of two modulo `q`, the sums `θ(t)`, residue counts and
//!   the averaged singular-series bound.
//! - [`threshold`]: assembly of the main-term and minor-arc constants and the
//!   minimal number of powers of two.
//! - [`represent`]: explicit representation witnesses at small scale.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod constants;
pub mod error;
pub mod numerics;
pub mod powers;
pub mod represent;
pub mod series;
pub mod threshold;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
