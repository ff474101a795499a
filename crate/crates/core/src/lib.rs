//! Exact combinatorics behind the Harder–Narasimhan recursion for
//! GL_n-bundles on a curve.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * [`pseries`]: power series in `t` over big integers, truncated at a fixed order,
//! * [`glroot`]: compositions, refinements and the root/coweight pairings of GL_n,
//! * [`chambers`]: the acute and obtuse chamber functions and Arthur's Γ, Γ̂,
//! * [`inversion`]: the τ-weighted stratum sums and their closed-form inverse,
//! * [`bundles`]: Poincaré series of bundle stacks, semistable series by two
//!   independent algorithms, and the stable / fixed-determinant polynomials.
//!
//! IO, file formats and the command-line front end live in the `hnpoly` crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod bundles;
pub mod chambers;
mod error;
pub mod glroot;
pub mod inversion;
pub mod pseries;

pub use error::Error;

/// Exact rationals used for chamber coordinates and pairings.
pub type Rational = num_rational::BigRational;

pub type Result<T, E = Error> = core::result::Result<T, E>;
