//! Command-line front end, file formats and verification suites for
//! [`hnpoly_core`].

pub mod cli;
pub mod compute;
pub mod json;
pub mod render;
pub mod rng;
pub mod suites;
