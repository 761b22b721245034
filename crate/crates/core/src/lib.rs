//! Least singular value and anti-concentration laboratory for discrete
//! random matrices.
//!
//! The crate is organized by subsystem:
//!
//! * [`models`]: i.i.d. sign matrices, uniform row-regular {0,1} matrices,
//!   the two-step base model, and matching combinatorics.
//! * [`spectral`]: singular values, norms on the zero-sum hyperplane, and
//!   exact singularity via fraction-free elimination.
//! * [`anticonc`]: exact laws of signed sums (over the integers, modulo p,
//!   and on the zero-sum slice) and Levy concentration.
//! * [`structure`]: least common denominators, `R_k^*` counting, the
//!   Halasz-type and counting bounds, and witnessing pairs.
//! * [`slice_stats`]: closed-form slice moments and the moment/MGF chain.
//! * [`harness`]: experiment configuration, tail curves, exact
//!   singularity frequencies, invariant suites, and plotting.

// NaN must fail parameter checks, so `!(x > 0.0)` is intended throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod anticonc;
mod error;
pub mod harness;
pub mod models;
pub mod primes;
pub mod rng;
pub mod slice_stats;
pub mod spectral;
pub mod structure;

pub use error::{LabError, Result};
