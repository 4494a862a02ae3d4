//! Stiffness and natural-frequency models for a PRRRP ("Biglide") planar
//! parallel machine.
//!
//! Two model families are provided side by side:
//!
//! * simplified models that only account for actuator elasticity, built on the
//!   2×2 velocity Jacobian of the mechanism ([`simplified`]);
//! * refined lumped-parameter models in which every link carries 6-DOF virtual
//!   springs, both for statics ([`vjm`]) and for modal analysis ([`modal`]).
//!
//! [`sweep`] runs workspace maps and leg-length (α) parametric studies on top
//! of both. The crate is `no_std` (it needs `alloc`); dataset files, CSV and the
//! command-line front end live in the `biglide-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(a > b)` is used on purpose so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod beam;
pub mod dataset;
mod error;
pub mod mechanism;
pub mod modal;
pub mod numerics;
pub mod simplified;
pub mod spatial;
pub mod sweep;
pub mod vjm;

pub use error::{Error, Result};
