//! Heap colorings, ternary self-distributive (TSD) cohomology and ribbon
//! cocycle invariants of framed links presented as framed braid closures.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact integer
//! arithmetic; there are no floating point values anywhere.
//!
//! Module map:
//! - [`algebra`]: finite groups given by tables, the heap operation
//!   `[x,y,z] = x y⁻¹ z`, subgroups and left cosets.
//! - [`linalg`]: sparse big-integer matrices, Smith normal form, integer
//!   kernels, solving modulo `m`, lattice quotients.
//! - [`tsd_complex`]: the TSD chain complex in its full, degenerate,
//!   nondegenerate and coset-localized/relative variants; second cohomology.
//! - [`cocycle_lib`]: explicit 2-cocycle families and class-rank tests.
//! - [`link_model`]: framed braid closures and their crossing sites.
//! - [`coloring`]: doubled-strand label propagation and coloring enumeration.
//! - [`state_sum`]: Boltzmann weights and the componentwise cocycle invariant.
//! - [`fundamental_heap`]: free words, presentations of the fundamental heap,
//!   Tietze simplification, abelianization and homomorphism checks.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod algebra;
pub mod cocycle_lib;
pub mod coloring;
mod error;
pub mod fundamental_heap;
pub mod link_model;
pub mod linalg;
pub mod state_sum;
pub mod tsd_complex;

pub use error::{Error, Result};
