//! Front-end support for the `heapknot` binary: parallel coloring
//! enumeration, cocycle family parsing, JSON rendering and the reproduction
//! suite.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod cocycle_spec;
pub mod parallel;
pub mod render;
pub mod reproduce;
