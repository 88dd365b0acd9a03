//! Numerical laboratory for planar curve shortening flow.
//!
//! The crate is organised around four layers:
//!
//! - [`geometry`]: discrete closed curves (embedded polygons), curvature,
//!   areas, resampling, intersection counting and distances;
//! - [`flow`]: time integration of the normal-velocity-equals-curvature law,
//!   analytic comparison solutions, and trajectory-level monitors;
//! - [`slingshot`]: hairpin-shaped non-compact initial curves with decaying
//!   tail graphs, their capped compact approximants, and the diagnostics for
//!   the family of flows they generate;
//! - [`verify`]: rectangle-frame graph estimates (gradient and height bounds),
//!   empirical curvature-derivative suprema, and greedy rectangle covers.
//!
//! Everything here is pure computation over `f64`; the crate is `no_std`
//! (plus `alloc`). File formats, CSV/JSON/SVG emission, and the CLI live in
//! the companion `csf` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod flow;
pub mod geometry;
pub mod slingshot;
pub mod verify;
