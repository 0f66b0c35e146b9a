//! Exact combinatorics for jammed configurations of the Riviera model and its
//! two-dimensional parent, restricted to configurations that resist predators,
//! altruists, or both.
//!
//! The crate is organised bottom-up:
//!
//! * [`core1d`] holds the semantic predicates on binary strings. Everything else
//!   is validated against them.
//! * [`enum1d`] enumerates strings exhaustively and produces [`CountTable`]s.
//! * [`gfcount`] is the generating-function engine: sparse bivariate integer
//!   polynomials, transfer systems, series expansion and recurrences.
//! * [`complexity`] evaluates configurational entropy curves three ways.
//! * [`grid2d`] covers the rectangular model: predicates, pruned search,
//!   pattern generators and the structure of evolutionary stable grids.
//!
//! Heavy loops run on rayon when the `parallel` feature is enabled (the
//! default); every parallel routine also has a sequential path selected via
//! [`Exec`], and results never depend on which one ran.

pub mod complexity;
pub mod core1d;
pub mod enum1d;
mod error;
mod exec;
mod family;
pub mod gfcount;
pub mod grid2d;

pub use core1d::{Classification, Configuration1D, SiteReport};
pub use enum1d::{Axis, CountTable};
pub use error::{Error, Result};
pub use exec::{Caps, Exec};
pub use family::Family;
