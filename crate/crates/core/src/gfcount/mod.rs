//! Exact generating functions for the one-dimensional families.
//!
//! Every route here (closed forms, block transfer systems, the predator
//! digraph, long division and recurrences) produces the same `J(n, k)`;
//! [`crate::enum1d`] is the oracle they are all checked against.

mod bipoly;
mod rational;
mod series;
mod transfer;

pub use bipoly::BiPoly;
pub use rational::{family_gf, gf_closed, RationalGF};
pub use series::{
    counts_by_recurrence, predator_closed_form, series_expand, specialise, totals_from_gf,
    RecurrenceRows,
};
pub use transfer::{
    block_system, build_digraph, gf_from_blocks, gf_from_digraph, Digraph, TransferSystem,
    PREDATOR_FORBIDDEN,
};
