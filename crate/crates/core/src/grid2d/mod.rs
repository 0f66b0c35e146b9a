//! Two-dimensional model: light arrives from east, west and south only.
//!
//! Grids are `m x n` with row 0 at the north. Lots outside the grid are
//! empty, so houses on the east, west and south borders always see light.

mod es;
mod grid;
mod patterns;
mod search;

pub use es::{
    es_count, es_occupancy, es_template, lr_count, lr_enumerate, lr_to_es, ESTemplate, EsMethod,
    LRGrid, Letter,
};
pub use grid::{can_build_2d, classify_2d, is_jammed_2d, is_permissible_2d, Grid2D};
pub use patterns::{generate_pattern, min_occupancy_bound, Pattern};
pub use search::{enumerate_2d, enumerate_2d_with};
