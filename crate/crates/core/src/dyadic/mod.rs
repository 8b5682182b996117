//! Exact representation of cylinder functions on the dyadic group and its
//! square: dyadic rationals, LSB-first cell indexing, grids with exact
//! integration and norms.
//!
//! Cell indexing convention: bit k of a cell index is coordinate x_k, so
//! Walsh evaluation is the parity of a bitwise AND and membership in I_m(0)
//! is a divisibility test. Cell order is therefore bit-reversed relative to
//! the real-line order of [0,1) embeddings; integrals and norms never see
//! the difference.

mod grid;
mod rational;

pub(crate) use grid::{cell_add, cell_sub, normalize_cells, shift_up};
pub use grid::{CellIndex, Grid1D, Grid2D, MAX_RESOLUTION_1D, MAX_RESOLUTION_2D};
pub use rational::DyadicRational;
