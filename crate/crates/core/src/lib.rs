//! Exact Walsh-Fourier analysis on the dyadic group.
//!
//! Everything in scope is a cylinder function: it depends on finitely many
//! binary coordinates, so a finite grid of dyadic-rational values represents
//! it exactly and every integral, norm, and Fourier coefficient comes out as
//! an exact dyadic rational. The crate builds on that fact in layers:
//!
//! - [`bitops`]: binary digits, the order |n|, the variation V(n);
//! - [`dyadic`]: exact numbers, grids on G and G x G, integration and norms;
//! - [`walsh`]: the Walsh-Paley system, fast transforms, partial sums;
//! - [`kernels`]: Dirichlet kernels and exact Lebesgue constants;
//! - [`hardy`]: the dyadic maximal function and H_1 norms;
//! - [`strong`]: the product kernel family, weighted strong-convergence
//!   sums, and the divergence experiment;
//! - [`verify`]: deterministic self-check suites used by the CLI.

pub mod bitops;
pub mod dyadic;
pub mod error;
pub mod hardy;
pub mod kernels;
pub mod strong;
pub mod verify;
pub mod walsh;

pub use error::{Error, Result};
