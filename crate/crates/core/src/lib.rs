//! Exact graph width measures at desk scale and seeded experiments on
//! random GF(2) matrices and random graphs.
//!
//! - [`gf2`]: packed GF(2) matrices, rank, submatrix-rank minimization.
//! - [`boolspace`]: boolean row spaces, Bell, Gaussian binomial and Galois numbers.
//! - [`graphs`]: graphs, cuts, cut-rank, G(n, 1/2), graph6 and edge lists.
//! - [`widths`]: decomposition trees and exact / brute-force `f`-width.
//! - [`experiments`]: reproducible experiment runs and their reports.

pub mod boolspace;
pub mod experiments;
pub mod gf2;
pub mod graphs;
pub mod rng;
pub mod widths;

pub use boolspace::{bell, boolean_row_space_size, cut_bool, galois_number, gaussian_binomial, BigCount};
pub use gf2::{sample_matrix, BitMatrix};
pub use graphs::{cut_rank, sample_gnp_half, Cut, Graph};
pub use rng::RngSeed;
pub use widths::{booleanwidth, rankwidth, CutFunction, DecompositionTree, WidthResult};

/// Crate version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
