//! Sampling, projections and logarithms on the two-sheet real contour.
pub mod boundary;
pub mod grid;
pub mod logs;
pub mod projection;

pub use boundary::{decompose, BoundaryFunction};
pub use grid::{make_grid, GammaGrid, Node};
pub use logs::{beta_general, beta_invariant, continuous_logs, sheet_indices, winding_index, BetaInvariant};
pub use projection::{
    alpha_functional, project_gamma, project_gamma_tilde, project_gamma_tilde_with, riesz_project, Side,
};
