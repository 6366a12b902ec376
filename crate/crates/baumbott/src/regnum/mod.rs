//! Numerical realization of the regularized connection and its residue
//! limits, in the rank-one isolated case.
//!
//! The section regularizing the geometry is the field itself (`s = X`
//! with the trivial metric), so `|s|^2 = sum |a_i|^2` and every shell
//! quantity is computable from pointwise frame data. See [`quad`] for
//! the density derivation and sign conventions.

mod chi;
mod frame;
mod quad;

pub use chi::{ChiProfile, SmoothstepKind};
pub use frame::{frame_eval, homotopy_identity_check, minimal_inverse_pointwise, HomotopyCheck, PointFrame};
pub use quad::{
    bb_integrand, bb_numeric, bb_numeric_with_error, bm_action, convergence_study,
    ConvergenceRow, ConvergenceTable, QuadratureMode, ShellQuadrature,
};
