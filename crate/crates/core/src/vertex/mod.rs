//! The 8-vertex reflection algebra layer: R- and K-matrices, bulk and
//! boundary monodromy matrices, transfer matrices, quantum determinants,
//! the open XYZ Hamiltonian and the structural identity battery.

mod battery;
mod chain;
mod params;
mod weights;

pub use battery::{hamiltonian_battery, identity_battery};
pub use chain::*;
pub use params::{BoundaryParams, ModelParams, Side, ESOV_MARGIN};
pub use weights::{
    k_matrix, k_matrix_raw, k_matrix_sn_diag, r_matrix, r_weights, r_weights_sn, RWeights, Scalars,
};
