//! Baxter's gauge transformations: intertwining vectors, the dynamical
//! 6-vertex R-matrix, gauge-transformed monodromy and boundary operators,
//! gauge fixing of (alpha, beta), and the associated identity battery.

mod battery;
mod fix;
mod ops;
mod vectors;

pub use battery::{gauge_battery, gauge_fixing_battery};
pub use fix::{
    fix_gauge, generic_frame, k_qdet_plus_residual, nondegeneracy_margin,
    perturbation_breaks_triangularity, triangularity_residual, FixedGauge, GaugeFamily,
};
pub use ops::{
    a_plus, d_plus, dynamical_r, dynamical_ybe_residual, g_bax_residual, gauged_bulk,
    gauged_bulk_hat, gauged_op, gauged_op_raw, gauged_u_tilde_entry, intertwining_residual,
    k_minus_barred, k_minus_gauged, k_minus_tilde, k_plus_left, k_plus_right, rescale_r,
    t_decomp_left_residual, t_decomp_right_residual, t_even_residuals, Gen,
};
pub use vectors::{
    build_gauge_vectors, completeness_residual_bar, GaugeFrame, GaugeVectorSet, Vectors,
};
