//! Discrete heat kernels on `Z/NZ`, the twisted heat trace and its positivity,
//! and the lazy-walk path counts behind kernel monotonicity.

mod bessel;
mod kernel;
mod paths;
mod trace;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_ratio_bound};
pub use kernel::{
    covering_truncation, heat_kernel_bessel, heat_kernel_bessel_auto, heat_kernel_spectral,
    HeatKernelValue, KernelMethod, COVERING_TAIL_TOLERANCE,
};
pub use paths::{monotonicity_check, path_counts, MonotonicityReport, PathCountVector};
pub use trace::{
    heat_positivity_scan, large_t_proven, linear_grid, mellin_check, small_t_proven,
    twisted_heat_trace, MellinCheck, PositivityRegion, TwistedTrace, LARGE_T_NUMERIC,
    POSITIVITY_COLUMNS, SMALL_T_NUMERIC,
};
