//! Maps between 2×2 Schur-class functions, bidisc Schur functions, kernel
//! pairs and holomorphic maps into Γ and Ē.

mod hol;
mod kernels;
mod lf;
mod lifts;

pub use crate::realization::{se_map, SeMap};
pub use hol::{HolFunctionGamma, HolFunctionTetra};
pub use kernels::{
    modulus_gap, rs, se_samples, sw_gamma, sw_gamma_member, sw_tetra, sw_tetra_member, ue, ue_uw_residual, uw,
    KernelPairReport, SampledKernelPair, UwOutput,
};
pub(crate) use kernels::{kernel_factor, realization_vectors};
pub use lf::{
    lambda_check_grid, le_gamma, le_tetra, lw_gamma, lw_tetra, LfClass, LfCoefficients, LinearFractionalFamily,
    LwTetraOutput,
};
pub use lifts::{ln_gamma, ln_tetra, ls_gamma, ls_tetra, LIFT_CHECK_RADIUS};
