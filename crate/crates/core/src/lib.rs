//! Remez-type inequalities on sampling sets in the unit ball.
//!
//! A polynomial of degree `d` that is bounded by `L` on a set `Z` is bounded
//! on the whole ball by `R_d(Z) L`. This crate estimates the constant
//! `R_d(Z)` from covering numbers of `Z`, computes it exactly for finite sets
//! through linear programming, and extends the resulting inequalities to
//! smooth functions.

pub mod entropy;
pub mod error;
pub mod numfmt;
pub mod oracle;
pub mod remez_bounds;
pub mod set_models;
pub mod smooth_bounds;

pub use entropy::{
    covering_number_1d, covering_number_box, covering_profile_1d, omega_closed_form, omega_d,
    omega_d_with, vitushkin_md, CoveringProfile, OmegaEstimate, VitushkinParams,
};
pub use error::{Error, Result};
pub use remez_bounds::{
    chebyshev_t, q_of_set, remez_constant_upper, remez_factor_1d, remez_factor_nd, Provenance,
    RemezConstant,
};
pub use set_models::{parse_descriptor, Point, SetDescriptor};
pub use smooth_bounds::{
    curve_smooth_bound, fixed_degree_bound, general_bound, select_d0, smooth_remez,
    taylor_remainder, taylor_remez, whitney_lower, BoundReport, Rule, SmoothFnSpec,
};
