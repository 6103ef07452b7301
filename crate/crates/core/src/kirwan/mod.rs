//! Instability stratification for linearized actions presented by weights.

mod action;
mod min_norm;
mod strata;

pub use action::{hm_weight, is_polystable, is_semistable, is_stable, LinearizedAction, SupportPattern};
pub use min_norm::{
    is_min_norm_certificate, min_norm_point, min_norm_point_exhaustive, min_norm_point_wolfe, EXHAUSTIVE_LIMIT,
};
pub use strata::{
    candidate_betas, candidate_betas_capped, centre_action, instability, stratify_supports, stratify_supports_capped,
    stratum_for, verify_recursion, verify_recursion_capped, StratumData, DEFAULT_CANDIDATE_CAP, DEFAULT_PATTERN_CAP,
};
