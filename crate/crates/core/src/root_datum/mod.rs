//! Root data, component-group actions, and the lattice-level structure of
//! possibly disconnected reductive groups.

mod datum;
mod weyl;

pub use datum::{ComponentAction, GroupData, RootDatum};
pub use weyl::{
    central_cocharacters, central_projection, connected_weyl_group, dominant_translate,
    fundamental_coweights, invariant_norm, lambda_vee, levi_group, parabolic, rational_characters,
    root_kernel, tr_g, trace_form, weyl_group, InvariantNorm, ParabolicData,
};
