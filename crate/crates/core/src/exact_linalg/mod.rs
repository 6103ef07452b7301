//! Exact arithmetic over `Q`: rationals, dense linear algebra, subspaces,
//! finite matrix groups, and linear feasibility.

mod group;
pub mod lp;
mod matrix;
mod rational;
mod solve;
mod subspace;

pub use group::{
    average_operator, fixed_subspace, fixed_subspace_all_elements, group_closure, MatrixGroup,
    DEFAULT_CLOSURE_CAP,
};
pub use matrix::{QMat, QVec};
pub use rational::Rational;
pub use solve::{solve_linear, Solution};
pub use subspace::QSubspace;
