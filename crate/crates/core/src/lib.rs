pub mod bundle;
pub mod change_of_group;
pub mod cli;
pub mod error;
pub mod exact_linalg;
pub mod groups;
pub mod io;
pub mod kirwan;
pub mod root_datum;

pub use error::{Error, ErrorClass, Result};
pub use exact_linalg::{MatrixGroup, QMat, QSubspace, QVec, Rational};
