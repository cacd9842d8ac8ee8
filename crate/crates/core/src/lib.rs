pub mod error;
pub mod generate;
pub mod linalg;
pub mod orthogonality;
mod pencil;
pub mod ranges;
pub mod shell;

pub use error::{Error, Result};
pub use linalg::{
    cartesian_parts, eig2x2, herm_eigen, operator_norm, CMatrix, CartesianParts, HermEigen,
};
pub use pencil::Pencil;
