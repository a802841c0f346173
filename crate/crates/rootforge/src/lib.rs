//! Exact root systems, Clifford-algebra versor groups, icosahedral
//! representation theory, affine point arrays and Hamiltonian cycles.

pub mod affine;
pub mod cli;
pub mod clifford;
pub mod cover;
pub mod error;
pub mod hamilton;
pub mod induce;
pub mod linalg;
pub mod mckay;
pub mod polyhedra;
pub mod reptheory;
pub mod roots;
pub mod scalars;

pub use error::{Error, Result};
