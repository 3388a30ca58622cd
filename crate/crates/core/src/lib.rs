pub mod cli;
pub mod codes;
pub mod counting;
pub mod equivalence;
pub mod error;
pub mod ff;
pub mod geometry;
pub mod linpoly;
pub mod matrix;

pub use error::{Error, ErrorKind, Result};
