pub mod deformation;
pub mod error;
pub mod fixtures;
pub mod grading;
pub mod brackets;
pub mod cli;
pub mod cohomology;
pub mod gspace;
pub mod linalg;
pub mod multimap;
pub mod random;
pub mod scalar;
pub mod structures;

pub use error::{Error, Result};
