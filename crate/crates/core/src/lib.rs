pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod camacho_sad;
pub mod cli;
pub mod corpus;
pub mod foliation;
pub mod puiseux;
pub mod ramification;
pub mod surface;
