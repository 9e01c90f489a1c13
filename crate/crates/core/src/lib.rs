pub mod attacks;
pub mod error;
pub mod ffield;
pub mod scheme;
pub mod symm;
pub mod unipoly;

pub use error::{Error, Result};
