pub mod cli;
pub mod cyclekit;
pub mod error;
pub mod gf2;
pub mod linkage;
pub mod matroid;
pub mod patterns;
pub mod witness;

pub use error::{Error, Result};
