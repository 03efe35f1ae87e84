pub mod arith;
pub mod cli;
pub mod curves;
pub mod derivations;
pub mod error;
pub mod liealg;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
