//! Exact computational algebraic number theory.

pub mod arith;
pub mod census;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod linalg;
pub mod numeric;
pub mod poly;
pub mod quad;
pub mod units;

pub use error::{Error, Result};
