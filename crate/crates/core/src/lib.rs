pub mod arith;
pub mod certify;
pub mod conductor;
pub mod corpus;
pub mod dedekind;
pub mod error;
pub mod gras;
mod intpoly;
pub mod poly;
pub mod quartic;
pub mod search;
pub mod sturm;

pub use error::{Error, Result};
