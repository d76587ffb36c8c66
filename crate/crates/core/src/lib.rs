//! Scattered and non-scattered order types, ordinal arithmetic in Cantor
//! normal form, and two-colourings of families of binary sequences.

pub mod canonise;
pub mod cantorlex;
pub mod classifier;
pub mod colourings;
pub mod corpus;
pub mod error;
pub mod families;
pub mod ordertype;
pub mod ordinal;
pub mod selfcheck;
mod text;

pub use error::{Error, ParseError, Result};
pub use ordinal::Ordinal;
