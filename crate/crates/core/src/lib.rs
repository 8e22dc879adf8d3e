//! Exact computation of Koszul cohomology dimensions and graded Betti
//! tables for smooth plane curves over prime fields, plus arithmetic
//! predictors for the corresponding vanishing/nonvanishing theorems.

pub mod bundle;
pub mod cache;
pub mod comb;
pub mod curve;
pub mod error;
pub mod field;
pub mod input;
pub mod koszul;
pub mod oracles;
pub mod poly;
pub mod sparse;
pub mod univar;
pub mod wedge;

pub use error::{Error, Result};
