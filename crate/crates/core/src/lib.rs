//! Kazhdan–Lusztig cells, Lusztig's a-function and cell based rings for
//! finite Coxeter groups.

mod bits;
pub mod based;
pub mod cells;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod hecke;

pub use error::{Error, Result};
