//! Hecke algebra data: KL polynomials, mu-coefficients, KL-basis structure
//! constants and the a-function.

mod afunction;
pub mod cache;
mod kl;
mod poly;
mod product;

pub use afunction::{cell_a_value, AFunctionMode, FULL_SCAN_LIMIT};
pub use kl::{KLTable, KlRecursion, CONVENTION_VERSION, KL_ORDER_LIMIT};
pub use poly::{LaurentPoly, Poly};
pub use product::{CExpansion, HeckeProducts, LeftProducts};
