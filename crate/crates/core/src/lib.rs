//! Right ideals of rings of differential operators on smooth affine curves.

pub mod ch;
pub mod classify;
pub mod curve;
pub mod dop;
pub mod error;
pub mod field;
pub mod filtration;
pub mod groebner;
pub mod harness;
pub mod ideal;
pub mod json;
pub mod linalg;
pub mod oideal;
pub mod parse;
pub mod pic;
pub mod picd;
pub mod poly;
pub mod upoly;

pub use error::{Error, Result};
