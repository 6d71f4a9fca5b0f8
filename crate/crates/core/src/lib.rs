//! Exact counting, quasirandomness audits and regularity decompositions for graphs
//! and 3-uniform hypergraphs.

pub mod bits;
pub mod bound;
pub mod construct;
pub mod count;
pub mod deltareg;
pub mod dims;
pub mod naive;
pub mod error;
pub mod graphreg;
pub mod hyperreg;
pub mod io;
mod par;
pub mod quasi;
pub mod structures;
pub mod verify;
mod wide;

pub use error::{Error, Result};
