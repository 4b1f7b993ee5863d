//! Spacetime-algebra kernel, Dirac–Hestenes spinor fields and worldline transport.

pub mod algebra;
pub mod bridge;
pub mod cli;
pub mod error;
pub mod field;
pub mod soliton;
pub mod spinor;
pub mod worldline;

pub use algebra::{GradeMask, Multivector};
pub use error::{Error, Result};
