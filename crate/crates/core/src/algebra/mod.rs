//! Dense real Clifford algebra Cl(1,3) with metric (+,−,−,−).

pub mod blades;
mod multivector;
mod text;

pub use multivector::{GradeMask, Multivector};
