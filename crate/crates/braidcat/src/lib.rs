//! Exact computations for diagonally braided Nichols algebras, their
//! doubles, and the representation categories attached to them.

pub mod cyclotomic;
pub mod linalg;
pub mod nichols;
pub mod error;
pub mod graded_braid;
pub mod braided_hopf;
pub mod repcat;
pub mod singlet_fusion;
pub mod yd_uproll;
pub mod acceptance;

pub use cyclotomic::{CycNum, Q};
pub use error::{Error, Result};
