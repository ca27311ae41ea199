//! Exact noncommutative *-algebra workbench.

pub mod cocycle;
pub mod codec;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod ncpoly;
pub mod presentations;
pub mod rewrite;
pub mod sample;
pub mod scalar;
pub mod su2_domain;
pub mod verify;

pub use error::{AlgebraError, Result};
pub use ncpoly::{Alphabet, Family, Sym, Word};
pub use scalar::{Coefficient, GaussRational};

/// Default coefficient field.
pub type Scalar = GaussRational;
pub type Poly = ncpoly::NCPoly<Scalar>;
pub type Tensor2 = ncpoly::TensorPoly<Scalar>;
