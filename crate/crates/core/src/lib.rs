//! Exact computations with knot-like complexes over `F2[U, V, U^-1, V^-1]`
//! carrying a skew homotopy involution, and the involutive correction terms
//! of their large surgeries.

pub mod complex;
pub mod error;
pub mod gf2;
pub mod invariants;
pub mod iota;
pub mod matrix;
pub mod models;
pub mod ring;

pub use complex::{BasisElement, FreeComplex, HomotopyConstraints, Morphism, Variance};
pub use error::{Error, Result};
pub use invariants::{InvariantReport, UTowerComplex};
pub use iota::{IotaComplex, Variant};
pub use matrix::SparseMatrix;
pub use ring::{LaurentPoly, Monomial, Var};
