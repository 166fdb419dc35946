//! Exact computations for Lie triple systems over the rationals: axioms,
//! representations, the controlling graded Lie algebra, twisting, the
//! associated `L∞` brackets, matched pairs and relative Rota-Baxter operators.

pub mod cli;
pub mod cochain;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod linear;
pub mod linfty;
pub mod scalar;
pub mod system;
pub mod tuples;
pub mod twisting;

pub use cochain::{Bidegree, Cochain, SplitContext};
pub use error::{Error, Result};
pub use linear::LinearMap;
pub use scalar::Scalar;
pub use system::{LieAlgebra, Representation, TripleSystem};
