//! Exact trace identities, adjoint-square spectra and class-2 tensor identities
//! for the simple Lie algebras, with a floating-point matrix oracle for the
//! classical families.

pub mod error;
pub mod ratpoly;
pub mod cartan;
pub mod reps;
pub mod tensor;
pub mod traceid;
pub mod spectral;
pub mod matreal;

pub use cartan::{algebra_data, AlgebraData, AlgebraId, Series, Weight};
pub use error::{Error, Result};
pub use ratpoly::{rat, rat_str, Rational, SparsePoly};
pub use reps::{dimension, weight_system, WeightSystem};
pub use spectral::{IndexAtom, IndexIdentity, SpectrumTable};
pub use tensor::{adjoint_square_table, square_split, tensor_decompose, Space, TableRow};
pub use traceid::{BasisKind, CharPoly, Expr, Relation, RepKind, TraceContext};
