//! Exact symbolic computation with Lie conformal superalgebras of type W and S.
//!
//! Everything is generic over a [`Scalar`] field; the verification suites use
//! [`Rational`].

pub mod annihilation;
pub mod conformal;
pub mod derham;
pub mod error;
pub mod grassmann;
pub mod linalg;
pub mod module_vec;
pub mod poly;
pub mod repn;
pub mod scalar;
pub mod singular;

pub use error::{Error, Result};
pub use grassmann::{GrassmannElement, Mono};
pub use module_vec::{BasisEntry, BiLambdaValued, GradedBasis, LambdaValued, ModuleVector, Parity};
pub use scalar::Scalar;

/// Exact rational scalars.
pub type Rational = num_rational::BigRational;

pub type GrassmannQ = GrassmannElement<Rational>;
pub type ModuleVectorQ = ModuleVector<Rational>;
pub type LambdaValuedQ = LambdaValued<Rational>;
