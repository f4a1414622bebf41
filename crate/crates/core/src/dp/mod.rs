//! Free strictly graded-commutative algebras with divided powers.
//!
//! A basis word is an exponent vector over the generator table: polynomial
//! exponents, exterior bits and divided-power indices `γ_q`. Products use
//! the Koszul sign rule and `γ_p·γ_q = C(p+q, p)·γ_{p+q}`.

mod algebra;
mod derivation;
mod homotopy;

pub use algebra::{Algebra, Element, FiltrationBound, Generator, GeneratorKind, Monomial, Window};
pub use derivation::{derivation_matrix, derive, derive_monomial, GammaDerivation};
pub use homotopy::Resolution;
