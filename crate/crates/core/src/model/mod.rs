//! Presentations of commutative algebras and their free models: Koszul
//! models of complete intersections and Tate towers over `k` with no
//! degree-0 generators.

mod koszul;
mod polynomial;
mod tate;

pub(crate) use koszul::widen;
pub use koszul::{check_boundary_square, koszul_model, polynomial_element, FreeDGA};
pub use polynomial::{Exponent, LeadingPower, Polynomial, Presentation};
pub use tate::{degree_homology, degree_slice, tate_extend, TateStage, TateTower};
