//! Exact scalars, integer matrices, Smith normal form and homology of
//! two-step complexes.

mod homology;
mod lattice;
mod matrix;
mod ring;
mod snf;

pub use homology::{check_composition, homology_at, preimage, HomologyGroup, Stage};
pub use lattice::{relative_kernel, Lattice, Quotient};
pub use matrix::{IntMatrix, SparseMatrix};
pub use ring::{binomial, GroundRing, Scalar};
pub use snf::{
    integer_rank, invariant_factors, kernel_basis, normalize_chain, smith_diagonal, smith_form, snf, SmithForm,
};
