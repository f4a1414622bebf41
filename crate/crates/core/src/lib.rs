//! Exact Hochschild and cyclic homology of commutative algebras over
//! arbitrary ground rings.
//!
//! The engine works with free DG models `ΛV ⤳ A` and the mixed complex of
//! divided-power differential forms `ΛV ⊗ Γ(dV)`. Two independent routes
//! cross-check it: the crystalline complexes `L^p`, `L'^p` of a complete
//! intersection and a brute-force normalized bar complex.
//!
//! Module map:
//!
//! - [`linalg`]: ground rings, sparse integer matrices, Smith normal form,
//!   homology of two-step complexes.
//! - [`dp`]: free strictly graded-commutative algebras with divided powers,
//!   γ-derivations and the contracting homotopy of the Koszul-type
//!   resolution.
//! - [`model`]: presentations, Koszul models and Tate towers.
//! - [`mixed`]: double mixed complexes, totalizations and filtration layers.
//! - [`gamma`]: the Γ-forms complex, its `E²` terms and the non-degeneracy
//!   witness.
//! - [`crystalline`]: divided-power envelopes of regular sequences and the
//!   Hodge-wise complexes.
//! - [`oracle`]: the normalized cyclic bar complex of a finite algebra.
//! - [`cli`]: job parsing and JSON reports for the `cyhom` binary.

pub mod cli;
pub mod crystalline;
pub mod dp;
pub mod error;
pub mod gamma;
pub mod linalg;
pub mod mixed;
pub mod model;
pub mod oracle;
mod par;

pub use error::{Error, Result};
pub use linalg::{GroundRing, HomologyGroup, Scalar, SparseMatrix};
