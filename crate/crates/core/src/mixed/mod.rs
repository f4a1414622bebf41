//! Double mixed complexes `(M_{*,*}, D, ∂, B)`: totalizations for
//! Hochschild and cyclic homology, column-filtration layers and the `E¹`
//! term.
//!
//! `D` lowers the second index, `∂` the first, `B` raises the second. The
//! cyclic totalization puts a copy of `Tot M` shifted by `2i` in column
//! offset `i`, with `B` mapping copy `i` to copy `i - 1`.

mod complex;
mod totals;

pub use complex::{DoubleMixedComplex, MapKind, Validation};
pub use totals::{
    cyclic_total, cyclic_total_split, e1_term, filtration_layers, filtration_layers_split, hochschild_total,
    hochschild_total_split, E1Term, FilteredGroups, Mode,
};
