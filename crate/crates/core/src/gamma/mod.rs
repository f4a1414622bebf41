//! The mixed complex of Γ-forms `ΛV ⊗ Γ(dV)` of a free model, its `E²`
//! term, the assembled Hochschild and cyclic groups, and the divided-power
//! witness showing the Hochschild spectral sequence need not degenerate.
//!
//! For a generator `v` the form `dv` has degree `|v| + 1`: it is exterior
//! when `|v|` is even and carries divided powers when `|v|` is odd.

mod assemble;
mod forms;
mod witness;

pub use assemble::{e2_hh, hc_assemble, hc_totals, hh_assemble, hh_layers};
pub use forms::{auto_truncation, forms_algebra, weight_bound, GammaFormsComplex, Truncation};
pub use witness::{witness_nondegeneracy, witness_with, WitnessReport};
