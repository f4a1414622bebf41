//! Divided-power envelopes of complete intersections, the crystalline
//! complex `Ω̄ = D ⊗ Ω` with its γ-filtration, and the complexes `L^p`,
//! `L′^p` whose homology gives the Hodge layers of `ĤH` and `ĤC`.
//!
//! The envelope is kept formal: words `x^α·γ^Q(f)` with standard `α`,
//! multiplied with binomial coefficients and rewritten with
//! `u·x_i^{m_i} = γ_1(f_i) − h_i`.

mod complexes;
mod envelope;

pub use complexes::{hc_layers_small, hodge_hh, l_complex, lprime_complex, PresentedComplex, Term};
pub use envelope::{Envelope, Form, WeightWindow, Word};
