//! Batch front end: a small line-oriented job format, the pipelines it
//! drives, and deterministic JSON reports.
//!
//! Every report carries `command`, `ring`, `variables`, `relations`,
//! `n_max` and `warnings`. Homology groups appear as
//! `{"n": n, "free_rank": r, "torsion": [d₁, …]}`, where over `ℤ/m` the
//! free rank counts summands `ℤ/m`.

mod job;
mod run;

pub use job::{parse, Command, JobSpec};
pub use run::{compare, error_json, gamma_complex, run, selftest, Report};
