use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{check_composition, GroundRing, HomologyGroup, Scalar, SparseMatrix, Stage};
use crate::mixed::FilteredGroups;
use crate::par;

use super::envelope::{Envelope, WeightWindow, Word};

/// A term of a chain complex given by generators and integer relations.
#[derive(Clone, Debug)]
pub struct Term {
    pub basis: Vec<Word>,
    pub relations: Vec<Vec<BigInt>>,
}

/// Chain complex of finitely presented modules; `boundaries[i]` maps term
/// `i` to term `i − 1` (and is `0 × dim` at `i = 0`).
#[derive(Clone, Debug)]
pub struct PresentedComplex {
    pub ring: GroundRing,
    pub terms: Vec<Term>,
    pub boundaries: Vec<SparseMatrix>,
}

impl PresentedComplex {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Boundaries compose to zero on generators; sufficient when the terms
    /// are free.
    pub fn check(&self) -> Result<()> {
        for i in 1..self.len() {
            check_composition(
                &self.boundaries[i],
                &self.boundaries[i - 1],
                &self.ring,
                &format!("position {i}"),
            )?;
        }
        Ok(())
    }

    /// `H_i`; zero outside the complex.
    pub fn homology(&self, i: usize) -> Result<HomologyGroup> {
        if i >= self.len() {
            return Ok(HomologyGroup::zero());
        }
        let dim = self.terms[i].basis.len();
        let d_in = match self.boundaries.get(i + 1) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(dim, 0),
        };
        let mut stage = Stage::over_ring(&d_in, &self.boundaries[i], &self.ring)?;
        stage.relations.extend(self.terms[i].relations.iter().cloned());
        if i > 0 {
            stage.relations_out.extend(self.terms[i - 1].relations.iter().cloned());
        }
        Ok(stage.homology(&self.ring))
    }
}

fn integer_constant(c: &Scalar) -> BigInt {
    c.numer().clone()
}

fn unit_vector(n: usize, i: usize, c: BigInt) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = c;
    v
}

/// Relations of the constant-relation envelope among the given words:
/// `c·γ_q = (q+1)·γ_{q+1}`, with `γ_{q+1}` dropped once it leaves the
/// window.
fn constant_relations(c: &Scalar, basis: &[Word]) -> Vec<Vec<BigInt>> {
    let c = integer_constant(c);
    let index: HashMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    basis
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let mut v = unit_vector(basis.len(), i, c.clone());
            let mut up = w.clone();
            up.q[0] += 1;
            if let Some(&j) = index.get(&up) {
                v[j] = -BigInt::from(up.q[0]);
            }
            v
        })
        .collect()
}

/// Matrix of `d̄` from `source` to `target`, discarding image words whose
/// weight exceeds `keep_max` (they lie in the filtration step quotiented
/// out).
fn dbar_matrix(e: &Envelope, source: &[Word], target: &[Word], keep_max: u32) -> Result<SparseMatrix> {
    let index: HashMap<&Word, usize> = target.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let cols = par::try_map(source, |w| {
        let mut col = Vec::new();
        for (u, c) in e.dbar_word(w).terms() {
            if u.weight() > keep_max {
                continue;
            }
            let i = *index.get(u).ok_or_else(|| Error::TruncationOverflow {
                source_term: e.format_word(w),
                detail: format!("image word {} is outside the target term", e.format_word(u)),
            })?;
            col.push((i, c.clone()));
        }
        Ok(col)
    })?;
    let mut m = SparseMatrix::zeros(target.len(), source.len());
    for (j, col) in cols.into_iter().enumerate() {
        for (i, c) in col {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

fn form_words(e: &Envelope, degree: usize, weight: WeightWindow) -> Vec<Word> {
    if degree > e.nvars() {
        return Vec::new();
    }
    e.words(degree as u32, weight)
}

fn assemble(e: &Envelope, terms: Vec<Term>, keep: impl Fn(usize) -> u32) -> Result<PresentedComplex> {
    let mut boundaries = vec![SparseMatrix::zeros(0, terms.first().map_or(0, |t| t.basis.len()))];
    for i in 1..terms.len() {
        boundaries.push(dbar_matrix(e, &terms[i].basis, &terms[i - 1].basis, keep(i - 1))?);
    }
    Ok(PresentedComplex {
        ring: e.ring().clone(),
        terms,
        boundaries,
    })
}

/// `L^p`: position `i` holds `F_i Ω̄^{p−i} / F_{i+1}`, spanned by the words
/// of γ-weight exactly `i`, for `i = 0..=p`.
pub fn l_complex(e: &Envelope, p: usize) -> Result<PresentedComplex> {
    let terms = (0..=p)
        .map(|i| {
            let basis = form_words(e, p - i, WeightWindow::Exactly(i as u32));
            let relations = match e.constant() {
                Some(c) => {
                    let c = integer_constant(c);
                    (0..basis.len())
                        .map(|k| unit_vector(basis.len(), k, c.clone()))
                        .collect()
                }
                None => Vec::new(),
            };
            Term { basis, relations }
        })
        .collect();
    assemble(e, terms, |i| i as u32)
}

/// `L′^p`: position `j` holds `Ω̄^{p−j} / F_{j+1}`, spanned by the words of
/// γ-weight at most `j`.
pub fn lprime_complex(e: &Envelope, p: usize) -> Result<PresentedComplex> {
    let terms = (0..=p)
        .map(|j| {
            let basis = form_words(e, p - j, WeightWindow::AtMost(j as u32));
            let relations = match e.constant() {
                Some(c) => constant_relations(c, &basis),
                None => Vec::new(),
            };
            Term { basis, relations }
        })
        .collect();
    assemble(e, terms, |j| j as u32)
}

fn layered(
    e: &Envelope,
    n_max: usize,
    build: fn(&Envelope, usize) -> Result<PresentedComplex>,
) -> Result<FilteredGroups> {
    let ps: Vec<usize> = (0..=n_max).collect();
    let complexes = par::try_map(&ps, |&p| build(e, p))?;
    let mut layers = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let row = (0..=n)
            .map(|p| complexes[p].homology(n - p))
            .collect::<Result<Vec<_>>>()?;
        layers.push(row);
    }
    let total = layers.iter().map(|row| HomologyGroup::sum(row.iter())).collect();
    Ok(FilteredGroups { total, layers })
}

/// `ĤH_n = ⊕_p H_{n−p}(L^p)` with the Hodge layers.
pub fn hodge_hh(e: &Envelope, n_max: usize) -> Result<FilteredGroups> {
    layered(e, n_max, l_complex)
}

/// `ĤC^p_n = H_{n−p}(L′^p)`, valid for at most two variables.
pub fn hc_layers_small(e: &Envelope, n_max: usize) -> Result<FilteredGroups> {
    if e.nvars() > 2 {
        return Err(Error::TooManyVariables { count: e.nvars() });
    }
    layered(e, n_max, lprime_complex)
}
