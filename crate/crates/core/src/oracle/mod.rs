//! Brute-force ground truth: the normalized cyclic bar complex
//! `C_q(A) = A ⊗ Ā^{⊗q}` of an algebra that is finite free over `k`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{GroundRing, HomologyGroup, Scalar, SparseMatrix};
use crate::mixed::{cyclic_total_split, hochschild_total_split, DoubleMixedComplex, MapKind};
use crate::model::{Polynomial, Presentation};
use crate::par;

/// Commutative algebra free of finite rank over `k`, with basis element 0
/// equal to the unit.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    ring: GroundRing,
    names: Vec<String>,
    /// `table[i][j]` = coordinates of `e_i·e_j`.
    table: Vec<Vec<Vec<Scalar>>>,
    /// Multidegree of each basis element; products are homogeneous.
    grading: Vec<Vec<u32>>,
}

impl FiniteAlgebra {
    /// Checks the unit, commutativity and associativity of the table.
    pub fn new(
        ring: GroundRing,
        names: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        grading: Option<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Unsupported("the zero algebra has no unit".into()));
        }
        let shape_ok = table.len() == n && table.iter().all(|r| r.len() == n && r.iter().all(|c| c.len() == n));
        if !shape_ok {
            return Err(Error::DimensionMismatch("multiplication table must be n×n×n".into()));
        }
        let table: Vec<Vec<Vec<Scalar>>> = table
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| c.into_iter().map(|v| ring.normalize(v)).collect())
                    .collect()
            })
            .collect();
        let grading = grading.unwrap_or_else(|| vec![Vec::new(); n]);
        let alg = FiniteAlgebra {
            ring,
            names,
            table,
            grading,
        };
        for i in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            if alg.table[0][i] != e || alg.table[i][0] != e {
                return Err(Error::Unsupported("basis element 0 is not the unit".into()));
            }
            for j in 0..n {
                if alg.table[i][j] != alg.table[j][i] {
                    return Err(Error::Unsupported("multiplication is not commutative".into()));
                }
                for k in 0..n {
                    let left = alg.mul_vec(&alg.table[i][j], &alg.basis_vec(k));
                    let right = alg.mul_vec(&alg.basis_vec(i), &alg.table[j][k]);
                    if left != right {
                        return Err(Error::Unsupported("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// `k[x]/(f)` on the standard monomials of a finite quasi-monic
    /// presentation.
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        let basis = p.standard_monomials()?;
        let n = basis.len();
        let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let e: Vec<u32> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                let f = p.reduce(&Polynomial::term(p.nvars(), e, Scalar::one()))?;
                for (t, c) in f.terms() {
                    table[i][j][index[&t.0]] = c.clone();
                }
            }
        }
        let names = basis
            .iter()
            .map(|e| Polynomial::term(p.nvars(), e.clone(), Scalar::one()).format(&p.variables))
            .collect();
        let monomial_relations = p.relations.iter().all(|f| f.terms().count() == 1);
        let grading = if monomial_relations {
            Some(basis.clone())
        } else if p.is_homogeneous() {
            Some(basis.iter().map(|e| vec![e.iter().sum()]).collect())
        } else {
            None
        };
        Self::new(p.ring.clone(), names, table, grading)
    }

    pub fn ring(&self) -> &GroundRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// The same algebra on a permuted basis; `perm[new] = old`, and the
    /// unit must stay first.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.rank();
        assert_eq!(perm.len(), n);
        let mut inverse = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let old = &self.table[perm[i]][perm[j]];
                        let mut v = vec![Scalar::zero(); n];
                        for (k, c) in old.iter().enumerate() {
                            v[inverse[k]] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let names = perm.iter().map(|&o| self.names[o].clone()).collect();
        let grading = perm.iter().map(|&o| self.grading[o].clone()).collect();
        Self::new(self.ring.clone(), names, table, Some(grading))
    }

    fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.rank()];
        v[i] = Scalar::one();
        v
    }

    fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.rank();
        let mut out = vec![Scalar::zero(); n];
        for (ai, row) in a.iter().zip(&self.table) {
            if ai.is_zero() {
                continue;
            }
            for (bj, product) in b.iter().zip(row) {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, t) in out.iter_mut().zip(product) {
                    *o += &c * t;
                }
            }
        }
        out.into_iter().map(|v| self.ring.normalize(v)).collect()
    }

    fn weight(&self, tensor: &[usize]) -> Vec<u32> {
        let mut w = self.grading[0].clone();
        for &t in tensor {
            for (a, b) in w.iter_mut().zip(&self.grading[t]) {
                *a += b;
            }
        }
        w
    }
}

type Tensor = Vec<usize>;

/// Tensors `a₀ ⊗ ā₁ ⊗ … ⊗ ā_q` of one length, grouped by multidegree.
fn tensors(alg: &FiniteAlgebra, q: usize) -> BTreeMap<Vec<u32>, Vec<Tensor>> {
    let n = alg.rank();
    let mut all: Vec<Tensor> = (0..n).map(|i| vec![i]).collect();
    for _ in 0..q {
        all = all
            .into_iter()
            .flat_map(|t| {
                (1..n).map(move |j| {
                    let mut u = t.clone();
                    u.push(j);
                    u
                })
            })
            .collect();
    }
    let mut out: BTreeMap<Vec<u32>, Vec<Tensor>> = BTreeMap::new();
    for t in all {
        out.entry(alg.weight(&t)).or_default().push(t);
    }
    out
}

fn accumulate(out: &mut BTreeMap<Tensor, Scalar>, t: Tensor, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = out.entry(t).or_insert_with(Scalar::zero);
    *e += c;
}

/// Normalized Hochschild boundary of one tensor.
fn hochschild_b(alg: &FiniteAlgebra, t: &[usize]) -> BTreeMap<Tensor, Scalar> {
    let q = t.len() - 1;
    let mut out = BTreeMap::new();
    if q == 0 {
        return out;
    }
    let sign = |i: usize| {
        if i.is_multiple_of(2) {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    };
    // a₀a₁ ⊗ a₂ ⊗ … ⊗ a_q
    for (k, c) in alg.product(t[0], t[1]).iter().enumerate() {
        let mut u = vec![k];
        u.extend_from_slice(&t[2..]);
        accumulate(&mut out, u, c.clone());
    }
    for i in 1..q {
        for (k, c) in alg.product(t[i], t[i + 1]).iter().enumerate() {
            if k == 0 {
                continue;
            }
            let mut u = t[..i].to_vec();
            u.push(k);
            u.extend_from_slice(&t[i + 2..]);
            accumulate(&mut out, u, sign(i) * c);
        }
    }
    // (−1)^q a_q a₀ ⊗ a₁ ⊗ … ⊗ a_{q−1}
    for (k, c) in alg.product(t[q], t[0]).iter().enumerate() {
        let mut u = vec![k];
        u.extend_from_slice(&t[1..q]);
        accumulate(&mut out, u, sign(q) * c);
    }
    out
}

/// Connes' operator on the normalized complex:
/// `B(a₀ ⊗ … ⊗ a_q) = Σ_i (−1)^{qi} 1 ⊗ a_i ⊗ … ⊗ a_q ⊗ a₀ ⊗ … ⊗ a_{i−1}`.
fn connes_b(t: &[usize]) -> BTreeMap<Tensor, Scalar> {
    let mut out = BTreeMap::new();
    if t[0] == 0 {
        return out;
    }
    let q = t.len() - 1;
    for i in 0..=q {
        let mut u = vec![0];
        u.extend_from_slice(&t[i..]);
        u.extend_from_slice(&t[..i]);
        let c = if (q * i).is_multiple_of(2) {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        accumulate(&mut out, u, c);
    }
    out
}

fn matrix(
    src: &[Tensor],
    tgt: &[Tensor],
    f: impl Fn(&[usize]) -> BTreeMap<Tensor, Scalar> + Sync + Send,
) -> SparseMatrix {
    let index: HashMap<&Tensor, usize> = tgt.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let cols = par::map(src, |t| {
        f(t).into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(u, c)| (*index.get(&u).expect("image stays in its multidegree"), c))
            .collect::<Vec<_>>()
    });
    let mut m = SparseMatrix::zeros(tgt.len(), src.len());
    for (j, col) in cols.into_iter().enumerate() {
        for (i, c) in col {
            m.add_to(i, j, &c);
        }
    }
    m
}

/// The cyclic mixed complex, split by multidegree, as double mixed
/// complexes concentrated in column 0 with `D = b`, `∂ = 0`.
pub fn cyclic_mixed_pieces(alg: &FiniteAlgebra, n_max: usize) -> Result<Vec<DoubleMixedComplex>> {
    let top = n_max + 1;
    let by_q: Vec<BTreeMap<Vec<u32>, Vec<Tensor>>> = (0..=top).map(|q| tensors(alg, q)).collect();
    let mut weights: Vec<Vec<u32>> = by_q.iter().flat_map(|m| m.keys().cloned()).collect();
    weights.sort();
    weights.dedup();
    let empty = Vec::new();
    par::try_map(&weights, |w| {
        let slice = |q: usize| by_q[q].get(w).unwrap_or(&empty);
        let mut m = DoubleMixedComplex::new(alg.ring().clone(), top);
        for q in 0..=top {
            m.set_dim(0, q, slice(q).len());
        }
        for q in 0..=top {
            if q > 0 {
                m.set_map(
                    MapKind::D,
                    0,
                    q,
                    matrix(slice(q), slice(q - 1), |t| hochschild_b(alg, t)),
                )?;
            }
            if q < top {
                m.set_map(MapKind::B, 0, q, matrix(slice(q), slice(q + 1), connes_b))?;
            }
        }
        Ok(m)
    })
}

/// The whole cyclic mixed complex in one piece.
pub fn cyclic_mixed(alg: &FiniteAlgebra, n_max: usize) -> Result<DoubleMixedComplex> {
    let top = n_max + 1;
    let slices: Vec<Vec<Tensor>> = (0..=top)
        .map(|q| tensors(alg, q).into_values().flatten().collect())
        .collect();
    let mut m = DoubleMixedComplex::new(alg.ring().clone(), top);
    for (q, slice) in slices.iter().enumerate() {
        m.set_dim(0, q, slice.len());
    }
    for q in 0..=top {
        if q > 0 {
            m.set_map(
                MapKind::D,
                0,
                q,
                matrix(&slices[q], &slices[q - 1], |t| hochschild_b(alg, t)),
            )?;
        }
        if q < top {
            m.set_map(MapKind::B, 0, q, matrix(&slices[q], &slices[q + 1], connes_b))?;
        }
    }
    Ok(m)
}

pub fn hh_oracle(alg: &FiniteAlgebra, n_max: usize) -> Result<Vec<HomologyGroup>> {
    hochschild_total_split(&cyclic_mixed_pieces(alg, n_max)?, n_max)
}

pub fn hc_oracle(alg: &FiniteAlgebra, n_max: usize) -> Result<Vec<HomologyGroup>> {
    cyclic_total_split(&cyclic_mixed_pieces(alg, n_max)?, n_max)
}
