use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::complex::{DoubleMixedComplex, MapKind};
use crate::error::{Error, Result};
use crate::linalg::{homology_at, GroundRing, HomologyGroup, Scalar, SparseMatrix, Stage};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Hochschild: totalization of `(M, D + ∂)`.
    HH,
    /// Cyclic: totalization of `⊕_i M[2i]` with `D + ∂ + B`.
    HC,
}

/// Homology groups with their filtration layers: `layers[n][p]` is the
/// piece `F_{n-p} H_n / F_{n-p-1} H_n` of the column filtration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FilteredGroups {
    pub total: Vec<HomologyGroup>,
    pub layers: Vec<Vec<HomologyGroup>>,
}

impl FilteredGroups {
    pub fn empty(n_max: usize) -> Self {
        FilteredGroups {
            total: vec![HomologyGroup::zero(); n_max + 1],
            layers: (0..=n_max).map(|n| vec![HomologyGroup::zero(); n + 1]).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FilteredGroups) -> FilteredGroups {
        let n = self.total.len().max(other.total.len());
        let get = |g: &FilteredGroups, i: usize| g.total.get(i).cloned().unwrap_or_default();
        let layer = |g: &FilteredGroups, i: usize, p: usize| {
            g.layers.get(i).and_then(|l| l.get(p)).cloned().unwrap_or_default()
        };
        FilteredGroups {
            total: (0..n).map(|i| get(self, i).direct_sum(&get(other, i))).collect(),
            layers: (0..n)
                .map(|i| {
                    (0..=i)
                        .map(|p| layer(self, i, p).direct_sum(&layer(other, i, p)))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn sum<'a>(parts: impl IntoIterator<Item = &'a FilteredGroups>, n_max: usize) -> FilteredGroups {
        parts
            .into_iter()
            .fold(FilteredGroups::empty(n_max), |acc, g| acc.direct_sum(g))
    }

    /// Whether the layers of degree `n` have the ranks and torsion orders
    /// of the total group.
    pub fn layers_consistent(&self, n: usize) -> bool {
        let layers = &self.layers[n];
        let rank: usize = layers.iter().map(|g| g.free_rank).sum();
        let order: BigInt = layers.iter().map(HomologyGroup::torsion_order).product();
        rank == self.total[n].free_rank && order == self.total[n].torsion_order()
    }
}

/// A basis element of a total complex: slice, copy index and offset.
#[derive(Clone, Copy, Debug)]
struct Block {
    a: usize,
    b: usize,
    copy: usize,
    offset: usize,
    dim: usize,
}

fn layout(m: &DoubleMixedComplex, n: usize, mode: Mode) -> (Vec<Block>, usize) {
    let copies = match mode {
        Mode::HH => 0,
        Mode::HC => n / 2,
    };
    let mut blocks = Vec::new();
    let mut offset = 0;
    for copy in 0..=copies {
        let deg = n - 2 * copy;
        for a in 0..=deg {
            let b = deg - a;
            let dim = m.dim(a, b);
            if dim > 0 {
                blocks.push(Block {
                    a,
                    b,
                    copy,
                    offset,
                    dim,
                });
                offset += dim;
            }
        }
    }
    (blocks, offset)
}

fn place(out: &mut SparseMatrix, m: &SparseMatrix, row: usize, col: usize) {
    for (i, j, v) in m.entries() {
        out.add_to(row + i, col + j, v);
    }
}

/// Total boundary from degree `n` to `n - 1`.
fn total_boundary(m: &DoubleMixedComplex, n: usize, mode: Mode) -> SparseMatrix {
    let (src, cols) = layout(m, n, mode);
    if n == 0 {
        return SparseMatrix::zeros(0, cols);
    }
    let (tgt, rows) = layout(m, n - 1, mode);
    let find = |a: usize, b: usize, copy: usize| tgt.iter().find(|t| t.a == a && t.b == b && t.copy == copy);
    let mut out = SparseMatrix::zeros(rows, cols);
    for s in &src {
        if s.b > 0 {
            if let Some(t) = find(s.a, s.b - 1, s.copy) {
                place(&mut out, &m.map(MapKind::D, s.a, s.b), t.offset, s.offset);
            }
        }
        if s.a > 0 {
            if let Some(t) = find(s.a - 1, s.b, s.copy) {
                place(&mut out, &m.map(MapKind::Partial, s.a, s.b), t.offset, s.offset);
            }
        }
        if mode == Mode::HC && s.copy > 0 {
            if let Some(t) = find(s.a, s.b + 1, s.copy - 1) {
                place(&mut out, &m.map(MapKind::B, s.a, s.b), t.offset, s.offset);
            }
        }
    }
    out
}

/// Column-filtration level of each basis element in degree `n`.
fn levels(m: &DoubleMixedComplex, n: usize, mode: Mode) -> Vec<usize> {
    let (blocks, size) = layout(m, n, mode);
    let mut out = vec![0; size];
    for bl in blocks {
        for k in 0..bl.dim {
            out[bl.offset + k] = bl.a + bl.copy;
        }
    }
    out
}

fn require_window(m: &DoubleMixedComplex, n_max: usize, what: &str) -> Result<()> {
    if m.top() < n_max + 1 {
        return Err(Error::WindowTooSmall {
            what: what.to_string(),
            required: n_max + 1,
            available: m.top(),
        });
    }
    Ok(())
}

fn totals(m: &DoubleMixedComplex, n_max: usize, mode: Mode) -> Result<Vec<HomologyGroup>> {
    let what = match mode {
        Mode::HH => "hochschild total",
        Mode::HC => "cyclic total",
    };
    require_window(m, n_max, what)?;
    let degrees: Vec<usize> = (0..=n_max).collect();
    par::try_map(&degrees, |&n| {
        homology_at(&total_boundary(m, n + 1, mode), &total_boundary(m, n, mode), m.ring())
    })
}

/// `HH_n` of the totalization `(Tot M, D + ∂)` for `n ≤ n_max`.
pub fn hochschild_total(m: &DoubleMixedComplex, n_max: usize) -> Result<Vec<HomologyGroup>> {
    totals(m, n_max, Mode::HH)
}

/// `HC_n` of the totalization of `M'_{p,q} = ⊕_i M_{p-i,q-i}` with `D`
/// vertical and `B + ∂` horizontal.
pub fn cyclic_total(m: &DoubleMixedComplex, n_max: usize) -> Result<Vec<HomologyGroup>> {
    totals(m, n_max, Mode::HC)
}

/// Totals and the graded pieces of the column filtration.
pub fn filtration_layers(m: &DoubleMixedComplex, n_max: usize, mode: Mode) -> Result<FilteredGroups> {
    require_window(m, n_max, "filtration layers")?;
    let degrees: Vec<usize> = (0..=n_max).collect();
    let per_degree = par::try_map(&degrees, |&n| -> Result<(HomologyGroup, Vec<HomologyGroup>)> {
        let stage = Stage::over_ring(&total_boundary(m, n + 1, mode), &total_boundary(m, n, mode), m.ring())?;
        let (total, by_level) = stage.filtered_homology(&levels(m, n, mode), m.ring());
        let layers = (0..=n)
            .map(|p| by_level.get(n - p).cloned().unwrap_or_default())
            .collect();
        Ok((total, layers))
    })?;
    let (total, layers) = per_degree.into_iter().unzip();
    Ok(FilteredGroups { total, layers })
}

/// Direct sums over a list of complexes that split a larger one.
pub fn hochschild_total_split(pieces: &[DoubleMixedComplex], n_max: usize) -> Result<Vec<HomologyGroup>> {
    sum_lists(par::try_map(pieces, |p| hochschild_total(p, n_max))?, n_max)
}

pub fn cyclic_total_split(pieces: &[DoubleMixedComplex], n_max: usize) -> Result<Vec<HomologyGroup>> {
    sum_lists(par::try_map(pieces, |p| cyclic_total(p, n_max))?, n_max)
}

pub fn filtration_layers_split(pieces: &[DoubleMixedComplex], n_max: usize, mode: Mode) -> Result<FilteredGroups> {
    let parts = par::try_map(pieces, |p| filtration_layers(p, n_max, mode))?;
    Ok(FilteredGroups::sum(&parts, n_max))
}

fn sum_lists(lists: Vec<Vec<HomologyGroup>>, n_max: usize) -> Result<Vec<HomologyGroup>> {
    let mut out = vec![HomologyGroup::zero(); n_max + 1];
    for l in lists {
        for (o, g) in out.iter_mut().zip(l) {
            *o = o.direct_sum(&g);
        }
    }
    Ok(out)
}

/// `E¹_{a,b} = H_b(M_{a,*}, D)`; the complex `(E¹, 0, ∂, B)` is returned
/// when it has free slices (always when `D = 0`).
#[derive(Clone, Debug)]
pub struct E1Term {
    pub groups: BTreeMap<(usize, usize), HomologyGroup>,
    pub complex: Option<DoubleMixedComplex>,
}

pub fn e1_term(m: &DoubleMixedComplex) -> Result<E1Term> {
    let ring = m.ring().clone();
    if m.has_zero_d() {
        let groups = m
            .slices()
            .map(|(k, d)| (k, HomologyGroup::from_invariants(d, Vec::new(), &ring)))
            .collect();
        return Ok(E1Term {
            groups,
            complex: Some(m.clone()),
        });
    }
    let top = m.top().saturating_sub(1);
    let mut quotients = BTreeMap::new();
    let mut groups = BTreeMap::new();
    for a in 0..=top {
        for b in 0..=top - a {
            let stage = Stage::over_ring(&m.map(MapKind::D, a, b + 1), &m.map(MapKind::D, a, b), &ring)?;
            groups.insert((a, b), stage.homology(&ring));
            quotients.insert((a, b), stage.homology_generators());
        }
    }
    let free = |q: &crate::linalg::Quotient| match &ring {
        GroundRing::Integers => q.torsion.is_empty(),
        GroundRing::Rationals => true,
        GroundRing::IntegersMod(md) => q.free_rank == 0 && q.torsion.iter().all(|d| d == &BigInt::from(*md)),
    };
    if !quotients.values().all(free) {
        return Ok(E1Term { groups, complex: None });
    }
    // Over Q only the free generators matter.
    let gens = |q: &crate::linalg::Quotient| -> Vec<Vec<BigInt>> {
        match ring {
            GroundRing::Rationals => q.generators[q.torsion.len()..].to_vec(),
            _ => q.generators.clone(),
        }
    };
    let mut e1 = DoubleMixedComplex::new(ring.clone(), top);
    for (&(a, b), q) in &quotients {
        e1.set_dim(a, b, gens(q).len());
    }
    for (&(a, b), q) in &quotients {
        for kind in [MapKind::Partial, MapKind::B] {
            let target = match kind {
                MapKind::Partial if a > 0 => (a - 1, b),
                MapKind::B if a + b < top => (a, b + 1),
                _ => continue,
            };
            let tq = &quotients[&target];
            let map = m.map(kind, a, b);
            let src = gens(q);
            let offset = match ring {
                GroundRing::Rationals => tq.torsion.len(),
                _ => 0,
            };
            let mut induced = SparseMatrix::zeros(gens(tq).len(), src.len());
            for (j, g) in src.iter().enumerate() {
                let x: Vec<Scalar> = g.iter().map(|v| Scalar::from_integer(v.clone())).collect();
                let image = map.mul_vec(&x);
                let coords = integral_coordinates(tq, &image, &ring)?;
                for (i, c) in coords.into_iter().skip(offset).enumerate() {
                    induced.set(i, j, ring.normalize(c));
                }
            }
            e1.set_map(kind, a, b, induced)?;
        }
    }
    Ok(E1Term {
        groups,
        complex: Some(e1),
    })
}

fn integral_coordinates(q: &crate::linalg::Quotient, v: &[Scalar], ring: &GroundRing) -> Result<Vec<Scalar>> {
    use num_integer::Integer;
    use num_traits::One;
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| match ring {
            GroundRing::IntegersMod(_) => ring.normalize(x.clone()).to_integer(),
            _ => (x * Scalar::from_integer(l.clone())).to_integer(),
        })
        .collect();
    let coords = q.coordinates(&scaled).ok_or_else(|| Error::CompositionNonzero {
        context: "induced map on E¹ does not preserve cycles".into(),
    })?;
    let l = Scalar::from_integer(l);
    Ok(coords.into_iter().map(|c| Scalar::from_integer(c) / &l).collect())
}
