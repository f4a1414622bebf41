use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::lattice::{relative_kernel, Lattice, Quotient};
use super::matrix::{IntMatrix, SparseMatrix};
use super::ring::{GroundRing, Scalar};
use super::snf::{integer_rank, smith_diagonal, smith_form};
use crate::error::{Error, Result};

/// Isomorphism class of a finitely generated module over the ground ring.
///
/// Over `ℤ` this is `ℤ^r ⊕ ⊕ ℤ/dᵢ`. Over `ℤ/m` the free part counts
/// summands `ℤ/m` and `torsion` lists the proper cyclic factors `ℤ/d`,
/// `d | m`, `d < m`; over a field `torsion` is always empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Normalizes an abstract `ℤ^free ⊕ ⊕ ℤ/dᵢ` for the given ring.
    pub fn from_invariants(free: usize, factors: Vec<BigInt>, ring: &GroundRing) -> Self {
        let mut torsion: Vec<BigInt> = factors
            .into_iter()
            .map(|d| d.abs())
            .filter(|d| !d.is_one() && !d.is_zero())
            .collect();
        let mut free_rank = free;
        match ring {
            GroundRing::Rationals => torsion.clear(),
            GroundRing::Integers => {}
            GroundRing::IntegersMod(m) => {
                let m = BigInt::from(*m);
                let before = torsion.len();
                torsion.retain(|d| d != &m);
                free_rank += before - torsion.len();
            }
        }
        torsion.sort();
        super::snf::normalize_chain(&mut torsion);
        torsion.retain(|d| !d.is_one());
        HomologyGroup { free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion part (1 when there is none).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        let mut torsion: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        torsion.sort();
        super::snf::normalize_chain(&mut torsion);
        torsion.retain(|d| !d.is_one());
        HomologyGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }

    pub fn sum<'a>(groups: impl IntoIterator<Item = &'a HomologyGroup>) -> HomologyGroup {
        groups
            .into_iter()
            .fold(HomologyGroup::zero(), |acc, g| acc.direct_sum(g))
    }
}

impl Serialize for HomologyGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|d| match u64::try_from(d) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(d.to_string()),
            })
            .collect();
        let mut s = serializer.serialize_struct("HomologyGroup", 2)?;
        s.serialize_field("free_rank", &self.free_rank)?;
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("k".to_string()),
            r => parts.push(format!("k^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Middle position of a complex of finitely presented abelian groups
/// `ℤ^K → ℤ^N / R → ℤ^{N'} / R'`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub d_in: IntMatrix,
    pub d_out: IntMatrix,
    pub relations: Vec<Vec<BigInt>>,
    pub relations_out: Vec<Vec<BigInt>>,
}

impl Stage {
    /// A stage of free modules over `ring`: over `ℤ/m` the relations are
    /// `m·I`, over `ℚ` the matrices are rescaled to integers.
    pub fn over_ring(d_in: &SparseMatrix, d_out: &SparseMatrix, ring: &GroundRing) -> Result<Stage> {
        check_shapes(d_in, d_out)?;
        let n = d_in.rows();
        let n_out = d_out.rows();
        match ring {
            GroundRing::Integers => Ok(Stage {
                d_in: d_in.to_int().ok_or(Error::NonIntegral)?,
                d_out: d_out.to_int().ok_or(Error::NonIntegral)?,
                relations: Vec::new(),
                relations_out: Vec::new(),
            }),
            GroundRing::Rationals => Ok(Stage {
                d_in: d_in.to_int_scaled_columns(),
                d_out: d_out.transpose().to_int_scaled_columns().transpose(),
                relations: Vec::new(),
                relations_out: Vec::new(),
            }),
            GroundRing::IntegersMod(m) => {
                let m = BigInt::from(*m);
                Ok(Stage {
                    d_in: d_in.reduced(ring).to_int().ok_or(Error::NonIntegral)?,
                    d_out: d_out.reduced(ring).to_int().ok_or(Error::NonIntegral)?,
                    relations: scaled_identity(n, &m),
                    relations_out: scaled_identity(n_out, &m),
                })
            }
        }
    }

    fn middle(&self) -> usize {
        self.d_out.cols
    }

    fn boundaries(&self) -> Vec<Vec<BigInt>> {
        let mut b: Vec<Vec<BigInt>> = (0..self.d_in.cols).map(|j| self.d_in.column(j)).collect();
        b.extend(self.relations.iter().cloned());
        b
    }

    fn cycles_within(&self, allowed: &[bool]) -> Vec<Vec<BigInt>> {
        let idx: Vec<usize> = (0..self.middle()).filter(|&j| allowed[j]).collect();
        let mut restricted = IntMatrix::zeros(self.d_out.rows, idx.len());
        for i in 0..self.d_out.rows {
            for (k, &j) in idx.iter().enumerate() {
                restricted.data[i][k] = self.d_out.data[i][j].clone();
            }
        }
        relative_kernel(&restricted, &self.relations_out)
            .into_iter()
            .map(|v| {
                let mut full = vec![BigInt::zero(); self.middle()];
                for (k, &j) in idx.iter().enumerate() {
                    full[j] = v[k].clone();
                }
                full
            })
            .collect()
    }

    fn cycle_lattice(&self, allowed: &[bool], boundaries: &[Vec<BigInt>]) -> Lattice {
        let mut gens = self.cycles_within(allowed);
        gens.extend(boundaries.iter().cloned());
        Lattice::span(self.middle(), &gens)
    }

    /// Homology at the middle position, as invariants over `ℤ`.
    pub fn homology(&self, ring: &GroundRing) -> HomologyGroup {
        let b = self.boundaries();
        let z = self.cycle_lattice(&vec![true; self.middle()], &b);
        let (free, torsion) = z.quotient_invariants(&b).expect("boundaries lie in the cycle lattice");
        HomologyGroup::from_invariants(free, torsion, ring)
    }

    /// Homology with chosen generators of the cyclic summands.
    pub fn homology_generators(&self) -> Quotient {
        let b = self.boundaries();
        let z = self.cycle_lattice(&vec![true; self.middle()], &b);
        z.quotient(&b).expect("boundaries lie in the cycle lattice")
    }

    /// Graded pieces `F_s H / F_{s-1} H` of the filtration induced by an
    /// increasing basis filtration (`level[j]` is the level of basis vector
    /// `j`), for `s = 0..=max level`, and the total group.
    pub fn filtered_homology(&self, level: &[usize], ring: &GroundRing) -> (HomologyGroup, Vec<HomologyGroup>) {
        assert_eq!(level.len(), self.middle());
        let b = self.boundaries();
        let top = level.iter().copied().max().map_or(0, |m| m + 1);
        let mut layers = Vec::with_capacity(top);
        let mut prev: Vec<Vec<BigInt>> = b.clone();
        let mut total = HomologyGroup::zero();
        for s in 0..top {
            let allowed: Vec<bool> = level.iter().map(|&l| l <= s).collect();
            let lat = self.cycle_lattice(&allowed, &b);
            let (free, torsion) = lat.quotient_invariants(&prev).expect("filtration is increasing");
            layers.push(HomologyGroup::from_invariants(free, torsion, ring));
            if s + 1 == top {
                let (free, torsion) = lat
                    .quotient_invariants(&b)
                    .expect("boundaries lie in the cycle lattice");
                total = HomologyGroup::from_invariants(free, torsion, ring);
            }
            prev = lat.basis().to_vec();
        }
        (total, layers)
    }
}

fn scaled_identity(n: usize, m: &BigInt) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = m.clone();
            v
        })
        .collect()
}

fn check_shapes(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<()> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::DimensionMismatch(format!(
            "incoming map has {} rows, outgoing map has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    Ok(())
}

/// Checks `d_out ∘ d_in = 0` over the ring.
pub fn check_composition(d_in: &SparseMatrix, d_out: &SparseMatrix, ring: &GroundRing, context: &str) -> Result<()> {
    check_shapes(d_in, d_out)?;
    let prod = d_out.mul(d_in);
    let nonzero = match ring {
        GroundRing::IntegersMod(_) => !prod.reduced(ring).is_zero(),
        _ => !prod.is_zero(),
    };
    if nonzero {
        return Err(Error::CompositionNonzero {
            context: context.to_string(),
        });
    }
    Ok(())
}

/// `ker(d_out) / im(d_in)` over the ring.
pub fn homology_at(d_in: &SparseMatrix, d_out: &SparseMatrix, ring: &GroundRing) -> Result<HomologyGroup> {
    check_composition(d_in, d_out, ring, "homology_at")?;
    let n = d_in.rows();
    match ring {
        GroundRing::Integers => {
            let a = d_in.to_int().ok_or(Error::NonIntegral)?;
            let b = d_out.to_int().ok_or(Error::NonIntegral)?;
            let factors = smith_diagonal(&a);
            let free = n - factors.len() - integer_rank(&b);
            Ok(HomologyGroup::from_invariants(free, factors, ring))
        }
        GroundRing::Rationals => {
            let a = d_in.to_int_scaled_columns();
            let b = d_out.to_int_scaled_columns();
            Ok(HomologyGroup::free(n - integer_rank(&a) - integer_rank(&b)))
        }
        GroundRing::IntegersMod(_) => Ok(Stage::over_ring(d_in, d_out, ring)?.homology(ring)),
    }
}

/// Some `x` with `M·x = b` over the ring, or `None` if `b ∉ im M`.
pub fn preimage(m: &SparseMatrix, b: &[Scalar], ring: &GroundRing) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows(), "right-hand side has the wrong length");
    match ring {
        GroundRing::Rationals => {
            let mut l = BigInt::one();
            for (_, _, v) in m.entries() {
                l = l.lcm(v.denom());
            }
            for v in b {
                l = l.lcm(v.denom());
            }
            let scale = Scalar::from_integer(l);
            let mut mi = SparseMatrix::zeros(m.rows(), m.cols());
            for (i, j, v) in m.entries() {
                mi.set(i, j, v * &scale);
            }
            let mi = mi.to_int().expect("scaled to integers");
            let bi: Vec<Scalar> = b.iter().map(|v| v * &scale).collect();
            solve_rational(&mi, &bi)
        }
        GroundRing::Integers => {
            let mi = m.to_int()?;
            if !b.iter().all(|v| v.is_integer()) {
                return None;
            }
            let bi: Vec<BigInt> = b.iter().map(|v| v.to_integer()).collect();
            solve_integer(&mi, &bi).map(|x| x.into_iter().map(Scalar::from_integer).collect())
        }
        GroundRing::IntegersMod(modulus) => {
            let mm = BigInt::from(*modulus);
            let reduced = m.reduced(ring).to_int()?;
            let mut joined = IntMatrix::zeros(m.rows(), m.cols() + m.rows());
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    joined.data[i][j] = reduced.data[i][j].clone();
                }
                joined.data[i][m.cols() + i] = mm.clone();
            }
            let bi: Vec<BigInt> = b.iter().map(|v| ring.normalize(v.clone()).to_integer()).collect();
            let x = solve_integer(&joined, &bi)?;
            Some(
                x[..m.cols()]
                    .iter()
                    .map(|v| ring.normalize(Scalar::from_integer(v.clone())))
                    .collect(),
            )
        }
    }
}

fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let f = smith_form(m);
    let ub = f.u.mul_vec(b);
    let r = f.rank();
    if ub[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); m.cols];
    for i in 0..r {
        let (q, rem) = ub[i].div_rem(&f.diagonal[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(f.v.mul_vec(&y))
}

fn solve_rational(m: &IntMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let f = smith_form(m);
    let u = f.u.to_sparse();
    let ub = u.mul_vec(b);
    let r = f.rank();
    if ub[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut y = vec![Scalar::zero(); m.cols];
    for i in 0..r {
        y[i] = &ub[i] / Scalar::from_integer(f.diagonal[i].clone());
    }
    Some(f.v.to_sparse().mul_vec(&y))
}
