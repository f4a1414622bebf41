use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{GroundRing, SparseMatrix};

/// The three boundaries of a double mixed complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapKind {
    /// `D : M_{a,b} → M_{a,b-1}`.
    D,
    /// `∂ : M_{a,b} → M_{a-1,b}`.
    Partial,
    /// `B : M_{a,b} → M_{a,b+1}`.
    B,
}

impl MapKind {
    fn target(self, a: usize, b: usize) -> Option<(usize, usize)> {
        match self {
            MapKind::D => b.checked_sub(1).map(|b| (a, b)),
            MapKind::Partial => a.checked_sub(1).map(|a| (a, b)),
            MapKind::B => Some((a, b + 1)),
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::D => "D",
            MapKind::Partial => "∂",
            MapKind::B => "B",
        })
    }
}

/// Bigraded free module with boundaries `D`, `∂`, `B`, known on every slice
/// `(a, b)` with `a + b ≤ top`.
#[derive(Clone, Debug)]
pub struct DoubleMixedComplex {
    ring: GroundRing,
    top: usize,
    dims: BTreeMap<(usize, usize), usize>,
    maps: BTreeMap<(MapKind, usize, usize), SparseMatrix>,
}

/// Outcome of [`DoubleMixedComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid,
    Failed { identity: String, slice: (usize, usize) },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }
}

impl DoubleMixedComplex {
    pub fn new(ring: GroundRing, top: usize) -> Self {
        DoubleMixedComplex {
            ring,
            top,
            dims: BTreeMap::new(),
            maps: BTreeMap::new(),
        }
    }

    /// `k` in bidegree `(0, 0)` with zero maps.
    pub fn point(ring: GroundRing, top: usize) -> Self {
        let mut m = Self::new(ring, top);
        m.set_dim(0, 0, 1);
        m
    }

    pub fn ring(&self) -> &GroundRing {
        &self.ring
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn set_dim(&mut self, a: usize, b: usize, n: usize) {
        assert!(a + b <= self.top, "slice ({a},{b}) outside the window");
        if n == 0 {
            self.dims.remove(&(a, b));
        } else {
            self.dims.insert((a, b), n);
        }
    }

    pub fn dim(&self, a: usize, b: usize) -> usize {
        self.dims.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn slices(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    /// Stores a boundary; its shape must match the slice dimensions.
    pub fn set_map(&mut self, kind: MapKind, a: usize, b: usize, m: SparseMatrix) -> Result<()> {
        let Some((ta, tb)) = kind.target(a, b) else {
            if m.is_zero() {
                return Ok(());
            }
            return Err(Error::DimensionMismatch(format!(
                "{kind} leaves the quadrant at ({a},{b})"
            )));
        };
        if ta + tb > self.top {
            return Ok(());
        }
        if m.cols() != self.dim(a, b) || m.rows() != self.dim(ta, tb) {
            return Err(Error::DimensionMismatch(format!(
                "{kind} at ({a},{b}) is {}×{}, slices are {} and {}",
                m.rows(),
                m.cols(),
                self.dim(ta, tb),
                self.dim(a, b)
            )));
        }
        if m.is_zero() {
            self.maps.remove(&(kind, a, b));
        } else {
            self.maps.insert((kind, a, b), m.reduced(&self.ring));
        }
        Ok(())
    }

    /// The boundary out of `(a, b)`; zero when not stored.
    pub fn map(&self, kind: MapKind, a: usize, b: usize) -> SparseMatrix {
        if let Some(m) = self.maps.get(&(kind, a, b)) {
            return m.clone();
        }
        let rows = kind.target(a, b).map_or(0, |(ta, tb)| self.dim(ta, tb));
        SparseMatrix::zeros(rows, self.dim(a, b))
    }

    pub fn has_zero_d(&self) -> bool {
        !self.maps.keys().any(|(k, _, _)| *k == MapKind::D)
    }

    fn compose(&self, first: MapKind, second: MapKind, a: usize, b: usize) -> Option<SparseMatrix> {
        let (ma, mb) = first.target(a, b)?;
        second.target(ma, mb)?;
        Some(self.map(second, ma, mb).mul(&self.map(first, a, b)))
    }

    fn is_zero_over_ring(&self, m: &SparseMatrix) -> bool {
        m.reduced(&self.ring).is_zero()
    }

    /// Checks `D² = ∂² = B² = D∂+∂D = B∂+∂B = DB+BD = 0` on every slice
    /// where both sides stay inside the window.
    pub fn validate(&self) -> Validation {
        use MapKind::*;
        let pairs = [(D, D), (Partial, Partial), (B, B), (D, Partial), (B, Partial), (D, B)];
        for a in 0..=self.top {
            for b in 0..=self.top - a {
                for &(x, y) in &pairs {
                    let reach = a + b + usize::from(x == B || y == B) + usize::from(x == B && y == B);
                    if reach > self.top {
                        continue;
                    }
                    let xy = self.compose(x, y, a, b);
                    let yx = if x == y { None } else { self.compose(y, x, a, b) };
                    let sum = match (xy, yx) {
                        (Some(p), Some(q)) => add(&p, &q),
                        (Some(p), None) | (None, Some(p)) => p,
                        (None, None) => continue,
                    };
                    if !self.is_zero_over_ring(&sum) {
                        let identity = if x == y {
                            format!("{x}² = 0")
                        } else {
                            format!("{x}{y} + {y}{x} = 0")
                        };
                        return Validation::Failed {
                            identity,
                            slice: (a, b),
                        };
                    }
                }
            }
        }
        Validation::Valid
    }
}

fn add(p: &SparseMatrix, q: &SparseMatrix) -> SparseMatrix {
    let mut out = p.clone();
    for (i, j, v) in q.entries() {
        out.add_to(i, j, v);
    }
    out
}
