//! Sublattices of `ℤⁿ` and their quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_diagonal, smith_form};

/// A sublattice of `ℤⁿ` with a basis and a coordinate map.
#[derive(Clone, Debug)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
    /// Left Smith transform of the generator matrix.
    u: IntMatrix,
    diagonal: Vec<BigInt>,
}

/// `L₁/L₂` as an abstract group with chosen generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// Ambient vectors generating the quotient; the torsion generators come
    /// first, in the order of `torsion`, followed by the free ones.
    pub generators: Vec<Vec<BigInt>>,
    lattice: Lattice,
    u: IntMatrix,
    /// Row of `u` for each generator.
    rows: Vec<usize>,
}

impl Quotient {
    /// Coordinates of the class of `x ∈ L₁` in the generators; torsion
    /// coordinates are reduced modulo their orders.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.lattice.coordinates(x)?;
        let y = self.u.mul_vec(&c);
        Some(
            self.rows
                .iter()
                .enumerate()
                .map(|(k, &r)| match self.torsion.get(k) {
                    Some(d) => y[r].mod_floor(d),
                    None => y[r].clone(),
                })
                .collect(),
        )
    }
}

impl Lattice {
    pub fn span(ambient: usize, generators: &[Vec<BigInt>]) -> Lattice {
        let gens: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        if gens.is_empty() {
            return Lattice {
                ambient,
                basis: Vec::new(),
                u: IntMatrix::identity(ambient),
                diagonal: Vec::new(),
            };
        }
        let g = IntMatrix::from_columns(ambient, &gens);
        let f = smith_form(&g);
        let rank = f.rank();
        let basis = (0..rank)
            .map(|i| f.u_inv.column(i).into_iter().map(|x| x * &f.diagonal[i]).collect())
            .collect();
        Lattice {
            ambient,
            basis,
            u: f.u,
            diagonal: f.diagonal,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Coordinates of `x` in the basis, or `None` if `x` is not in the
    /// lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.ambient);
        if self.basis.is_empty() {
            return x.iter().all(Zero::is_zero).then(Vec::new);
        }
        let y = self.u.mul_vec(x);
        let r = self.rank();
        if y[r..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut c = Vec::with_capacity(r);
        for (yi, d) in y[..r].iter().zip(&self.diagonal) {
            let (q, rem) = yi.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            c.push(q);
        }
        Some(c)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Invariants of `self / span(sub)`; `None` if `sub` is not contained.
    pub fn quotient_invariants(&self, sub: &[Vec<BigInt>]) -> Option<(usize, Vec<BigInt>)> {
        let c = self.coordinate_matrix(sub)?;
        let diag = smith_diagonal(&c);
        let free = self.rank() - diag.len();
        Some((free, diag.into_iter().filter(|d| !d.is_one()).collect()))
    }

    /// `self / span(sub)` with generators; `None` if `sub` is not contained.
    pub fn quotient(&self, sub: &[Vec<BigInt>]) -> Option<Quotient> {
        let c = self.coordinate_matrix(sub)?;
        let f = smith_form(&c);
        let r = self.rank();
        let lift = |i: usize| -> Vec<BigInt> {
            let coeffs = f.u_inv.column(i);
            let mut v = vec![BigInt::zero(); self.ambient];
            for (b, k) in self.basis.iter().zip(&coeffs) {
                if k.is_zero() {
                    continue;
                }
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += k * bi;
                }
            }
            v
        };
        let mut torsion = Vec::new();
        let mut generators = Vec::new();
        let mut rows = Vec::new();
        for (i, d) in f.diagonal.iter().enumerate() {
            if !d.is_one() {
                torsion.push(d.clone());
                generators.push(lift(i));
                rows.push(i);
            }
        }
        for i in f.rank()..r {
            generators.push(lift(i));
            rows.push(i);
        }
        Some(Quotient {
            free_rank: r - f.rank(),
            torsion,
            generators,
            lattice: self.clone(),
            u: f.u,
            rows,
        })
    }

    fn coordinate_matrix(&self, sub: &[Vec<BigInt>]) -> Option<IntMatrix> {
        let mut cols = Vec::with_capacity(sub.len());
        for s in sub {
            cols.push(self.coordinates(s)?);
        }
        Some(IntMatrix::from_columns(self.rank(), &cols))
    }
}

/// `{x : Ax ∈ span(R)}` as generators, for `A` of shape `N'×N` and relation
/// columns `R` in `ℤ^{N'}`.
pub fn relative_kernel(a: &IntMatrix, relations: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.cols;
    let mut joined = IntMatrix::zeros(a.rows, n + relations.len());
    for i in 0..a.rows {
        for j in 0..n {
            joined.data[i][j] = a.data[i][j].clone();
        }
        for (k, r) in relations.iter().enumerate() {
            joined.data[i][n + k] = r[i].clone();
        }
    }
    super::snf::kernel_basis(&joined)
        .into_iter()
        .map(|mut v| {
            v.truncate(n);
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn coordinates_round_trip() {
        let l = Lattice::span(2, &[v(&[2, 0]), v(&[0, 4]), v(&[2, 4])]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[4, 8])));
        assert!(!l.contains(&v(&[1, 0])));
        assert!(!l.contains(&v(&[0, 2])));
    }

    #[test]
    fn quotient_of_lattices() {
        let full = Lattice::span(2, &[v(&[1, 0]), v(&[0, 1])]);
        let q = full.quotient(&[v(&[2, 0]), v(&[0, 6])]).unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion, v(&[2, 6]));
        let q = full.quotient(&[v(&[3, 0])]).unwrap();
        assert_eq!((q.free_rank, q.torsion.clone()), (1, v(&[3])));
        assert_eq!(q.coordinates(&v(&[3, 0])).unwrap(), v(&[0, 0]));
        for g in 0..2 {
            let mut e = vec![BigInt::zero(); 2];
            e[g] = BigInt::one();
            assert_eq!(q.coordinates(&q.generators[g]).unwrap(), e);
        }
        assert!(Lattice::span(2, &[v(&[2, 0])]).quotient(&[v(&[1, 0])]).is_none());
    }

    #[test]
    fn kernel_modulo_relations() {
        // x ↦ 2x with target relation 4: kernel generated by 2.
        let a = IntMatrix::from_rows(&[vec![2]]);
        let k = relative_kernel(&a, &[v(&[4])]);
        let l = Lattice::span(1, &k);
        assert!(l.contains(&v(&[2])));
        assert!(!l.contains(&v(&[1])));
    }
}
