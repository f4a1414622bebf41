use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, SparseMatrix};
use crate::error::{Error, Result};

/// Smith form `S = U·M·V` with the inverse of `U` kept alongside.
///
/// `diagonal` holds the nonzero diagonal entries `d₁ | d₂ | … | d_r`, all
/// positive; `r` is the rank of `M`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The diagonal matrix `S` with the shape of the input.
    pub fn s(&self) -> IntMatrix {
        let mut s = IntMatrix::zeros(self.u.rows, self.v.rows);
        for (i, d) in self.diagonal.iter().enumerate() {
            s.data[i][i] = d.clone();
        }
        s
    }

    /// Checks `S = U·M·V`, `U·U⁻¹ = I`, `|det V| = 1` and the divisibility
    /// chain against the original matrix.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let one = BigInt::from(1);
        let chain = self.diagonal.iter().all(|d| d > &BigInt::from(0))
            && self.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        chain
            && self.u.mul(m).mul(&self.v) == self.s()
            && self.u.mul(&self.u_inv) == IntMatrix::identity(m.rows)
            && self.v.determinant().abs() == one
    }
}

struct Elimination {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    IntMatrix::identity(n).data
}

fn pair_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &mut a[j])
    }
}

impl Elimination {
    fn new(m: &IntMatrix, track_u: bool, track_v: bool) -> Self {
        Elimination {
            a: m.data.clone(),
            rows: m.rows,
            cols: m.cols,
            u: track_u.then(|| identity(m.rows)),
            u_inv: track_u.then(|| identity(m.rows)),
            v: track_v.then(|| identity(m.cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(w) = &mut self.u_inv {
            for row in w.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// `row_i += q·row_t`.
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt, from: usize) {
        let (dst, src) = pair_mut(&mut self.a, i, t);
        for j in from..self.cols {
            if !src[j].is_zero() {
                dst[j] += q * &src[j];
            }
        }
        if let Some(u) = &mut self.u {
            let (dst, src) = pair_mut(u, i, t);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d += q * s;
                }
            }
        }
        if let Some(w) = &mut self.u_inv {
            for row in w.iter_mut() {
                if !row[i].is_zero() {
                    let delta = q * &row[i];
                    row[t] -= delta;
                }
            }
        }
    }

    /// `col_j += q·col_t`.
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt, from: usize) {
        for row in self.a[from..].iter_mut() {
            if !row[t].is_zero() {
                let delta = q * &row[t];
                row[j] += delta;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[t].is_zero() {
                    let delta = q * &row[t];
                    row[j] += delta;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if let Some(w) = &mut self.u_inv {
            for row in w.iter_mut() {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }

    /// Position of a smallest nonzero entry in the lower-right block.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if x.magnitude().is_one() {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].magnitude() <= x.magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row and column `t` outside the pivot. With `divisibility`,
    /// also ensures the pivot divides the remaining block.
    fn reduce_at(&mut self, t: usize, divisibility: bool) {
        loop {
            let p = self.a[t][t].clone();
            let mut residue = false;
            for i in t + 1..self.rows {
                if self.a[i][t].is_zero() {
                    continue;
                }
                let q = -(&self.a[i][t] / &p);
                if !q.is_zero() {
                    self.add_row(i, t, &q, t);
                }
                residue |= !self.a[i][t].is_zero();
            }
            for j in t + 1..self.cols {
                if self.a[t][j].is_zero() {
                    continue;
                }
                let q = -(&self.a[t][j] / &p);
                if !q.is_zero() {
                    self.add_col(j, t, &q, t);
                }
                residue |= !self.a[t][j].is_zero();
            }
            if residue {
                let mut best: Option<(usize, usize)> = None;
                let mut consider = |i: usize, j: usize, a: &Vec<Vec<BigInt>>| {
                    if a[i][j].is_zero() {
                        return;
                    }
                    match best {
                        Some((bi, bj)) if a[bi][bj].magnitude() <= a[i][j].magnitude() => {}
                        _ => best = Some((i, j)),
                    }
                };
                for i in t + 1..self.rows {
                    consider(i, t, &self.a);
                }
                for j in t + 1..self.cols {
                    consider(t, j, &self.a);
                }
                if let Some((i, j)) = best {
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                }
                continue;
            }
            if divisibility && !p.magnitude().is_one() {
                let offender = (t + 1..self.rows)
                    .find(|&i| self.a[i][t + 1..].iter().any(|x| !x.is_zero() && !x.is_multiple_of(&p)));
                if let Some(i) = offender {
                    self.add_row(t, i, &BigInt::one(), t);
                    continue;
                }
            }
            break;
        }
        if self.a[t][t].is_negative() {
            self.negate_row(t);
        }
    }

    fn run(&mut self, divisibility: bool) -> usize {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((i, j)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            self.reduce_at(t, divisibility);
            t += 1;
        }
        t
    }
}

/// Full Smith normal form with transforms.
pub fn smith_form(m: &IntMatrix) -> SmithForm {
    let mut e = Elimination::new(m, true, true);
    let rank = e.run(true);
    let diagonal = (0..rank).map(|i| e.a[i][i].clone()).collect();
    let wrap = |rows: usize, cols: usize, data: Vec<Vec<BigInt>>| IntMatrix { rows, cols, data };
    SmithForm {
        u: wrap(m.rows, m.rows, e.u.take().unwrap()),
        u_inv: wrap(m.rows, m.rows, e.u_inv.take().unwrap()),
        v: wrap(m.cols, m.cols, e.v.take().unwrap()),
        diagonal,
    }
}

/// Nonzero invariant factors `d₁ | … | d_r` of an integer matrix, computed
/// without transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut e = Elimination::new(m, false, false);
    let rank = e.run(false);
    let mut diag: Vec<BigInt> = (0..rank).map(|i| e.a[i][i].abs()).collect();
    normalize_chain(&mut diag);
    diag
}

/// Rank of an integer matrix.
pub fn integer_rank(m: &IntMatrix) -> usize {
    let mut e = Elimination::new(m, false, false);
    e.run(false)
}

/// Basis of the integer kernel `{x : Mx = 0}`; it is saturated in `ℤ^cols`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut e = Elimination::new(m, false, true);
    let rank = e.run(false);
    let v = e.v.take().unwrap();
    (rank..m.cols)
        .map(|j| v.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Rewrites a list of positive integers into a divisibility chain with the
/// same direct sum `⊕ ℤ/dᵢ`.
pub fn normalize_chain(d: &mut [BigInt]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[j].is_multiple_of(&d[i]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}

/// `snf(M) = (U, S, V)` with `S = U·M·V` for an integer-valued sparse
/// matrix.
pub fn snf(m: &SparseMatrix) -> Result<(SparseMatrix, SparseMatrix, SparseMatrix)> {
    let dense = m.to_int().ok_or(Error::NonIntegral)?;
    let f = smith_form(&dense);
    Ok((f.u.to_sparse(), f.s().to_sparse(), f.v.to_sparse()))
}

/// Invariant factors of a sparse integer matrix, units included.
pub fn invariant_factors(m: &SparseMatrix) -> Result<Vec<BigInt>> {
    let dense = m.to_int().ok_or(Error::NonIntegral)?;
    Ok(smith_diagonal(&dense))
}
