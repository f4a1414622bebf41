//! Fixtures and small test-side oracles shared by the integration tests.
#![allow(dead_code)]

use cyclic_homology::dp::{Algebra, Element, Generator, GeneratorKind, Monomial, Window};
use cyclic_homology::linalg::invariant_factors;
use cyclic_homology::model::Presentation;
use cyclic_homology::{GroundRing, HomologyGroup, Scalar, SparseMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

pub fn group(free: usize, torsion: &[i64]) -> HomologyGroup {
    HomologyGroup {
        free_rank: free,
        torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
    }
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

pub fn presentation(ring: GroundRing, vars: &[&str], rels: &[&str]) -> Presentation {
    Presentation::parse(ring, vars, rels).unwrap()
}

/// The five flat finite algebras used across the suites.
pub fn flat_fixtures() -> Vec<(&'static str, Presentation)> {
    vec![
        ("Z[x]/(x^2)", presentation(GroundRing::Integers, &["x"], &["x^2"])),
        ("Z[x]/(x^3)", presentation(GroundRing::Integers, &["x"], &["x^3"])),
        (
            "Z[x,y]/(x^2,y^2)",
            presentation(GroundRing::Integers, &["x", "y"], &["x^2", "y^2"]),
        ),
        ("Q[x]/(x^2)", presentation(GroundRing::Rationals, &["x"], &["x^2"])),
        (
            "Z/4[x]/(x^2-2)",
            presentation(GroundRing::IntegersMod(4), &["x"], &["x^2 - 2"]),
        ),
    ]
}

/// Quasi-monic fixtures over the integers.
pub fn integral_fixtures() -> Vec<(&'static str, Presentation)> {
    flat_fixtures()
        .into_iter()
        .filter(|(_, p)| p.ring == GroundRing::Integers)
        .collect()
}

/// `f mod g` for a monic `g`, coefficients lowest degree first.
fn poly_rem(mut f: Vec<i64>, g: &[i64]) -> Vec<i64> {
    let m = g.len() - 1;
    assert_eq!(g[m], 1, "monic divisor");
    while f.len() > m {
        let c = f.pop().unwrap();
        let shift = f.len() - m;
        for (i, gi) in g[..m].iter().enumerate() {
            f[shift + i] -= c * gi;
        }
    }
    f.resize(m, 0);
    f
}

/// Hochschild homology of `k[x]/(f)`, `f` monic, from the 2-periodic
/// resolution: `HH_0 = A`, `HH_odd = A/(f')`, `HH_even = Ann(f')`. Both
/// are read off the invariant factors of multiplication by `f'`.
pub fn monogenic_hh(ring: &GroundRing, f: &[i64], n_max: usize) -> Vec<HomologyGroup> {
    let m = f.len() - 1;
    let df: Vec<i64> = (1..f.len()).map(|i| i as i64 * f[i]).collect();
    let mut mat = SparseMatrix::zeros(m, m);
    for j in 0..m {
        let mut prod = vec![0i64; j + df.len()];
        for (i, c) in df.iter().enumerate() {
            prod[i + j] += c;
        }
        for (i, c) in poly_rem(prod, f).into_iter().enumerate() {
            mat.set(i, j, int(c));
        }
    }
    let mut factors = invariant_factors(&mat).unwrap();
    factors.resize(m, BigInt::zero());
    let (coker, ker) = match ring {
        GroundRing::Integers => {
            let r = factors.iter().filter(|d| !d.is_zero()).count();
            let torsion: Vec<BigInt> = factors
                .iter()
                .filter(|d| !d.is_zero() && !d.abs().eq(&BigInt::from(1)))
                .cloned()
                .collect();
            (
                HomologyGroup {
                    free_rank: m - r,
                    torsion,
                },
                HomologyGroup::free(m - r),
            )
        }
        GroundRing::Rationals => {
            let r = factors.iter().filter(|d| !d.is_zero()).count();
            (HomologyGroup::free(m - r), HomologyGroup::free(m - r))
        }
        GroundRing::IntegersMod(n) => {
            let n = BigInt::from(*n);
            let g: Vec<BigInt> = factors.iter().map(|d| d.gcd(&n)).collect();
            let h = HomologyGroup::from_invariants(0, g.into_iter().filter(|d| d != &BigInt::from(1)).collect(), ring);
            (h.clone(), h)
        }
    };
    (0..=n_max)
        .map(|n| match n {
            0 => HomologyGroup::from_invariants(m, Vec::new(), ring),
            n if n % 2 == 1 => coker.clone(),
            _ => ker.clone(),
        })
        .collect()
}

/// Random table of 2 to 5 generators in degrees 0 to 3.
pub fn random_algebra(rng: &mut StdRng) -> Algebra {
    let n = rng.gen_range(2..=5);
    let gens = (0..n)
        .map(|i| {
            let hdeg = rng.gen_range(0..=3u32);
            let kind = if hdeg % 2 == 1 {
                GeneratorKind::Exterior
            } else if hdeg > 0 && rng.gen_bool(0.5) {
                GeneratorKind::DividedPower
            } else {
                GeneratorKind::Polynomial
            };
            Generator::new(format!("g{i}"), hdeg, kind).unwrap()
        })
        .collect();
    Algebra::new(GroundRing::Integers, gens).unwrap()
}

pub fn random_monomial(alg: &Algebra, rng: &mut StdRng) -> Monomial {
    Monomial(
        alg.generators()
            .iter()
            .map(|g| match g.kind {
                GeneratorKind::Exterior => rng.gen_range(0..=1),
                _ => rng.gen_range(0..=3),
            })
            .collect(),
    )
}

/// Random combination of basis monomials of one degree, or zero when the
/// slice is empty.
pub fn random_homogeneous(alg: &Algebra, hdeg: u32, rng: &mut StdRng) -> Element {
    let basis = alg
        .basis_window(
            hdeg,
            0,
            Window {
                poly_bound: Some(2),
                filtration: None,
            },
        )
        .unwrap();
    let mut e = Element::zero();
    if basis.is_empty() {
        return e;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        e.add_term(alg.ring(), m, &int(rng.gen_range(-4..=4)));
    }
    e
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Fraction-free determinant.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    &a[n - 1][n - 1] * sign
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn rational_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .map(|r| r.iter().map(|x| Scalar::from_integer(x.clone())).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let pivot_row = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_int_matrix(rng: &mut StdRng, max_dim: usize, bound: i64) -> Vec<Vec<BigInt>> {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
        .collect()
}
