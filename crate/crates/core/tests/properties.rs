//! Property tests for the exact layers and the algebraic invariants.

mod common;

use common::*;
use cyclic_homology::crystalline::{Envelope, WeightWindow};
use cyclic_homology::dp::{Element, Resolution};
use cyclic_homology::gamma::GammaFormsComplex;
use cyclic_homology::linalg::{homology_at, smith_form, IntMatrix};
use cyclic_homology::model::Polynomial;
use cyclic_homology::oracle::{hc_oracle, hh_oracle, FiniteAlgebra};
use cyclic_homology::{GroundRing, HomologyGroup, Scalar, SparseMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::HashSet;

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec((-bound..=bound).prop_map(BigInt::from), c), r)
    })
}

fn to_sparse(m: &[Vec<BigInt>], cols: usize) -> SparseMatrix {
    let mut s = SparseMatrix::zeros(m.len(), cols);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            s.set(i, j, Scalar::from_integer(x.clone()));
        }
    }
    s
}

/// Random unimodular matrix as a product of elementary operations, with
/// its inverse.
fn unimodular(rng: &mut StdRng, n: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let id = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect()
    };
    let (mut u, mut inv) = (id(n), id(n));
    for _ in 0..3 * n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = BigInt::from(rng.gen_range(-2..=2));
        let mut e = id(n);
        e[i][j] = c.clone();
        let mut e_inv = id(n);
        e_inv[i][j] = -c;
        u = mat_mul(&e, &u);
        inv = mat_mul(&inv, &e_inv);
    }
    (u, inv)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_diagonalization(m in int_matrix(6, 15)) {
        let (rows, cols) = (m.len(), m[0].len());
        let f = smith_form(&IntMatrix { rows, cols, data: m.clone() });
        let s = mat_mul(&mat_mul(&f.u.data, &m), &f.v.data);
        for (i, row) in s.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expected = if i == j && i < f.diagonal.len() { f.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(x, &expected);
            }
        }
        prop_assert_eq!(bareiss_det(&f.u.data).abs(), BigInt::one());
        prop_assert_eq!(bareiss_det(&f.v.data).abs(), BigInt::one());
        prop_assert_eq!(f.diagonal.len(), rational_rank(&m));
    }

    #[test]
    fn integral_homology_of_split_complexes(seed in any::<u64>()) {
        // d_in = U·[X; 0] and d_out = [0 | Y]·U⁻¹ compose to zero, and the
        // homology is coker X ⊕ ker Y.
        let mut rng = StdRng::seed_from_u64(seed);
        let (r, s) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let n = r + s;
        if n == 0 {
            return Ok(());
        }
        let k = rng.gen_range(1..=3);
        let p = rng.gen_range(1..=3);
        let x: Vec<Vec<BigInt>> = (0..r).map(|_| (0..k).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect()).collect();
        let y: Vec<Vec<BigInt>> = (0..p).map(|_| (0..s).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect()).collect();
        let (u, u_inv) = unimodular(&mut rng, n);
        let mut xs = x.clone();
        xs.extend((0..s).map(|_| vec![BigInt::zero(); k]));
        let mut ys: Vec<Vec<BigInt>> = y.iter().map(|row| {
            let mut full = vec![BigInt::zero(); r];
            full.extend(row.iter().cloned());
            full
        }).collect();
        let d_in = mat_mul(&u, &xs);
        ys = mat_mul(&ys, &u_inv);
        let h = homology_at(&to_sparse(&d_in, k), &to_sparse(&ys, n), &GroundRing::Integers).unwrap();

        let x_rank = if r == 0 { 0 } else { rational_rank(&x) };
        let y_rank = if s == 0 { 0 } else { rational_rank(&y) };
        prop_assert_eq!(h.free_rank, (r - x_rank) + (s - y_rank));
        let torsion: BigInt = if r == 0 {
            BigInt::one()
        } else {
            smith_form(&IntMatrix { rows: r, cols: k, data: x }).diagonal.iter().product()
        };
        prop_assert_eq!(h.torsion_order(), torsion);

        let hq = homology_at(&to_sparse(&d_in, k), &to_sparse(&ys, n), &GroundRing::Rationals).unwrap();
        prop_assert_eq!(hq, HomologyGroup::free(h.free_rank));
    }

    #[test]
    fn modular_homology_order_by_enumeration(seed in any::<u64>(), m in 2u64..=6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let (k, p) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let mi = m as i64;
        let d_in: Vec<Vec<i64>> = (0..n).map(|_| (0..k).map(|_| rng.gen_range(0..mi)).collect()).collect();
        // Rows of d_out are random combinations of vectors killing im d_in.
        let vectors: Vec<Vec<i64>> = (0..mi.pow(n as u32))
            .map(|mut c| (0..n).map(|_| { let v = c % mi; c /= mi; v }).collect())
            .collect();
        let kills = |row: &Vec<i64>| (0..k).all(|j| (0..n).map(|i| row[i] * d_in[i][j]).sum::<i64>() % mi == 0);
        let annihilators: Vec<&Vec<i64>> = vectors.iter().filter(|v| kills(v)).collect();
        let d_out: Vec<Vec<i64>> = (0..p).map(|_| annihilators[rng.gen_range(0..annihilators.len())].clone()).collect();

        let kernel = vectors.iter().filter(|v| (0..p).all(|i| (0..n).map(|j| d_out[i][j] * v[j]).sum::<i64>() % mi == 0)).count();
        let image: HashSet<Vec<i64>> = (0..mi.pow(k as u32))
            .map(|mut c| {
                let a: Vec<i64> = (0..k).map(|_| { let v = c % mi; c /= mi; v }).collect();
                (0..n).map(|i| (0..k).map(|j| d_in[i][j] * a[j]).sum::<i64>().rem_euclid(mi)).collect()
            })
            .collect();
        let order = kernel / image.len();

        let ring = GroundRing::IntegersMod(m);
        let sparse = |rows: &[Vec<i64>], cols: usize| {
            let mut s = SparseMatrix::zeros(rows.len(), cols);
            for (i, r) in rows.iter().enumerate() {
                for (j, x) in r.iter().enumerate() {
                    s.set(i, j, int(*x));
                }
            }
            s
        };
        let h = homology_at(&sparse(&d_in, k), &sparse(&d_out, n), &ring).unwrap();
        let ours = BigInt::from(m).pow(h.free_rank as u32) * h.torsion_order();
        prop_assert_eq!(ours, BigInt::from(order));
        prop_assert!(h.torsion.iter().all(|t| (BigInt::from(m) % t).is_zero()));
    }

    #[test]
    fn products_are_associative_and_commutative(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng);
        let deg = |rng: &mut StdRng| rng.gen_range(0..=4);
        let (da, db, dc) = (deg(&mut rng), deg(&mut rng), deg(&mut rng));
        let a = random_homogeneous(&alg, da, &mut rng);
        let b = random_homogeneous(&alg, db, &mut rng);
        let c = random_homogeneous(&alg, dc, &mut rng);
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
        let sign = if da % 2 == 1 && db % 2 == 1 { -Scalar::one() } else { Scalar::one() };
        prop_assert_eq!(alg.mul(&a, &b), alg.scale(&alg.mul(&b, &a), &sign));
        prop_assert_eq!(alg.mul(&a, &alg.add(&b, &c)), alg.add(&alg.mul(&a, &b), &alg.mul(&a, &c)));
    }

    #[test]
    fn homotopy_contracts_the_augmentation_ideal(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let v: Vec<(&str, u32)> = ["a", "b"].iter().take(rng.gen_range(0..=2)).map(|&n| (n, rng.gen_range(0..=3))).collect();
        let w: Vec<(&str, u32)> = ["u", "v", "w"].iter().take(rng.gen_range(1..=3)).map(|&n| (n, rng.gen_range(0..=3))).collect();
        let res = Resolution::new(GroundRing::Integers, &v, &w).unwrap();
        let alg = res.algebra();
        let d = res.differential();
        let m = random_monomial(alg, &mut rng);
        prop_assume!(res.in_kernel(&m));
        let e = Element::monomial(m, int(rng.gen_range(1..=5)));
        let h = res.homotopy(&e).unwrap();
        let lhs = alg.add(
            &cyclic_homology::dp::derive(alg, &d, &h).unwrap(),
            &res.homotopy(&cyclic_homology::dp::derive(alg, &d, &e).unwrap()).unwrap(),
        );
        prop_assert_eq!(lhs, e);
        prop_assert!(res.homotopy(&h).unwrap().is_zero());
    }

    #[test]
    fn bar_complex_ignores_basis_order(perm in Just(vec![1usize, 2, 3]).prop_shuffle()) {
        let p = presentation(GroundRing::Integers, &["x", "y"], &["x^2", "y^2"]);
        let alg = FiniteAlgebra::from_presentation(&p).unwrap();
        let mut full = vec![0];
        full.extend(perm);
        let permuted = alg.permuted(&full).unwrap();
        prop_assert_eq!(hh_oracle(&permuted, 3).unwrap(), hh_oracle(&alg, 3).unwrap());
        prop_assert_eq!(hc_oracle(&permuted, 2).unwrap(), hc_oracle(&alg, 2).unwrap());
    }

    #[test]
    fn gamma_forms_differentials_anticommute(seed in any::<u64>(), fixture in 0usize..5) {
        let (_, p) = flat_fixtures().swap_remove(fixture);
        let g = GammaFormsComplex::for_presentation(&p, 4).unwrap();
        let alg = g.algebra();
        let mut rng = StdRng::seed_from_u64(seed);
        let piece = rng.gen_range(0..g.pieces().len());
        let a = rng.gen_range(0..=3);
        let b = rng.gen_range(0..=3);
        let basis = g.basis(piece, a, b);
        prop_assume!(!basis.is_empty());
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let e = Element::monomial(m, Scalar::one());
        let dd = g.apply_d(&g.apply_d(&e).unwrap()).unwrap();
        let deltadelta = g.apply_delta(&g.apply_delta(&e).unwrap()).unwrap();
        let mixed = alg.add(
            &g.apply_delta(&g.apply_d(&e).unwrap()).unwrap(),
            &g.apply_d(&g.apply_delta(&e).unwrap()).unwrap(),
        );
        prop_assert!(dd.is_zero());
        prop_assert!(deltadelta.is_zero());
        prop_assert!(mixed.is_zero());
    }

    #[test]
    fn envelope_differential_squares_to_zero(seed in any::<u64>(), fixture in 0usize..3) {
        let (_, p) = integral_fixtures().swap_remove(fixture);
        let e = Envelope::new(&p).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let j = rng.gen_range(0..=2);
        let words = e.words(j, WeightWindow::AtMost(4));
        prop_assume!(!words.is_empty());
        let w = words[rng.gen_range(0..words.len())].clone();
        prop_assert!(e.dbar(&e.dbar_word(&w)).is_zero());
    }

    #[test]
    fn normalized_groups_are_stable(free in 0usize..4, factors in proptest::collection::vec(0i64..40, 0..5), m in 2u64..30) {
        for ring in [GroundRing::Integers, GroundRing::IntegersMod(m), GroundRing::Rationals] {
            let raw: Vec<BigInt> = factors.iter().map(|&d| BigInt::from(d)).collect();
            let g = HomologyGroup::from_invariants(free, raw, &ring);
            prop_assert!(g.torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
            prop_assert!(g.torsion.iter().all(|t| t > &BigInt::one()));
            prop_assert_eq!(HomologyGroup::from_invariants(g.free_rank, g.torsion.clone(), &ring), g.clone());
            prop_assert_eq!(g.direct_sum(&HomologyGroup::zero()), g);
        }
    }

    #[test]
    fn polynomials_round_trip_through_text(coeffs in proptest::collection::vec(-6i64..=6, 1..6), ex in proptest::collection::vec((0u32..4, 0u32..4), 1..6)) {
        let ring = GroundRing::Integers;
        let names = vec!["x".to_string(), "y".to_string()];
        let mut f = Polynomial::zero(2);
        for (c, (a, b)) in coeffs.iter().zip(&ex) {
            f = f.add(&Polynomial::term(2, vec![*a, *b], int(*c)), &ring);
        }
        let text = f.format(&names);
        let back = Polynomial::parse(&text, &names, &ring).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn gamma_forms_slices_have_weight_at_most_degree() {
    for (name, p) in flat_fixtures() {
        let g = GammaFormsComplex::for_presentation(&p, 4).unwrap();
        let alg = g.algebra();
        for piece in 0..g.pieces().len() {
            for a in 0..=g.top() {
                for b in 0..=g.top() - a {
                    for m in g.basis(piece, a, b) {
                        assert_eq!(alg.hdeg(m) as usize, a + b, "{name}");
                        assert_eq!(alg.weight(m) as usize, b, "{name}");
                    }
                }
            }
        }
    }
}
