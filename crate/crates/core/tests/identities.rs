//! Exact structural identities in rational mode, checked against
//! independent oracles where one exists. Everything here is bit-exact:
//! no tolerances.

use fracseq::*;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Rat = BigRational;
type RSeq = Seq<Rat>;

fn q(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

fn rand_order(rng: &mut ChaCha8Rng) -> Rat {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

fn rand_seq(rng: &mut ChaCha8Rng, len: usize) -> RSeq {
    Seq::new(
        (0..len)
            .map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
            .collect(),
    )
}

fn rand_weights(rng: &mut ChaCha8Rng, len: usize) -> WeightSeq<Rat> {
    let pool = [q(1, 1), q(-1, 1), q(1, 2), q(-1, 2), q(2, 1), q(-2, 1)];
    WeightSeq::new(
        (0..len)
            .map(|_| pool[rng.gen_range(0..pool.len())].clone())
            .collect(),
    )
    .unwrap()
}

/// Independent inversion oracle: forward substitution on the triangle,
/// never touching the library's inverse-transform path.
fn invert_triangle_by_substitution(t: &TriangleMatrix<Rat>) -> Vec<Vec<Rat>> {
    let n = t.dim();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = vec![Rat::zero(); n];
        for i in 0..n {
            let rhs = if i == j { q(1, 1) } else { q(0, 1) };
            let mut acc = rhs;
            for k in 0..i {
                acc -= t.get(i, k) * col[k].clone();
            }
            col[i] = acc / t.get(i, i);
        }
        cols.push(col);
    }
    cols
}

#[test]
fn composition_holds_at_length_128() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..3 {
        let a = rand_order(&mut rng);
        let b = rand_order(&mut rng);
        let x = rand_seq(&mut rng, 128);
        let composed = compose_backward(&x, &a, &b);
        assert_eq!(composed, backward_diff(&x, &(a + b)));
    }
}

#[test]
fn transform_round_trips_exactly_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..25 {
        let alpha = rand_order(&mut rng);
        let u = rand_weights(&mut rng, 48);
        let x = rand_seq(&mut rng, 48);
        let y = transform(&x, &alpha, &u).unwrap();
        assert_eq!(inverse_transform(&y, &alpha, &u).unwrap(), x);
        assert_eq!(
            transform(&inverse_transform(&x, &alpha, &u).unwrap(), &alpha, &u).unwrap(),
            x
        );
    }
}

#[test]
fn streaming_transform_matches_matrix_rows_up_to_128() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for n in [2usize, 3, 17, 64, 128] {
        let alpha = rand_order(&mut rng);
        let u = rand_weights(&mut rng, n);
        let x = rand_seq(&mut rng, n);
        let t = domain_triangle(&alpha, &u, n).unwrap();
        let y = transform(&x, &alpha, &u).unwrap();
        assert_eq!(t.mul_vec(x.entries()).unwrap(), y.entries());
    }
}

#[test]
fn triangle_entries_satisfy_running_sum_identity() {
    // with unit weights the (n, k) entry is the order-(α-1) coefficient
    // at index n - k
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..10 {
        let alpha = rand_order(&mut rng);
        let n = 24;
        let t = domain_triangle(&alpha, &WeightSeq::ones(n), n).unwrap();
        let shifted = coeff_table(&(alpha.clone() - q(1, 1)), n);
        for r in 0..n {
            for k in 0..=r {
                assert_eq!(t.get(r, k), *shifted.get(r - k));
            }
        }
    }
}

#[test]
fn basis_columns_invert_the_triangle_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..5 {
        let alpha = rand_order(&mut rng);
        let n = 24;
        let u = rand_weights(&mut rng, n);
        let t = domain_triangle(&alpha, &u, n).unwrap();

        // library inverse: basis vectors as columns
        let basis: Vec<Vec<Rat>> = (0..n)
            .map(|j| schauder_basis(j, &alpha, &u, n).unwrap().into_entries())
            .collect();

        // oracle inverse: forward substitution
        let oracle = invert_triangle_by_substitution(&t);
        assert_eq!(basis, oracle);

        // both products give the identity
        for j in 0..n {
            let tb = t.mul_vec(&basis[j]).unwrap();
            for (i, v) in tb.iter().enumerate() {
                assert_eq!(*v, if i == j { q(1, 1) } else { q(0, 1) });
            }
        }
        let inv_rows: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..=i).map(|j| basis[j][i].clone()).collect())
            .collect();
        let inv = TriangleMatrix::from_rows(inv_rows).unwrap();
        let prod = inv.mul_triangle(&t).unwrap();
        assert_eq!(prod, TriangleMatrix::identity(n));
    }
}

#[test]
fn pairing_matrix_rows_equal_partial_sums_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..10 {
        let n = 32;
        let alpha = rand_order(&mut rng);
        let u = rand_weights(&mut rng, n);
        let a = rand_seq(&mut rng, n);
        let x = rand_seq(&mut rng, n);
        let y = transform(&x, &alpha, &u).unwrap();
        let t = pairing_matrix(a.entries(), &alpha, &u, n).unwrap();
        let ty = t.mul_vec(y.entries()).unwrap();
        let mut acc = q(0, 1);
        for m in 0..n {
            acc += a.entries()[m].clone() * x.entries()[m].clone();
            assert_eq!(ty[m], acc);
        }
    }
}

#[test]
fn row_rewrite_identity_holds_at_every_boundary() {
    // sum_{k<=m} a_k x_k = sum_{k<m} (w_k - w_{k+1}) y_k + w_m y_m with
    // the boundary-m pairing weights, exactly for every m
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..8 {
        let n = 24;
        let alpha = rand_order(&mut rng);
        let u = rand_weights(&mut rng, n);
        let a = rand_seq(&mut rng, n);
        let x = rand_seq(&mut rng, n);
        let y = transform(&x, &alpha, &u).unwrap();
        for m in 0..n {
            let w = pairing_weights(a.entries(), &alpha, &u, m).unwrap();
            let mut rhs = q(0, 1);
            for k in 0..m {
                rhs += (w[k].clone() - w[k + 1].clone()) * y.entries()[k].clone();
            }
            rhs += w[m].clone() * y.entries()[m].clone();
            let mut lhs = q(0, 1);
            for k in 0..=m {
                lhs += a.entries()[k].clone() * x.entries()[k].clone();
            }
            assert_eq!(lhs, rhs, "boundary {m}");
        }
    }
}

#[test]
fn adjoint_rewrite_identity_holds_at_every_boundary() {
    // sum_{k<=m} c_k y_k = sum_{k<=m} (sum_{j=k..m} tau_{jk} c_j) x_k for
    // any coefficient row c, with y the transform of x
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..8 {
        let n = 24;
        let alpha = rand_order(&mut rng);
        let u = rand_weights(&mut rng, n);
        let c = rand_seq(&mut rng, n);
        let x = rand_seq(&mut rng, n);
        let y = transform(&x, &alpha, &u).unwrap();
        let t = domain_triangle(&alpha, &u, n).unwrap();
        for m in 0..n {
            let mut lhs = q(0, 1);
            for k in 0..=m {
                lhs += c.entries()[k].clone() * y.entries()[k].clone();
            }
            let mut rhs = q(0, 1);
            for k in 0..=m {
                let mut inner = q(0, 1);
                for j in k..=m {
                    inner += t.get(j, k) * c.entries()[j].clone();
                }
                rhs += inner * x.entries()[k].clone();
            }
            assert_eq!(lhs, rhs, "boundary {m}");
        }
    }
}

#[test]
fn composed_matrix_commutes_with_application() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..6 {
        let n = 20;
        let alpha = rand_order(&mut rng);
        let u = rand_weights(&mut rng, n);
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|_| rand_seq(&mut rng, n).into_entries())
            .collect();
        let a = InfMatrix::new(rows, None).unwrap();
        let b = composed_matrix(&a, &alpha, &u).unwrap();
        let z = rand_seq(&mut rng, n);
        let bz = b.mul_vec(z.entries()).unwrap();
        let az = a.mul_vec(z.entries()).unwrap();
        let t = domain_triangle(&alpha, &u, n).unwrap();
        assert_eq!(bz, t.mul_vec(&az).unwrap());
    }
}

#[test]
fn associated_matrix_rows_are_full_boundary_pairing_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let n = 16;
    let alpha = rand_order(&mut rng);
    let u = rand_weights(&mut rng, n);
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|_| rand_seq(&mut rng, n).into_entries())
        .collect();
    let a = InfMatrix::new(rows, None).unwrap();
    let tilde = associated_matrix(&a, &alpha, &u).unwrap();
    for r in 0..n {
        let t = row_pairing_matrix(&a, &alpha, &u, r).unwrap();
        let last = t.row(n - 1);
        for k in 0..n - 1 {
            assert_eq!(*tilde.get(r, k), last[k], "row {r} col {k}");
        }
    }
}

#[test]
fn norm_of_preimage_equals_sup_of_image() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for _ in 0..10 {
        let n = 32;
        let alpha = rand_order(&mut rng);
        let u = rand_weights(&mut rng, n);
        let y = rand_seq(&mut rng, n);
        let x = inverse_transform(&y, &alpha, &u).unwrap();
        let norm = bk_norm(&x, &alpha, &u).unwrap();
        assert_eq!(norm.value, y.sup_abs());
        assert!(norm.lower_bound);
    }
}
