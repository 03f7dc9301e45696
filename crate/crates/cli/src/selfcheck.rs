//! The built-in identity suite: exact rational checks of every structural
//! law the library rests on, sized for an interactive run.

use fracseq::*;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Rat = BigRational;

fn q(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

fn rand_order(rng: &mut ChaCha8Rng) -> Rat {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

fn rand_seq(rng: &mut ChaCha8Rng, len: usize) -> Seq<Rat> {
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

struct Check {
    name: &'static str,
    run: fn(&mut ChaCha8Rng) -> bool,
}

fn golden_tables(_: &mut ChaCha8Rng) -> bool {
    let pos = coeff_table(&q(1, 2), 6);
    let neg = coeff_table(&q(-1, 2), 6);
    pos.entries()
        == [
            q(1, 1),
            q(-1, 2),
            q(-1, 8),
            q(-1, 16),
            q(-5, 128),
            q(-7, 256),
        ]
        && neg.entries() == [q(1, 1), q(1, 2), q(3, 8), q(5, 16), q(35, 128), q(63, 256)]
}

fn composition_law(rng: &mut ChaCha8Rng) -> bool {
    (0..20).all(|_| {
        let a = rand_order(rng);
        let b = rand_order(rng);
        let conv = coeff_table(&a, 24).convolve(&coeff_table(&b, 24)).unwrap();
        conv.entries() == coeff_table(&(a + b), 24).entries()
    })
}

fn running_sum_law(rng: &mut ChaCha8Rng) -> bool {
    (0..10).all(|_| {
        let a = rand_order(rng);
        coeff_table(&a, 24).prefix_sums().entries() == coeff_table(&(a - q(1, 1)), 24).entries()
    })
}

fn operator_round_trip(rng: &mut ChaCha8Rng) -> bool {
    (0..10).all(|_| {
        let alpha = rand_order(rng);
        let x = rand_seq(rng, 32);
        backward_antidiff(&backward_diff(&x, &alpha), &alpha) == x
            && backward_diff(&backward_antidiff(&x, &alpha), &alpha) == x
    })
}

fn transform_round_trip(rng: &mut ChaCha8Rng) -> bool {
    (0..10).all(|_| {
        let alpha = rand_order(rng);
        let u = rand_weights(rng, 32);
        let x = rand_seq(rng, 32);
        let y = transform(&x, &alpha, &u).unwrap();
        inverse_transform(&y, &alpha, &u).unwrap() == x
    })
}

fn triangle_structure(rng: &mut ChaCha8Rng) -> bool {
    (0..5).all(|_| {
        let alpha = rand_order(rng);
        let t = domain_triangle(&alpha, &WeightSeq::ones(16), 16).unwrap();
        let shifted = coeff_table(&(alpha - q(1, 1)), 16);
        (0..16).all(|r| (0..=r).all(|k| t.get(r, k) == *shifted.get(r - k)))
    })
}

fn basis_inverts_triangle(rng: &mut ChaCha8Rng) -> bool {
    (0..3).all(|_| {
        let alpha = rand_order(rng);
        let u = rand_weights(rng, 16);
        let t = domain_triangle(&alpha, &u, 16).unwrap();
        let cols: Vec<Vec<Rat>> = (0..16)
            .map(|j| schauder_basis(j, &alpha, &u, 16).unwrap().into_entries())
            .collect();
        let inv_rows: Vec<Vec<Rat>> = (0..16)
            .map(|i| (0..=i).map(|j| cols[j][i].clone()).collect())
            .collect();
        let inv = TriangleMatrix::from_rows(inv_rows).unwrap();
        inv.mul_triangle(&t).unwrap() == TriangleMatrix::identity(16)
    })
}

fn pairing_partial_sums(rng: &mut ChaCha8Rng) -> bool {
    (0..5).all(|_| {
        let alpha = rand_order(rng);
        let u = rand_weights(rng, 24);
        let a = rand_seq(rng, 24);
        let x = rand_seq(rng, 24);
        let y = transform(&x, &alpha, &u).unwrap();
        let t = pairing_matrix(a.entries(), &alpha, &u, 24).unwrap();
        let ty = t.mul_vec(y.entries()).unwrap();
        let mut acc = q(0, 1);
        (0..24).all(|m| {
            acc += a.entries()[m].clone() * x.entries()[m].clone();
            ty[m] == acc
        })
    })
}

fn membership_sanity(_: &mut ChaCha8Rng) -> bool {
    let probe = MembershipProbe::new(SpaceTag::Null, 8, 1e-9).unwrap();
    let ones: Seq<Rat> = make_family(&Family::Constant(1.into()), 48);
    let grows = membership(&ones, &q(0, 1), &WeightSeq::ones(48), &probe).unwrap();
    let mut finite = vec![q(0, 1); 48];
    finite[0] = q(1, 1);
    finite[1] = q(-1, 1);
    let settles = membership(&Seq::new(finite), &q(0, 1), &WeightSeq::ones(48), &probe).unwrap();
    grows.verdict == Verdict::Violated && settles.verdict == Verdict::Satisfied
}

const CHECKS: &[Check] = &[
    Check {
        name: "golden coefficient tables",
        run: golden_tables,
    },
    Check {
        name: "composition law",
        run: composition_law,
    },
    Check {
        name: "running-sum law",
        run: running_sum_law,
    },
    Check {
        name: "operator round trip",
        run: operator_round_trip,
    },
    Check {
        name: "transform round trip",
        run: transform_round_trip,
    },
    Check {
        name: "triangle running-sum structure",
        run: triangle_structure,
    },
    Check {
        name: "basis columns invert the triangle",
        run: basis_inverts_triangle,
    },
    Check {
        name: "pairing partial sums",
        run: pairing_partial_sums,
    },
    Check {
        name: "membership probe sanity",
        run: membership_sanity,
    },
];

/// Runs every identity check; returns the number of failures.
pub fn run(seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for check in CHECKS {
        let ok = (check.run)(&mut rng);
        println!(
            "selfcheck: {:<38} {}",
            check.name,
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failures += 1;
        }
    }
    failures
}
