#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use redgit::groups;
use redgit::kirwan::LinearizedAction;
use redgit::root_datum::{invariant_norm, GroupData, InvariantNorm};
use redgit::{QMat, QVec, Rational};

/// Connected and disconnected groups used across the property suites.
pub fn corpus() -> Vec<(&'static str, GroupData)> {
    vec![
        ("GL1", groups::gl(1)),
        ("GL2", groups::gl(2)),
        ("GL3", groups::gl(3)),
        ("GL4", groups::gl(4)),
        ("SL2", groups::sl(2)),
        ("SL3", groups::sl(3)),
        ("Sp4", groups::sp4()),
        ("N(T2)", groups::torus_normalizer(2)),
        ("N(T3)", groups::torus_normalizer(3)),
        ("GL3 x outer", groups::gl_outer(3)),
    ]
}

pub fn ints(v: &[i64]) -> QVec {
    QVec::from_ints(v)
}

pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=4))
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> QVec {
    (0..n).map(|_| random_rational(rng, bound)).collect()
}

/// `L Lᵀ + I` for a random small integer `L`.
pub fn random_pd(rng: &mut ChaCha8Rng, n: usize) -> QMat {
    let l = QMat::new(n, n, (0..n * n).map(|_| Rational::from(rng.gen_range(-2i64..=2))).collect()).unwrap();
    l.mul(&l.transpose()).add(&QMat::identity(n))
}

pub fn action(g: &GroupData, weights: &[&[i64]], shift: &[i64]) -> LinearizedAction {
    let norm = invariant_norm(g, &QMat::identity(g.rank())).unwrap();
    action_with_norm(g, weights, shift, norm)
}

pub fn action_with_norm(g: &GroupData, weights: &[&[i64]], shift: &[i64], norm: InvariantNorm) -> LinearizedAction {
    LinearizedAction::new(g, weights.iter().map(|w| ints(w)).collect(), ints(shift), norm).unwrap()
}

/// Torus and extended-torus actions of dimension at most 6 with at most 6 weights.
pub fn action_suite() -> Vec<(&'static str, LinearizedAction)> {
    let t1 = groups::torus(1);
    let t2 = groups::torus(2);
    let t3 = groups::torus(3);
    let n2 = groups::torus_normalizer(2);
    let n3 = groups::torus_normalizer(3);
    let skew = InvariantNorm::new(&t2, QMat::from_int_rows(&[&[2, 1], &[1, 2]])).unwrap();
    vec![
        ("T1 {1,-1}", action(&t1, &[&[1], &[-1]], &[0])),
        ("T1 {1,1,-1}", action(&t1, &[&[1], &[1], &[-1]], &[0])),
        ("T1 {2,1,-1}", action(&t1, &[&[2], &[1], &[-1]], &[0])),
        ("T1 {3,1,-2,0} shifted", action(&t1, &[&[3], &[1], &[-2], &[0]], &[1])),
        ("T2 triangle", action(&t2, &[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0])),
        ("T2 triangle + origin", action(&t2, &[&[1, 0], &[0, 1], &[-1, -1], &[0, 0]], &[0, 0])),
        ("T2 shifted", action(&t2, &[&[1, 0], &[0, 1], &[-1, -1], &[2, 1]], &[1, 0])),
        ("T2 skew norm", action_with_norm(&t2, &[&[1, 0], &[0, 1], &[-1, -1], &[1, -1]], &[0, 0], skew)),
        ("N(T2) triangle", action(&n2, &[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0])),
        ("N(T2) paired", action(&n2, &[&[1, 0], &[0, 1], &[2, -1], &[-1, 2]], &[0, 0])),
        ("N(T2) shifted", action(&n2, &[&[2, 0], &[0, 2], &[1, 1], &[0, 0]], &[1, 1])),
        ("N(T3) standard", action(&n3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]], &[0, 0, 0])),
        (
            "T3 six weights",
            action(&t3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, 0], &[0, -1, -1], &[1, 1, 1]], &[0, 0, 0]),
        ),
        (
            "T6 simplex",
            action(
                &groups::torus(6),
                &[
                    &[1, 0, 0, 0, 0, 0],
                    &[0, 1, 0, 0, 0, 0],
                    &[0, 0, 1, 0, 0, 0],
                    &[0, 0, 0, 1, 0, 0],
                    &[0, 0, 0, 0, 1, 0],
                    &[-1, -1, -1, -1, -1, 1],
                ],
                &[0, 0, 0, 0, 0, 0],
            ),
        ),
    ]
}
