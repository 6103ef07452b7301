mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{corpus, ints, random_pd, random_vec};
use redgit::bundle::{
    adjoint_degrees, canonical_destabilizer, filtration_weight, filtration_weight_decomposed, levi_induced_semistable,
    max_parabolic_weight, split_semistable, split_semistable_checked, LeviInducedBundle, SplitBundle,
};
use redgit::groups;
use redgit::root_datum::{invariant_norm, trace_form, weyl_group};
use redgit::{QVec, Rational};

fn integral_vec(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> QVec {
    QVec::from_ints(&(0..n).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0..corpus().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn filtration_weight_is_bilinear_and_graded(idx in corpus_index(), seed in any::<u64>()) {
        let (_, g) = &corpus()[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.rank();
        let (l1, l2, d) = (random_vec(&mut rng, n, 4), random_vec(&mut rng, n, 4), random_vec(&mut rng, n, 4));
        let c = common::random_rational(&mut rng, 3);
        let lin = filtration_weight(g, &l1.scale(&c).add(&l2), &d).unwrap();
        prop_assert_eq!(lin, c * filtration_weight(g, &l1, &d).unwrap() + filtration_weight(g, &l2, &d).unwrap());
        let b = SplitBundle::new(g, integral_vec(&mut rng, n, 4)).unwrap();
        prop_assert_eq!(filtration_weight_decomposed(&b, &l1).unwrap(), filtration_weight(g, &l1, b.delta()).unwrap());
    }

    #[test]
    fn filtration_weights_balance_over_weyl_orbits(idx in corpus_index(), seed in any::<u64>()) {
        let (_, g) = &corpus()[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = random_vec(&mut rng, g.rank(), 4);
        let d = random_vec(&mut rng, g.rank(), 4);
        let total: Rational = weyl_group(g).unwrap().elements().iter()
            .map(|w| filtration_weight(g, &w.apply(&lambda), &d).unwrap())
            .sum();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn destabilizer_identity(idx in corpus_index(), seed in any::<u64>()) {
        let (_, g) = &corpus()[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let norm = invariant_norm(g, &random_pd(&mut rng, g.rank())).unwrap();
        let b = SplitBundle::new(g, integral_vec(&mut rng, g.rank(), 3)).unwrap();
        let ss = split_semistable_checked(&b).unwrap();
        let destab = canonical_destabilizer(&b, &norm).unwrap();
        prop_assert_eq!(destab.is_none(), ss);
        if let Some(x) = destab {
            prop_assert!(x.m_squared.is_positive());
            prop_assert_eq!(filtration_weight(g, &x.lambda_star, &x.translate).unwrap(), x.m_squared.clone());
            prop_assert_eq!(norm.norm_sq(&x.lambda_star), x.m_squared.clone());
            // no Weyl translate is destabilized more strongly
            let a = trace_form(g);
            for w in weyl_group(g).unwrap().elements() {
                let other = norm.dual_gram().apply(&a.apply(&w.apply(b.delta())));
                prop_assert!(norm.norm_sq(&other) <= x.m_squared);
            }
        }
    }

    #[test]
    fn generic_levi_reduces_to_split(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = groups::gl(n);
        // distinct entries make the Levi the maximal torus
        let generic = QVec::from_ints(&(0..n as i64).rev().collect::<Vec<_>>());
        let d = integral_vec(&mut rng, n, 3);
        let id = g.components().label(g.components().identity()).to_string();
        let lb = LeviInducedBundle::new(&g, generic, &[id], d.clone(), None).unwrap();
        prop_assert_eq!(levi_induced_semistable(&lb).unwrap(), split_semistable(&SplitBundle::new(&g, d).unwrap()));
    }
}

#[test]
fn adjoint_degrees_list_every_summand() {
    let b = SplitBundle::new(&groups::gl(3), ints(&[2, 0, 0])).unwrap();
    let degs = adjoint_degrees(&b);
    assert_eq!(degs.len(), 9);
    assert_eq!(degs.iter().filter(|x| x.is_zero()).count(), 5);
    assert_eq!(max_parabolic_weight(&b).unwrap(), Rational::from(24));
}

#[test]
fn sp4_and_normalizer_semistability() {
    let sp4 = groups::sp4();
    assert!(!split_semistable_checked(&SplitBundle::new(&sp4, ints(&[1, 0])).unwrap()).unwrap());
    assert!(split_semistable_checked(&SplitBundle::new(&sp4, ints(&[0, 0])).unwrap()).unwrap());
    // G° is a torus: every split bundle is semistable
    let n3 = groups::torus_normalizer(3);
    assert!(split_semistable_checked(&SplitBundle::new(&n3, ints(&[5, -1, 2])).unwrap()).unwrap());
}

#[test]
fn levi_bundle_with_unstable_inner_part() {
    let g = groups::gl(3);
    let lb = LeviInducedBundle::new(&g, ints(&[1, 1, 0]), &["1"], ints(&[1, 1, 1]), Some(false)).unwrap();
    assert!(!levi_induced_semistable(&lb).unwrap());
    let lb = LeviInducedBundle::new(&g, ints(&[1, 1, 0]), &["1"], ints(&[1, 1, 1]), Some(true)).unwrap();
    assert!(levi_induced_semistable(&lb).unwrap());
    // (1, 0, 0) is not constant on the GL2 block, so it is not a Levi degree
    assert!(LeviInducedBundle::new(&g, ints(&[1, 1, 0]), &["1"], ints(&[1, 0, 0]), None).is_err());
}
