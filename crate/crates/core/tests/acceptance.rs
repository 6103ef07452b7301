//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{action_suite, corpus, ints, random_pd, random_vec};
use redgit::bundle::{
    adjoint_semistable, filtration_weight, filtration_weight_decomposed, split_semistable, split_semistable_bruteforce,
    SplitBundle,
};
use redgit::change_of_group::{destabilizing_witness, is_adapted, HomData, RationalDegree};
use redgit::exact_linalg::{average_operator, fixed_subspace};
use redgit::groups;
use redgit::kirwan::{
    candidate_betas, is_min_norm_certificate, min_norm_point_exhaustive, min_norm_point_wolfe, stratify_supports,
    verify_recursion, SupportPattern,
};
use redgit::root_datum::{
    central_cocharacters, connected_weyl_group, invariant_norm, lambda_vee, rational_characters, root_kernel,
    trace_form, weyl_group,
};
use redgit::{QMat, QSubspace, QVec, Rational};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn span(v: &[&[i64]], n: usize) -> QSubspace {
    QSubspace::span(&v.iter().map(|x| ints(x)).collect::<Vec<_>>(), n).unwrap()
}

fn slope_degree(g: &redgit::root_datum::GroupData, a: i64, b: i64) -> RationalDegree {
    let (x, y) = (Rational::new(a, 2), Rational::new(b, 3));
    RationalDegree::new(g, &[0], QVec::new(vec![x.clone(), x, y.clone(), y.clone(), y])).unwrap()
}

fn block_sum() -> HomData {
    let source = groups::product(&groups::gl(2), &groups::gl(3));
    HomData::new(&source, &groups::gl(5), QMat::identity(5), vec![0]).unwrap()
}

fn normalizer_into_gl2() -> HomData {
    let n = groups::torus_normalizer(2);
    HomData::new(&n, &groups::gl(2), QMat::identity(2), vec![0, 0]).unwrap()
}

fn criterion_1() -> Outcome {
    let f = block_sum();
    let mut adapted = 0;
    for a in -6..=6 {
        for b in -6..=6 {
            let got = is_adapted(&f, &slope_degree(f.source(), a, b)).map_err(|e| e.to_string())?;
            check(got == (3 * a == 2 * b), || format!("(a, b) = ({a}, {b}): adapted = {got}"))?;
            adapted += got as usize;
        }
    }
    Ok(format!("169 degrees, {adapted} adapted"))
}

fn criterion_2() -> Outcome {
    let n = groups::torus_normalizer(2);
    let diag = span(&[&[1, 1]], 2);
    check(rational_characters(&n).unwrap() == diag, || "rational characters differ from span{(1,1)}".into())?;
    check(central_cocharacters(&n).unwrap() == diag, || "central cocharacters differ from span{(1,1)}".into())?;
    let f = normalizer_into_gl2();
    let mut count = 0;
    for d1 in -3..=3 {
        for d2 in -3..=3 {
            let deg = RationalDegree::new(&n, &[0], ints(&[d1, d2])).unwrap();
            let got = is_adapted(&f, &deg).map_err(|e| e.to_string())?;
            check(got == (d1 == d2), || format!("d = ({d1}, {d2}): adapted = {got}"))?;
            count += 1;
        }
        let full = RationalDegree::new(&n, &[0, 1], ints(&[d1, d1])).unwrap();
        check(is_adapted(&f, &full).unwrap(), || format!("F = pi0, d = ({d1}, {d1}) not adapted"))?;
    }
    Ok(format!("{count} degrees on F = {{1}} plus 7 on F = pi0"))
}

fn criterion_3() -> Outcome {
    for (name, g) in corpus() {
        let central = central_cocharacters(&g).unwrap();
        let kernel = root_kernel(g.datum());
        check(central.is_subspace_of(&kernel), || format!("{name}: central cocharacters not inside root kernel"))?;
        let avg = average_operator(&weyl_group(&g).unwrap());
        let image = QSubspace::span(&(0..g.rank()).map(|j| avg.col(j)).collect::<Vec<_>>(), g.rank()).unwrap();
        check(image == central, || format!("{name}: averaging image differs from central cocharacters"))?;
    }
    Ok(format!("{} groups", corpus().len()))
}

fn criterion_4() -> Outcome {
    for (name, g) in corpus() {
        let kernel = QSubspace::kernel_of(&trace_form(&g));
        let fixed = fixed_subspace(&connected_weyl_group(&g).unwrap());
        check(kernel == fixed, || format!("{name}: trace-form kernel differs from W° fixed space"))?;
    }
    Ok(format!("{} groups", corpus().len()))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, g) in corpus() {
        for _ in 0..100 {
            let lambda = random_vec(&mut rng, g.rank(), 6);
            let delta = random_vec(&mut rng, g.rank(), 6);
            let b = SplitBundle::new(&g, delta.clone()).unwrap();
            let direct = filtration_weight(&g, &lambda, &delta).unwrap();
            let graded = filtration_weight_decomposed(&b, &lambda).unwrap();
            check(direct == graded, || format!("{name}: λ = {lambda}, δ = {delta}: {direct} vs {graded}"))?;
        }
    }
    Ok(format!("{} pairs", 100 * corpus().len()))
}

fn all_int_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-bound..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn criterion_6() -> Outcome {
    let mut groups_list: Vec<(String, redgit::root_datum::GroupData)> = (1..=4).map(|n| (format!("GL{n}"), groups::gl(n))).collect();
    groups_list.push(("N(T2)".into(), groups::torus_normalizer(2)));
    let mut total = 0;
    let mut semistable = 0;
    for (name, g) in &groups_list {
        for d in all_int_vectors(g.rank(), 3) {
            let b = SplitBundle::new(g, ints(&d)).unwrap();
            let closed = split_semistable(&b);
            let brute = split_semistable_bruteforce(&b).map_err(|e| e.to_string())?;
            let adj = adjoint_semistable(&b);
            check(closed == brute && brute == adj, || format!("{name}, δ = {d:?}: {closed} / {brute} / {adj}"))?;
            total += 1;
            semistable += closed as usize;
        }
    }
    Ok(format!("{total} degrees, {semistable} semistable"))
}

fn criterion_7() -> Outcome {
    let mut cases: Vec<(HomData, RationalDegree)> = Vec::new();
    let f = block_sum();
    for a in -6..=6 {
        for b in -6..=6 {
            cases.push((f.clone(), slope_degree(f.source(), a, b)));
        }
    }
    let g = normalizer_into_gl2();
    for d1 in -3..=3 {
        for d2 in -3..=3 {
            cases.push((g.clone(), RationalDegree::new(g.source(), &[0], ints(&[d1, d2])).unwrap()));
        }
    }
    let (mut adapted, mut unadapted) = (0, 0);
    for (f, deg) in &cases {
        let w = destabilizing_witness(f, deg).map_err(|e| e.to_string())?;
        let roots = f.target().datum().roots();
        if is_adapted(f, deg).unwrap() {
            check(w.weight.is_zero(), || format!("adapted degree {} has weight {}", deg.d(), w.weight))?;
            adapted += 1;
        } else {
            check(w.weight.is_positive(), || format!("degree {} has weight {}", deg.d(), w.weight))?;
            for (i, a) in roots.iter().enumerate() {
                let p = w.lambda_prime.dot(a);
                check(w.parabolic.parabolic_roots.contains(&i) == !p.is_negative(), || format!("root {a} misplaced"))?;
                check(!w.parabolic.levi_roots.contains(&i) || p.is_zero(), || format!("λ′ not central in the Levi at {a}"))?;
            }
            check(w.parabolic.levi_weyl.elements().iter().all(|m| m.apply(&w.lambda_prime) == w.lambda_prime), || {
                "Levi Weyl group moves λ′".into()
            })?;
            unadapted += 1;
        }
    }
    Ok(format!("{unadapted} non-adapted with positive weight, {adapted} adapted with weight 0"))
}

/// Independent face-enumeration oracle: project onto the affine hull of each
/// subset via the Gram matrix of difference vectors, keep projections with
/// nonnegative barycentric coordinates, and return the one that satisfies
/// the variational inequality.
fn oracle_min_norm(points: &[QVec], d: &QMat) -> QVec {
    let k = points.len();
    let mut best: Option<QVec> = None;
    for mask in 1u32..(1 << k) {
        let sub: Vec<&QVec> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &points[i]).collect();
        let p0 = sub[0];
        let diffs: Vec<QVec> = sub[1..].iter().map(|p| p.sub(p0)).collect();
        let m = diffs.len();
        let (x, coeffs) = if m == 0 {
            (p0.clone(), vec![Rational::one()])
        } else {
            let gram = QMat::new(m, m, diffs.iter().flat_map(|u| diffs.iter().map(|v| d.bilinear(u, v))).collect()).unwrap();
            let Some(inv) = gram.inverse() else { continue };
            let rhs: QVec = diffs.iter().map(|u| -d.bilinear(u, p0)).collect();
            let t = inv.apply(&rhs);
            let x = diffs.iter().zip(t.iter()).fold(p0.clone(), |acc, (u, ti)| acc.add(&u.scale(ti)));
            let t0 = Rational::one() - t.iter().cloned().sum::<Rational>();
            (x, std::iter::once(t0).chain(t.iter().cloned()).collect())
        };
        if coeffs.iter().any(Rational::is_negative) {
            continue;
        }
        let xx = d.bilinear(&x, &x);
        if points.iter().all(|p| d.bilinear(&x, p) >= xx) {
            best = Some(x);
            break;
        }
    }
    best.expect("some face carries the optimum")
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..200 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=7);
        let points: Vec<QVec> = (0..k).map(|_| random_vec(&mut rng, n, 5)).collect();
        let d = random_pd(&mut rng, n);
        let wolfe = min_norm_point_wolfe(&points, &d).map_err(|e| format!("case {case}: {e}"))?;
        let faces = min_norm_point_exhaustive(&points, &d).map_err(|e| format!("case {case}: {e}"))?;
        let oracle = oracle_min_norm(&points, &d);
        check(wolfe == oracle && faces == oracle, || format!("case {case}: wolfe {wolfe}, faces {faces}, oracle {oracle}"))?;
        check(is_min_norm_certificate(&wolfe, &points, &d), || format!("case {case}: variational inequality fails"))?;
    }
    Ok("200 instances".into())
}

fn criterion_9() -> Outcome {
    let suite = action_suite();
    let mut patterns = 0;
    for (name, act) in &suite {
        let map = stratify_supports(act).map_err(|e| format!("{name}: {e}"))?;
        let n = act.len();
        let expected: BTreeSet<SupportPattern> = (1u64..1 << n).map(|m| SupportPattern::from_mask(m).unwrap()).collect();
        let got: BTreeSet<SupportPattern> = map.keys().cloned().collect();
        check(got == expected && map.len() == (1 << n) - 1, || format!("{name}: patterns do not partition"))?;
        let norm = act.norm();
        for (s, ds) in &map {
            for (t, dt) in &map {
                if t.indices().iter().all(|i| s.contains(*i)) {
                    check(norm.dual_norm_sq(&dt.beta) >= norm.dual_norm_sq(&ds.beta), || {
                        format!("{name}: {:?} ⊆ {:?} but the norm drops", t.indices(), s.indices())
                    })?;
                }
            }
        }
        patterns += map.len();
    }
    let ppm = &suite.iter().find(|(n, _)| *n == "T1 {1,1,-1}").unwrap().1;
    let map = stratify_supports(ppm).unwrap();
    for (s, d) in &map {
        let expected = match (s.contains(2), s.len()) {
            (true, 1) => -1,
            (true, _) => 0,
            (false, _) => 1,
        };
        check(d.beta == ints(&[expected]), || format!("{{1,1,-1}} pattern {:?} labelled {}", s.indices(), d.beta))?;
    }
    Ok(format!("{} actions, {patterns} patterns", suite.len()))
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    for (name, act) in action_suite() {
        for s in candidate_betas(&act).map_err(|e| e.to_string())? {
            let ok = verify_recursion(&act, &s).map_err(|e| format!("{name}: {e}"))?;
            check(ok, || format!("{name}: recursion fails at β = {}", s.beta))?;
            count += 1;
        }
    }
    Ok(format!("{count} candidate strata"))
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let corpus = corpus();
    for case in 0..100 {
        let (name, g) = &corpus[rng.gen_range(0..corpus.len())];
        let lambda = if case % 2 == 0 {
            random_vec(&mut rng, g.rank(), 3)
        } else {
            // λ on a wall, so its stabilizer is nontrivial
            let w = weyl_group(g).unwrap();
            let v = random_vec(&mut rng, g.rank(), 3);
            let u = &w.elements()[rng.gen_range(0..w.order())];
            v.add(&u.apply(&v))
        };
        let norm = invariant_norm(g, &random_pd(&mut rng, g.rank())).unwrap();
        let vee = lambda_vee(g, &lambda, &norm).unwrap();
        for w in weyl_group(g).unwrap().elements() {
            if w.apply(&lambda) == lambda {
                let dual = w.inverse().unwrap().transpose();
                check(dual.apply(&vee) == vee, || format!("{name}: λ∨ of {lambda} moved by the stabilizer"))?;
            }
        }
    }
    let mut strata = 0;
    for (name, act) in action_suite() {
        for s in candidate_betas(&act).unwrap() {
            let vee = lambda_vee(act.group(), &s.lambda_beta, act.norm()).unwrap();
            check(vee == s.beta, || format!("{name}: β∨ = {vee} differs from β = {}", s.beta))?;
            let dual = s.parabolic.levi_weyl.contragredient();
            check(dual.elements().iter().all(|w| w.apply(&s.beta) == s.beta), || format!("{name}: β moved by the Levi"))?;
            strata += 1;
        }
    }
    Ok(format!("100 random triples, {strata} strata with β∨ = β"))
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 11] = [
        ("block sum adaptedness sweep", criterion_1, Some(Duration::from_secs(1))),
        ("torus normalizer invariants and adaptedness", criterion_2, Some(Duration::from_secs(1))),
        ("central cocharacters vs averaging", criterion_3, Some(Duration::from_secs(5))),
        ("trace-form kernel", criterion_4, None),
        ("filtration weight cross-path", criterion_5, None),
        ("triple-agreement semistability", criterion_6, Some(Duration::from_secs(30))),
        ("destabilizing witness", criterion_7, None),
        ("min-norm point oracle equivalence", criterion_8, None),
        ("stratification partition and monotonicity", criterion_9, Some(Duration::from_secs(10))),
        ("centre recursion", criterion_10, None),
        ("lambda-vee well-definedness", criterion_11, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > *l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
