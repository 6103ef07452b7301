//! Ready-made presentations of common reductive groups.

use crate::exact_linalg::{QMat, QVec};
use crate::root_datum::{ComponentAction, GroupData, RootDatum};

fn unit_diff(n: usize, i: usize, j: usize) -> QVec {
    let mut v = vec![0i64; n];
    v[i] = 1;
    v[j] = -1;
    QVec::from_ints(&v)
}

/// `GL_n` with its diagonal torus: roots and coroots `e_i − e_j`.
pub fn gl_datum(n: usize) -> RootDatum {
    let mut roots = Vec::new();
    let mut base = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                if j == i + 1 {
                    base.push(roots.len());
                }
                roots.push(unit_diff(n, i, j));
            }
        }
    }
    RootDatum::new(n, roots.clone(), roots, base).expect("GL_n datum is valid")
}

pub fn gl(n: usize) -> GroupData {
    GroupData::connected(gl_datum(n))
}

/// `SL_n` in the basis of simple coroots for `Y` and fundamental weights for `X`.
pub fn sl(n: usize) -> GroupData {
    let r = n - 1;
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut base = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
            let co: Vec<i64> = (0..r).map(|k| if k >= lo && k < hi { sign } else { 0 }).collect();
            let root: Vec<i64> = (0..r)
                .map(|i| {
                    let d = |x: usize, y: usize| i64::from(x == y);
                    sign * (d(i, lo) - d(i, hi) - d(i + 1, lo) + d(i + 1, hi))
                })
                .collect();
            if b == a + 1 {
                base.push(roots.len());
            }
            roots.push(QVec::from_ints(&root));
            coroots.push(QVec::from_ints(&co));
        }
    }
    GroupData::connected(RootDatum::new(r, roots, coroots, base).expect("SL_n datum is valid"))
}

/// `Sp_4`: roots `±e1±e2, ±2e_i`; coroots `±e1±e2, ±e_i`.
pub fn sp4() -> GroupData {
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        roots.push(QVec::from_ints(&[s, t]));
        coroots.push(QVec::from_ints(&[s, t]));
    }
    for (x, y) in [(2, 0), (-2, 0), (0, 2), (0, -2)] {
        roots.push(QVec::from_ints(&[x, y]));
        coroots.push(QVec::from_ints(&[x / 2, y / 2]));
    }
    // base: e1 - e2 and 2 e2
    GroupData::connected(RootDatum::new(2, roots, coroots, vec![1, 6]).expect("Sp4 datum is valid"))
}

pub fn torus(rank: usize) -> GroupData {
    GroupData::connected(RootDatum::torus(rank))
}

fn permutation_matrix(p: &[usize]) -> QMat {
    let n = p.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (i, &j) in p.iter().enumerate() {
        rows[j][i] = 1;
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    QMat::from_int_rows(&refs)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The component group `S_n` acting on `Z^n` by permuting coordinates.
/// For `n = 2` the labels are `"1"` and `"s"`; otherwise one-line notation.
pub fn symmetric_component_action(n: usize) -> ComponentAction {
    let perms = permutations(n);
    let label = |p: &[usize]| -> String {
        if n == 2 {
            if p == [0, 1] { "1".into() } else { "s".into() }
        } else {
            p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("")
        }
    };
    let labels: Vec<String> = perms.iter().map(|p| label(p)).collect();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..n).map(|i| p[q[i]]).collect() };
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| perms.iter().position(|r| *r == compose(p, q)).unwrap()).collect())
        .collect();
    let matrices = perms.iter().map(|p| permutation_matrix(p)).collect();
    ComponentAction::new(labels, table, matrices).expect("permutation action is a homomorphism")
}

/// Normalizer of the diagonal torus in `GL_n`: neutral component `T`,
/// component group `S_n` permuting coordinates.
pub fn torus_normalizer(n: usize) -> GroupData {
    GroupData::new(RootDatum::torus(n), symmetric_component_action(n)).expect("permutations preserve the torus")
}

/// `GL_n ⋊ Z/2` where the nontrivial component acts by the pinned outer
/// automorphism `λ ↦ −w₀λ`.
pub fn gl_outer(n: usize) -> GroupData {
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[n - 1 - i] = -1;
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let theta = QMat::from_int_rows(&refs);
    let comps = ComponentAction::new(
        vec!["1".into(), "t".into()],
        vec![vec![0, 1], vec![1, 0]],
        vec![QMat::identity(n), theta],
    )
    .expect("outer automorphism is an involution");
    GroupData::new(gl_datum(n), comps).expect("outer automorphism is pinning-preserving")
}

/// `G × H` with block root datum and product component group.
pub fn product(g: &GroupData, h: &GroupData) -> GroupData {
    let (r1, r2) = (g.rank(), h.rank());
    let pad = |v: &QVec, left: bool| -> QVec {
        let mut e = vec![crate::Rational::zero(); r1 + r2];
        let off = if left { 0 } else { r1 };
        for (i, x) in v.iter().enumerate() {
            e[off + i] = x.clone();
        }
        QVec::new(e)
    };
    let (dg, dh) = (g.datum(), h.datum());
    let roots: Vec<QVec> = dg.roots().iter().map(|a| pad(a, true)).chain(dh.roots().iter().map(|a| pad(a, false))).collect();
    let coroots: Vec<QVec> = dg.coroots().iter().map(|a| pad(a, true)).chain(dh.coroots().iter().map(|a| pad(a, false))).collect();
    let base: Vec<usize> = dg.base().iter().copied().chain(dh.base().iter().map(|&i| i + dg.roots().len())).collect();
    let datum = RootDatum::new(r1 + r2, roots, coroots, base).expect("block datum is valid");

    let (cg, ch) = (g.components(), h.components());
    let (ng, nh) = (cg.order(), ch.order());
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    for a in 0..ng {
        for b in 0..nh {
            labels.push(match (ng, nh) {
                (1, _) => ch.label(b).to_string(),
                (_, 1) => cg.label(a).to_string(),
                _ => format!("{}.{}", cg.label(a), ch.label(b)),
            });
            let mut m = QMat::zeros(r1 + r2, r1 + r2).entries().to_vec();
            for i in 0..r1 {
                for j in 0..r1 {
                    m[i * (r1 + r2) + j] = cg.matrix(a).get(i, j).clone();
                }
            }
            for i in 0..r2 {
                for j in 0..r2 {
                    m[(r1 + i) * (r1 + r2) + r1 + j] = ch.matrix(b).get(i, j).clone();
                }
            }
            matrices.push(QMat::new(r1 + r2, r1 + r2, m).expect("square"));
        }
    }
    let table = (0..ng * nh)
        .map(|x| (0..ng * nh).map(|y| cg.mul(x / nh, y / nh) * nh + ch.mul(x % nh, y % nh)).collect())
        .collect();
    let comps = ComponentAction::new(labels, table, matrices).expect("product action");
    GroupData::new(datum, comps).expect("product of valid groups is valid")
}
