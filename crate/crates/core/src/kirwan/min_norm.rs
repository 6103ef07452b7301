//! Exact nearest point to the origin of a convex hull under a rational
//! inner product.

use crate::error::{Error, Result};
use crate::exact_linalg::{solve_linear, QMat, QVec, Rational};

/// Largest point count for which `min_norm_point` uses face enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 12;

const WOLFE_ITERATION_CAP: usize = 100_000;

fn validate(points: &[QVec], dual_gram: &QMat) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::dim("minimum-norm point of an empty set"));
    };
    let n = first.dim();
    if points.iter().any(|p| p.dim() != n) {
        return Err(Error::dim("points of different lengths"));
    }
    if !dual_gram.is_square() || dual_gram.rows() != n {
        return Err(Error::dim(format!(
            "inner product of shape {}x{} for points of length {n}",
            dual_gram.rows(),
            dual_gram.cols()
        )));
    }
    if !dual_gram.is_symmetric() || !dual_gram.is_positive_definite() {
        return Err(Error::NotPositiveDefinite("dual Gram matrix".into()));
    }
    Ok(n)
}

fn distinct(points: &[QVec]) -> Vec<QVec> {
    let mut out = points.to_vec();
    out.sort();
    out.dedup();
    out
}

/// Nearest point of `conv(points)` to the origin in the inner product
/// `dual_gram`. Enumerates faces for up to `EXHAUSTIVE_LIMIT` distinct
/// points and runs the exact active-set method beyond.
pub fn min_norm_point(points: &[QVec], dual_gram: &QMat) -> Result<QVec> {
    validate(points, dual_gram)?;
    if distinct(points).len() <= EXHAUSTIVE_LIMIT {
        min_norm_point_exhaustive(points, dual_gram)
    } else {
        min_norm_point_wolfe(points, dual_gram)
    }
}

/// Minimizes the norm over the affine hull of `pts`, returning the point and
/// its affine coefficients. `None` when `pts` is affinely dependent.
fn affine_projection(pts: &[&QVec], dual_gram: &QMat) -> Result<Option<(QVec, Vec<Rational>)>> {
    let k = pts.len();
    let mut data = Vec::with_capacity((k + 1) * (k + 1));
    for p in pts {
        for q in pts {
            data.push(dual_gram.bilinear(p, q));
        }
        data.push(Rational::one());
    }
    data.extend(std::iter::repeat_n(Rational::one(), k));
    data.push(Rational::zero());
    let kkt = QMat::new(k + 1, k + 1, data)?;
    let mut rhs = vec![Rational::zero(); k];
    rhs.push(Rational::one());
    let Some(sol) = solve_linear(&kkt, &QVec::new(rhs))? else {
        return Ok(None);
    };
    if sol.kernel.dim() > 0 {
        return Ok(None);
    }
    let mu: Vec<Rational> = sol.particular.entries()[..k].to_vec();
    let n = pts[0].dim();
    let x = pts.iter().zip(&mu).fold(QVec::zeros(n), |acc, (p, m)| acc.add(&p.scale(m)));
    Ok(Some((x, mu)))
}

/// Face enumeration: the optimum is the affine projection onto some
/// affinely independent subset whose affine coefficients are all
/// nonnegative. Cost grows as `2^k` in the number of distinct points.
pub fn min_norm_point_exhaustive(points: &[QVec], dual_gram: &QMat) -> Result<QVec> {
    let n = validate(points, dual_gram)?;
    let pts = distinct(points);
    if pts.len() >= usize::BITS as usize {
        return Err(Error::cap("face enumeration", usize::BITS as usize - 1));
    }
    let mut best: Option<(Rational, QVec)> = None;
    for mask in 1usize..(1 << pts.len()) {
        if mask.count_ones() as usize > n + 1 {
            continue;
        }
        let subset: Vec<&QVec> = pts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p).collect();
        let Some((x, mu)) = affine_projection(&subset, dual_gram)? else {
            continue;
        };
        if mu.iter().any(Rational::is_negative) {
            continue;
        }
        let norm = dual_gram.bilinear(&x, &x);
        if best.as_ref().is_none_or(|(b, _)| norm < *b) {
            best = Some((norm, x));
        }
    }
    Ok(best.expect("singletons are always feasible").1)
}

/// Wolfe's active-set method in exact arithmetic.
pub fn min_norm_point_wolfe(points: &[QVec], dual_gram: &QMat) -> Result<QVec> {
    validate(points, dual_gram)?;
    let pts = distinct(points);
    let ip = |u: &QVec, v: &QVec| dual_gram.bilinear(u, v);
    let start = (0..pts.len()).min_by(|&i, &j| ip(&pts[i], &pts[i]).cmp(&ip(&pts[j], &pts[j])).then(i.cmp(&j))).expect("nonempty");
    let mut corral = vec![start];
    let mut weights = vec![Rational::one()];
    let mut x = pts[start].clone();
    for _ in 0..WOLFE_ITERATION_CAP {
        let xx = ip(&x, &x);
        let (j, xj) = pts
            .iter()
            .enumerate()
            .map(|(j, p)| (j, ip(&x, p)))
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("nonempty");
        if xj >= xx || corral.contains(&j) {
            return Ok(x);
        }
        corral.push(j);
        weights.push(Rational::zero());
        loop {
            let subset: Vec<&QVec> = corral.iter().map(|&i| &pts[i]).collect();
            let (y, alpha) = affine_projection(&subset, dual_gram)?
                .ok_or_else(|| Error::InvariantBroken("active set became affinely dependent".into()))?;
            if alpha.iter().all(|a| !a.is_negative()) {
                x = y;
                weights = alpha;
                let keep: Vec<bool> = weights.iter().map(|w| !w.is_zero()).collect();
                retain_by(&mut corral, &keep);
                retain_by(&mut weights, &keep);
                break;
            }
            let theta = weights
                .iter()
                .zip(&alpha)
                .filter(|(_, a)| a.is_negative())
                .map(|(w, a)| w / &(w - a))
                .min()
                .expect("some coefficient is negative");
            let one_minus = Rational::one() - &theta;
            weights = weights.iter().zip(&alpha).map(|(w, a)| &theta * a + &one_minus * w).collect();
            let keep: Vec<bool> = weights.iter().map(|w| !w.is_zero()).collect();
            retain_by(&mut corral, &keep);
            retain_by(&mut weights, &keep);
            x = corral.iter().zip(&weights).fold(QVec::zeros(x.dim()), |acc, (&i, w)| acc.add(&pts[i].scale(w)));
        }
    }
    Err(Error::cap("active-set iterations", WOLFE_ITERATION_CAP))
}

fn retain_by<T>(v: &mut Vec<T>, keep: &[bool]) {
    let mut it = keep.iter();
    v.retain(|_| *it.next().expect("same length"));
}

/// Checks the variational inequality `⟨x, p − x⟩ ≥ 0` for every `p`, which
/// certifies that `x` (assumed in the hull) is the global optimum.
pub fn is_min_norm_certificate(x: &QVec, points: &[QVec], dual_gram: &QMat) -> bool {
    let xx = dual_gram.bilinear(x, x);
    points.iter().all(|p| dual_gram.bilinear(x, p) >= xx)
}
