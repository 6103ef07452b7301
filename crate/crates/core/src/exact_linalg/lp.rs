//! Exact linear feasibility: does `A x = b, x ≥ 0` have a solution?
//!
//! Phase-one simplex over the rationals with Bland's rule, so it always
//! terminates.

use super::{QMat, QVec, Rational};

/// A nonnegative solution of `A x = b`, if one exists.
pub fn nonnegative_solution(a: &QMat, b: &QVec) -> Option<QVec> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(m, b.dim(), "feasibility system: dimension mismatch");
    let width = n + m + 1;
    // rows 0..m constraints, row m objective (minimize sum of artificials)
    let mut t = vec![vec![Rational::zero(); width]; m + 1];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            let x = a.get(i, j).clone();
            t[i][j] = if flip { -x } else { x };
        }
        t[i][n + i] = Rational::one();
        t[i][width - 1] = if flip { -&b[i] } else { b[i].clone() };
    }
    for j in 0..width {
        if j >= n && j < n + m {
            continue;
        }
        let s: Rational = (0..m).map(|i| &t[i][j]).sum();
        t[m][j] = -s;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase-one objective is bounded below by zero
        let (r, _) = leave.expect("phase-one simplex is bounded");
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }

    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(QVec::new(x))
}

fn pivot(t: &mut [Vec<Rational>], r: usize, c: usize) {
    let inv = t[r][c].recip().expect("pivot entry is positive");
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &(&f * p);
            }
        }
    }
}

/// Is the origin in the convex hull of `points` (all of dimension `dim`)?
pub fn origin_in_hull(points: &[QVec], dim: usize) -> bool {
    !points.is_empty() && hull_weights(points, dim, None).is_some()
}

/// Is the origin in the relative interior of the hull, i.e. a convex
/// combination with every coefficient strictly positive?
pub fn origin_in_relative_interior(points: &[QVec], dim: usize) -> bool {
    !points.is_empty() && (0..points.len()).all(|i| hull_weights(points, dim, Some(i)).is_some())
}

/// Nonnegative `μ` with `Σ μ_j p_j = 0` and either `Σ μ_j = 1` or, when
/// `pinned` is given, `μ_pinned = 1`.
fn hull_weights(points: &[QVec], dim: usize, pinned: Option<usize>) -> Option<QVec> {
    let k = points.len();
    let mut rows: Vec<QVec> = (0..dim).map(|d| points.iter().map(|p| p[d].clone()).collect()).collect();
    let mut rhs = vec![Rational::zero(); dim];
    let last: QVec = match pinned {
        None => (0..k).map(|_| Rational::one()).collect(),
        Some(i) => QVec::unit(k, i),
    };
    rows.push(last);
    rhs.push(Rational::one());
    let a = QMat::from_rows(&rows, k).expect("uniform rows");
    nonnegative_solution(&a, &QVec::new(rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<QVec> {
        v.iter().map(|p| QVec::from_ints(p)).collect()
    }

    #[test]
    fn feasibility() {
        let a = QMat::from_int_rows(&[&[1, 1], &[1, -1]]);
        let x = nonnegative_solution(&a, &QVec::from_ints(&[2, 0])).unwrap();
        assert_eq!(x, QVec::from_ints(&[1, 1]));
        assert!(nonnegative_solution(&a, &QVec::from_ints(&[-1, 0])).is_none());
    }

    #[test]
    fn hull_membership() {
        assert!(origin_in_hull(&pts(&[&[1], &[-1]]), 1));
        assert!(!origin_in_hull(&pts(&[&[1]]), 1));
        assert!(origin_in_hull(&pts(&[&[1, 0], &[0, 1], &[-1, -1]]), 2));
        assert!(!origin_in_hull(&pts(&[&[1, 0], &[0, 1]]), 2));
        assert!(!origin_in_hull(&[], 2));
    }

    #[test]
    fn relative_interior() {
        assert!(origin_in_relative_interior(&pts(&[&[1], &[-1]]), 1));
        assert!(origin_in_relative_interior(&pts(&[&[0]]), 1));
        // origin is a vertex of the segment [0, 1]
        assert!(!origin_in_relative_interior(&pts(&[&[0], &[1]]), 1));
        assert!(origin_in_hull(&pts(&[&[0], &[1]]), 1));
    }
}
