//! Semistability of principal bundles presented by degree data: bundles
//! induced from the maximal torus (split) and from a Levi subgroup.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::change_of_group::{is_adapted, HomData, RationalDegree};
use crate::error::{Error, Result};
use crate::exact_linalg::{QVec, Rational};
use crate::root_datum::{fundamental_coweights, levi_group, root_kernel, trace_form, weyl_group, GroupData, InvariantNorm};

/// A `G`-bundle induced from `T` by line bundles of degrees `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBundle {
    group: GroupData,
    delta: QVec,
}

impl SplitBundle {
    pub fn new(group: &GroupData, delta: QVec) -> Result<Self> {
        if delta.dim() != group.rank() {
            return Err(Error::dim(format!("degree vector of length {} for rank {}", delta.dim(), group.rank())));
        }
        Ok(SplitBundle { group: group.clone(), delta })
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn delta(&self) -> &QVec {
        &self.delta
    }
}

/// Degrees of the line-bundle summands of the adjoint bundle, sorted: one
/// `⟨δ, α⟩` per root and `rank` zeros for the Cartan part.
pub fn adjoint_degrees(b: &SplitBundle) -> Vec<Rational> {
    let mut out: Vec<Rational> = b.group.datum().roots().iter().map(|a| b.delta.dot(a)).collect();
    out.extend(std::iter::repeat_n(Rational::zero(), b.group.rank()));
    out.sort();
    out
}

/// Semistable iff `δ` pairs to zero with every root.
pub fn split_semistable(b: &SplitBundle) -> bool {
    b.group.datum().roots().iter().all(|a| b.delta.dot(a).is_zero())
}

/// The adjoint bundle is a sum of line bundles of total degree zero, so it
/// is semistable iff every summand has degree zero.
pub fn adjoint_semistable(b: &SplitBundle) -> bool {
    adjoint_degrees(b).iter().all(Rational::is_zero)
}

/// Cone generators for the brute-force check: the `W`-orbit of the
/// fundamental coweights plus `±` a basis of the root kernel.
pub fn dominance_test_set(g: &GroupData) -> Result<Vec<QVec>> {
    let w = weyl_group(g)?;
    let mut gens = fundamental_coweights(g.datum());
    for v in root_kernel(g.datum()).basis_vectors() {
        gens.push(v.neg());
        gens.push(v);
    }
    let mut out: Vec<QVec> = gens.iter().flat_map(|v| w.elements().iter().map(move |m| m.apply(v))).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The largest `(λ, w·δ)` over Weyl translates `w·δ` and test cocharacters `λ`.
pub fn max_parabolic_weight(b: &SplitBundle) -> Result<Rational> {
    let a = trace_form(&b.group);
    let tests = dominance_test_set(&b.group)?;
    let mut best: Option<Rational> = None;
    for w in weyl_group(&b.group)?.elements() {
        let translate = a.apply(&w.apply(&b.delta));
        for lam in &tests {
            let v = lam.dot(&translate);
            if best.as_ref().is_none_or(|m| v > *m) {
                best = Some(v);
            }
        }
    }
    Ok(best.unwrap_or_else(Rational::zero))
}

/// Parabolic-reduction criterion restricted to Weyl-translate reductions:
/// semistable iff `(λ, w·δ) ≤ 0` for every `w` and every test `λ`.
pub fn split_semistable_bruteforce(b: &SplitBundle) -> Result<bool> {
    Ok(!max_parabolic_weight(b)?.is_positive())
}

/// Runs all three semistability tests and fails loudly if they disagree.
pub fn split_semistable_checked(b: &SplitBundle) -> Result<bool> {
    let closed = split_semistable(b);
    let brute = split_semistable_bruteforce(b)?;
    let adjoint = adjoint_semistable(b);
    if closed != brute || closed != adjoint {
        return Err(Error::InvariantBroken(format!(
            "semistability tests disagree for δ = {}: closed form {closed}, parabolic {brute}, adjoint {adjoint}",
            b.delta
        )));
    }
    Ok(closed)
}

/// `λᵀ A d` with `A` the trace-form Gram matrix.
pub fn filtration_weight(g: &GroupData, lambda: &QVec, d: &QVec) -> Result<Rational> {
    if lambda.dim() != g.rank() || d.dim() != g.rank() {
        return Err(Error::dim(format!(
            "filtration weight of vectors of length {} and {} for rank {}",
            lambda.dim(),
            d.dim(),
            g.rank()
        )));
    }
    Ok(trace_form(g).bilinear(lambda, d))
}

/// `Σ_n n · deg(g_n)`, grading the adjoint bundle by `λ`-weight.
pub fn filtration_weight_decomposed(b: &SplitBundle, lambda: &QVec) -> Result<Rational> {
    if lambda.dim() != b.group.rank() {
        return Err(Error::dim(format!("cocharacter of length {} for rank {}", lambda.dim(), b.group.rank())));
    }
    let mut graded: BTreeMap<Rational, Rational> = BTreeMap::new();
    for a in b.group.datum().roots() {
        *graded.entry(lambda.dot(a)).or_insert_with(Rational::zero) += b.delta.dot(a);
    }
    Ok(graded.into_iter().map(|(n, deg)| n * deg).sum())
}

/// The optimal destabilizing cocharacter among split reductions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Destabilizer {
    pub lambda_star: QVec,
    /// The Weyl translate `w*·δ` that `λ*` destabilizes.
    pub translate: QVec,
    /// `‖λ*‖²`, which equals `(λ*, w*·δ)`.
    pub m_squared: Rational,
}

/// `None` iff semistable. Otherwise `λ* = B⁻¹·A·(w*·δ)`, normalized so that
/// `(λ*, w*·δ) = ‖λ*‖²`; ties between Weyl translates go to the
/// lexicographically greatest `λ*`.
pub fn canonical_destabilizer(b: &SplitBundle, norm: &InvariantNorm) -> Result<Option<Destabilizer>> {
    if norm.gram().rows() != b.group.rank() {
        return Err(Error::dim("norm and bundle ranks differ"));
    }
    if split_semistable(b) {
        return Ok(None);
    }
    let a = trace_form(&b.group);
    let mut best: Option<Destabilizer> = None;
    for w in weyl_group(&b.group)?.elements() {
        let translate = w.apply(&b.delta);
        let lambda_star = norm.dual_gram().apply(&a.apply(&translate));
        let m_squared = norm.norm_sq(&lambda_star);
        let better = match &best {
            None => true,
            Some(cur) => m_squared > cur.m_squared || (m_squared == cur.m_squared && lambda_star > cur.lambda_star),
        };
        if better {
            best = Some(Destabilizer { lambda_star, translate, m_squared });
        }
    }
    Ok(best)
}

/// A `G`-bundle induced from an `L_G(λ)`-bundle of known degree.
#[derive(Clone, Debug)]
pub struct LeviInducedBundle {
    group: GroupData,
    levi_cochar: QVec,
    inner: RationalDegree,
    inner_semistable: Option<bool>,
}

impl LeviInducedBundle {
    /// `inner_subgroup` uses the component labels of `G` that survive in
    /// the Levi. Fails with `InvariantBroken` when `d` is not a degree of
    /// the Levi.
    pub fn new<S: AsRef<str>>(
        group: &GroupData,
        levi_cochar: QVec,
        inner_subgroup: &[S],
        d: QVec,
        inner_semistable: Option<bool>,
    ) -> Result<Self> {
        let levi = levi_group(group, &levi_cochar)?;
        let inner = RationalDegree::from_labels(&levi, inner_subgroup, d).map_err(|e| match e {
            Error::InvariantBroken(m) => Error::InvariantBroken(format!("inner degree is not a Levi degree: {m}")),
            other => other,
        })?;
        Ok(LeviInducedBundle { group: group.clone(), levi_cochar, inner, inner_semistable })
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn levi_cochar(&self) -> &QVec {
        &self.levi_cochar
    }

    pub fn inner(&self) -> &RationalDegree {
        &self.inner
    }
}

/// Semistable iff the inner bundle is semistable and its degree is adapted
/// to the Levi inclusion. Without an explicit flag the inner bundle is
/// taken to be the split bundle of that degree.
pub fn levi_induced_semistable(b: &LeviInducedBundle) -> Result<bool> {
    let inclusion = HomData::levi_inclusion(&b.group, &b.levi_cochar)?;
    let inner_ss = match b.inner_semistable {
        Some(flag) => flag,
        None => split_semistable(&SplitBundle::new(inclusion.source(), b.inner.d().clone())?),
    };
    Ok(inner_ss && is_adapted(&inclusion, &b.inner)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::QMat;
    use crate::groups;
    use crate::root_datum::invariant_norm;

    fn split(g: &GroupData, d: &[i64]) -> SplitBundle {
        SplitBundle::new(g, QVec::from_ints(d)).unwrap()
    }

    #[test]
    fn adjoint_degree_examples() {
        let t = groups::torus(2);
        assert!(adjoint_degrees(&split(&t, &[3, -1])).iter().all(Rational::is_zero));
        let g = groups::gl(2);
        let degs = adjoint_degrees(&split(&g, &[1, 0]));
        assert_eq!(degs, vec![Rational::from(-1), Rational::zero(), Rational::zero(), Rational::one()]);
        assert!(adjoint_degrees(&split(&g, &[2, 2])).iter().all(Rational::is_zero));
    }

    #[test]
    fn split_examples() {
        let g = groups::gl(2);
        assert!(split_semistable(&split(&g, &[4, 4])));
        assert!(!split_semistable(&split(&g, &[1, 0])));
        assert!(split_semistable(&split(&groups::torus(3), &[1, 2, 3])));
        assert!(!adjoint_semistable(&split(&g, &[1, 0])));
        assert!(adjoint_semistable(&split(&groups::gl(3), &[2, 2, 2])));
    }

    #[test]
    fn bruteforce_examples() {
        let g = groups::gl(2);
        assert_eq!(max_parabolic_weight(&split(&g, &[1, 0])).unwrap(), Rational::from(4));
        assert!(!split_semistable_bruteforce(&split(&g, &[1, 0])).unwrap());
        assert!(split_semistable_bruteforce(&split(&g, &[5, 5])).unwrap());
        let g3 = groups::gl(3);
        assert!(split_semistable_bruteforce(&split(&g3, &[1, 1, 1])).unwrap());
        assert!(!split_semistable_bruteforce(&split(&g3, &[2, 1, 0])).unwrap());
    }

    #[test]
    fn filtration_examples() {
        let g = groups::gl(2);
        let w = filtration_weight(&g, &QVec::from_ints(&[1, 0]), &QVec::from_ints(&[5, 2])).unwrap();
        assert_eq!(w, Rational::from(6));
        assert_eq!(filtration_weight(&g, &QVec::from_ints(&[2, -2]), &QVec::from_ints(&[1, 0])).unwrap(), Rational::from(8));
        assert!(filtration_weight(&g, &QVec::from_ints(&[1, 0]), &QVec::from_ints(&[3, 3])).unwrap().is_zero());
        assert!(filtration_weight(&g, &QVec::from_ints(&[1]), &QVec::from_ints(&[3, 3])).is_err());
        assert_eq!(filtration_weight_decomposed(&split(&g, &[1, 0]), &QVec::from_ints(&[1, 0])).unwrap(), Rational::from(2));
        assert!(filtration_weight_decomposed(&split(&groups::torus(2), &[1, 0]), &QVec::from_ints(&[1, 0])).unwrap().is_zero());
    }

    #[test]
    fn destabilizer_examples() {
        let g = groups::gl(2);
        let b = invariant_norm(&g, &QMat::identity(2)).unwrap();
        assert!(canonical_destabilizer(&split(&g, &[3, 3]), &b).unwrap().is_none());
        let d = canonical_destabilizer(&split(&g, &[1, 0]), &b).unwrap().unwrap();
        assert_eq!(d.lambda_star, QVec::from_ints(&[2, -2]));
        assert_eq!(d.m_squared, Rational::from(8));
        let d = canonical_destabilizer(&split(&g, &[0, 1]), &b).unwrap().unwrap();
        assert_eq!(d.lambda_star, QVec::from_ints(&[2, -2]));
        assert_eq!(d.translate, QVec::from_ints(&[1, 0]));
        assert_eq!(filtration_weight(&g, &d.lambda_star, &d.translate).unwrap(), d.m_squared);
    }

    #[test]
    fn levi_examples() {
        let g5 = groups::gl(5);
        let lam = QVec::from_ints(&[1, 1, 0, 0, 0]);
        let slope = |a: i64, b: i64| {
            let (x, y) = (Rational::new(a, 2), Rational::new(b, 3));
            QVec::new(vec![x.clone(), x, y.clone(), y.clone(), y])
        };
        let ok = LeviInducedBundle::new(&g5, lam.clone(), &["1"], slope(2, 3), Some(true)).unwrap();
        assert!(levi_induced_semistable(&ok).unwrap());
        let bad = LeviInducedBundle::new(&g5, lam.clone(), &["1"], slope(1, 1), Some(true)).unwrap();
        assert!(!levi_induced_semistable(&bad).unwrap());
        let unstable_inner = LeviInducedBundle::new(&g5, lam.clone(), &["1"], slope(2, 3), Some(false)).unwrap();
        assert!(!levi_induced_semistable(&unstable_inner).unwrap());
        let not_levi_degree = LeviInducedBundle::new(&g5, lam, &["1"], QVec::from_ints(&[1, 0, 0, 0, 0]), None);
        assert!(matches!(not_levi_degree, Err(Error::InvariantBroken(_))));
    }

    #[test]
    fn levi_torus_reduces_to_split() {
        let g = groups::gl(3);
        let generic = QVec::from_ints(&[3, 1, -2]);
        for d in [[1, 1, 1], [2, 1, 0], [0, 0, 5]] {
            let b = LeviInducedBundle::new(&g, generic.clone(), &["1"], QVec::from_ints(&d), None).unwrap();
            assert_eq!(levi_induced_semistable(&b).unwrap(), split_semistable(&split(&g, &d)));
        }
    }
}
