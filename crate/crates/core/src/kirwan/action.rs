use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{lp, MatrixGroup, QSubspace, QVec, Rational};
use crate::root_datum::{weyl_group, GroupData, InvariantNorm};

use super::min_norm::min_norm_point;

/// A linearized projective representation: `G` acts on `P(V)` through the
/// weights `χᵢ` of a torus basis, twisted by the character `χ₀`.
#[derive(Clone, Debug)]
pub struct LinearizedAction {
    group: GroupData,
    weights: Vec<QVec>,
    shift: QVec,
    norm: InvariantNorm,
    weyl_dual: MatrixGroup,
    /// `perms[a][i]`: index of the weight `a·χᵢ`.
    perms: Vec<Vec<usize>>,
}

impl LinearizedAction {
    pub fn new(group: &GroupData, weights: Vec<QVec>, shift: QVec, norm: InvariantNorm) -> Result<Self> {
        let r = group.rank();
        if let Some(w) = weights.iter().find(|w| w.dim() != r) {
            return Err(Error::dim(format!("weight {w} for rank {r}")));
        }
        if shift.dim() != r {
            return Err(Error::dim(format!("shift of length {} for rank {r}", shift.dim())));
        }
        if norm.gram().rows() != r {
            return Err(Error::dim(format!("norm of size {} for rank {r}", norm.gram().rows())));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_integral()) {
            return Err(Error::InvalidAction(format!("weight {w} is not integral")));
        }
        let weyl = weyl_group(group)?;
        let gram = norm.gram();
        if weyl.elements().iter().any(|w| w.transpose().mul(gram).mul(w) != *gram) {
            return Err(Error::InvalidAction("norm is not Weyl-invariant".into()));
        }
        let weyl_dual = weyl.contragredient();
        let mut sorted = weights.clone();
        sorted.sort();
        for w in weyl_dual.generators() {
            if w.apply(&shift) != shift {
                return Err(Error::InvalidAction(format!("shift {shift} is not Weyl-fixed")));
            }
            let mut image: Vec<QVec> = weights.iter().map(|x| w.apply(x)).collect();
            image.sort();
            if image != sorted {
                return Err(Error::InvalidAction("Weyl group does not permute the weight multiset".into()));
            }
        }
        let comps = group.components();
        let perms = (0..comps.order()).map(|a| weight_permutation(&weights, &comps.dual_matrix(a))).collect();
        Ok(LinearizedAction { group: group.clone(), weights, shift, norm, weyl_dual, perms })
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn weights(&self) -> &[QVec] {
        &self.weights
    }

    pub fn shift(&self) -> &QVec {
        &self.shift
    }

    pub fn norm(&self) -> &InvariantNorm {
        &self.norm
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `χᵢ − χ₀`.
    pub fn shifted_weight(&self, i: usize) -> QVec {
        self.weights[i].sub(&self.shift)
    }

    /// The index permutation induced by component element `a`.
    pub fn weight_permutation(&self, a: usize) -> &[usize] {
        &self.perms[a]
    }

    /// `a·S`.
    pub fn translate(&self, a: usize, s: &SupportPattern) -> SupportPattern {
        SupportPattern::from_sorted_unchecked(s.0.iter().map(|&i| self.perms[a][i]).collect())
    }

    /// The lexicographically greatest element of `β`'s orbit under the
    /// contragredient Weyl action.
    pub fn canonical_label(&self, beta: &QVec) -> QVec {
        self.weyl_dual.elements().iter().map(|w| w.apply(beta)).max().expect("Weyl group contains the identity")
    }

    pub(crate) fn check_pattern(&self, s: &SupportPattern) -> Result<()> {
        match s.0.last() {
            Some(&i) if i >= self.len() => Err(Error::InvalidAction(format!("support index {i} out of range for {} weights", self.len()))),
            _ => Ok(()),
        }
    }

    pub(crate) fn shifted_points(&self, s: &SupportPattern) -> Vec<QVec> {
        s.0.iter().map(|&i| self.shifted_weight(i)).collect()
    }

    pub(crate) fn require_torus(&self) -> Result<()> {
        if self.group.datum().has_roots() {
            Err(Error::NonAbelianIdentityComponent)
        } else {
            Ok(())
        }
    }

    fn translates(&self, s: &SupportPattern) -> Vec<Vec<QVec>> {
        (0..self.perms.len()).map(|a| self.shifted_points(&self.translate(a, s))).collect()
    }
}

/// Matches the `k`-th occurrence of each weight to the `k`-th occurrence of its image.
fn weight_permutation(weights: &[QVec], dual: &crate::exact_linalg::QMat) -> Vec<usize> {
    let mut used = vec![false; weights.len()];
    weights
        .iter()
        .map(|w| {
            let image = dual.apply(w);
            let j = (0..weights.len()).find(|&j| !used[j] && weights[j] == image).expect("weights are permuted");
            used[j] = true;
            j
        })
        .collect()
}

/// The set of nonzero coordinates of a point of `P(V)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SupportPattern(Vec<usize>);

impl SupportPattern {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::InvalidAction("support pattern must be nonempty".into()));
        }
        Ok(SupportPattern(v))
    }

    /// The pattern of the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Result<Self> {
        Self::new((0..64).filter(|i| mask >> i & 1 == 1))
    }

    fn from_sorted_unchecked(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        SupportPattern(v)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

impl TryFrom<Vec<usize>> for SupportPattern {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        SupportPattern::new(v)
    }
}

impl From<SupportPattern> for Vec<usize> {
    fn from(s: SupportPattern) -> Self {
        s.0
    }
}

/// `m(x, λ) = min_{i∈S} ⟨λ, χᵢ⟩ − ⟨λ, χ₀⟩`.
pub fn hm_weight(act: &LinearizedAction, s: &SupportPattern, lambda: &QVec) -> Result<Rational> {
    act.check_pattern(s)?;
    if lambda.dim() != act.group.rank() {
        return Err(Error::dim(format!("cocharacter of length {} for rank {}", lambda.dim(), act.group.rank())));
    }
    let least = s.0.iter().map(|&i| lambda.dot(&act.weights[i])).min().expect("nonempty");
    Ok(least - lambda.dot(&act.shift))
}

/// `0 ∈ conv{χᵢ − χ₀ : i ∈ a·S}` for every component element `a`.
pub fn is_semistable(act: &LinearizedAction, s: &SupportPattern) -> Result<bool> {
    act.require_torus()?;
    act.check_pattern(s)?;
    let r = act.group.rank();
    Ok(act.translates(s).iter().all(|p| lp::origin_in_hull(p, r)))
}

/// The origin lies in the relative interior of every translate hull.
pub fn is_polystable(act: &LinearizedAction, s: &SupportPattern) -> Result<bool> {
    act.require_torus()?;
    act.check_pattern(s)?;
    let r = act.group.rank();
    Ok(act.translates(s).iter().all(|p| lp::origin_in_relative_interior(p, r)))
}

/// Polystable with full-dimensional hulls.
pub fn is_stable(act: &LinearizedAction, s: &SupportPattern) -> Result<bool> {
    act.require_torus()?;
    act.check_pattern(s)?;
    let r = act.group.rank();
    for p in act.translates(s) {
        if QSubspace::span(&p, r)?.dim() != r || !lp::origin_in_relative_interior(&p, r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `β` of maximal dual norm among the component translates of `S`, before canonicalization.
pub(crate) fn raw_label(act: &LinearizedAction, s: &SupportPattern) -> Result<QVec> {
    let dual = act.norm.dual_gram();
    let mut best: Option<(Rational, QVec)> = None;
    for p in act.translates(s) {
        let beta = min_norm_point(&p, dual)?;
        let n = act.norm.dual_norm_sq(&beta);
        if best.as_ref().is_none_or(|(m, _)| n > *m) {
            best = Some((n, beta));
        }
    }
    Ok(best.expect("component group is nonempty").1)
}
