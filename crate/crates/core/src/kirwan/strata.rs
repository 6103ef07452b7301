use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{QVec, Rational};
use crate::root_datum::{levi_group, parabolic, InvariantNorm, ParabolicData};

use super::action::{is_semistable, raw_label, LinearizedAction, SupportPattern};
use super::min_norm::min_norm_point;

pub const DEFAULT_CANDIDATE_CAP: usize = 1 << 20;
pub const DEFAULT_PATTERN_CAP: usize = 1 << 16;

/// A Kirwan stratum indexed by the instability label `β ∈ X_Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumData {
    pub beta: QVec,
    /// `B⁻¹β`.
    pub lambda_beta: QVec,
    /// `(β, β)` in the dual norm, i.e. `M²`.
    pub level: Rational,
    pub centre_indices: Vec<usize>,
    pub attractor_indices: Vec<usize>,
    pub parabolic: ParabolicData,
    /// `χ₀ + β`.
    pub shifted_shift: QVec,
}

/// Builds the stratum data of a label.
pub fn stratum_for(act: &LinearizedAction, beta: &QVec) -> Result<StratumData> {
    let r = act.group().rank();
    if beta.dim() != r {
        return Err(Error::dim(format!("label of length {} for rank {r}", beta.dim())));
    }
    let lambda_beta = act.norm().dual_gram().apply(beta);
    let level = act.norm().dual_norm_sq(beta);
    let mut centre_indices = Vec::new();
    let mut attractor_indices = Vec::new();
    for i in 0..act.len() {
        let p = lambda_beta.dot(&act.shifted_weight(i));
        if p >= level {
            attractor_indices.push(i);
            if p == level {
                centre_indices.push(i);
            }
        }
    }
    Ok(StratumData {
        beta: beta.clone(),
        parabolic: parabolic(act.group(), &lambda_beta)?,
        lambda_beta,
        level,
        centre_indices,
        attractor_indices,
        shifted_shift: act.shift().add(beta),
    })
}

/// The stratum containing points of support `S`; `β = 0` iff semistable.
pub fn instability(act: &LinearizedAction, s: &SupportPattern) -> Result<StratumData> {
    act.require_torus()?;
    act.check_pattern(s)?;
    let beta = act.canonical_label(&raw_label(act, s)?);
    stratum_for(act, &beta)
}

fn subset_count(n: usize, cap: usize, what: &str) -> Result<u64> {
    if n >= 63 || (1u64 << n) - 1 > cap as u64 {
        return Err(Error::cap(what, cap));
    }
    Ok(1u64 << n)
}

fn label_order(norm: &InvariantNorm) -> impl Fn(&QVec, &QVec) -> std::cmp::Ordering + '_ {
    move |a, b| norm.dual_norm_sq(b).cmp(&norm.dual_norm_sq(a)).then_with(|| a.cmp(b))
}

fn candidate_labels(act: &LinearizedAction, cap: usize) -> Result<Vec<QVec>> {
    let mut pts: Vec<QVec> = (0..act.len()).map(|i| act.shifted_weight(i)).collect();
    pts.sort();
    pts.dedup();
    let end = subset_count(pts.len(), cap, "candidate subsets")?;
    let dual = act.norm().dual_gram();
    let mut labels = BTreeSet::new();
    labels.insert(QVec::zeros(act.group().rank()));
    for mask in 1..end {
        let subset: Vec<QVec> = pts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
        labels.insert(act.canonical_label(&min_norm_point(&subset, dual)?));
    }
    let mut out: Vec<QVec> = labels.into_iter().collect();
    out.sort_by(label_order(act.norm()));
    Ok(out)
}

/// Labels of all subsets of the shifted weights up to the Weyl action, plus
/// `β = 0`, ordered by dual norm descending then lexicographically.
pub fn candidate_betas(act: &LinearizedAction) -> Result<Vec<StratumData>> {
    candidate_betas_capped(act, DEFAULT_CANDIDATE_CAP)
}

pub fn candidate_betas_capped(act: &LinearizedAction, cap: usize) -> Result<Vec<StratumData>> {
    candidate_labels(act, cap)?.iter().map(|b| stratum_for(act, b)).collect()
}

/// Labels every nonempty support pattern and checks that each label is a
/// candidate and that removing a coordinate never lowers the norm.
pub fn stratify_supports(act: &LinearizedAction) -> Result<BTreeMap<SupportPattern, StratumData>> {
    stratify_supports_capped(act, DEFAULT_PATTERN_CAP, DEFAULT_CANDIDATE_CAP)
}

pub fn stratify_supports_capped(
    act: &LinearizedAction,
    pattern_cap: usize,
    candidate_cap: usize,
) -> Result<BTreeMap<SupportPattern, StratumData>> {
    act.require_torus()?;
    let end = subset_count(act.len(), pattern_cap, "support patterns")?;
    let candidates: BTreeSet<QVec> = candidate_labels(act, candidate_cap)?.into_iter().collect();
    let mut norms = vec![Rational::zero(); end as usize];
    let mut strata: BTreeMap<QVec, StratumData> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for mask in 1..end {
        let s = SupportPattern::from_mask(mask)?;
        let beta = act.canonical_label(&raw_label(act, &s)?);
        if !candidates.contains(&beta) {
            return Err(Error::InvariantBroken(format!("label {beta} of {:?} is not a candidate", s.indices())));
        }
        norms[mask as usize] = act.norm().dual_norm_sq(&beta);
        for i in 0..act.len() {
            let sub = mask & !(1 << i);
            if sub != mask && sub != 0 && norms[sub as usize] < norms[mask as usize] {
                return Err(Error::InvariantBroken(format!(
                    "closure monotonicity fails: removing {i} from {:?} lowers the norm",
                    s.indices()
                )));
            }
        }
        let data = match strata.get(&beta) {
            Some(d) => d.clone(),
            None => {
                let d = stratum_for(act, &beta)?;
                strata.insert(beta, d.clone());
                d
            }
        };
        out.insert(s, data);
    }
    Ok(out)
}

/// The action of `L_β` on the centre coordinates with the shifted
/// linearization `χ₀ + β`.
pub fn centre_action(act: &LinearizedAction, s: &StratumData) -> Result<LinearizedAction> {
    let levi = levi_group(act.group(), &s.lambda_beta)?;
    let weights = s.centre_indices.iter().map(|&i| act.weights()[i].clone()).collect();
    let norm = InvariantNorm::new(&levi, act.norm().gram().clone())?;
    LinearizedAction::new(&levi, weights, s.shifted_shift.clone(), norm)
}

/// For every nonempty `S` inside the centre: `S` is semistable for the
/// centre action iff its ambient label is exactly `β`.
pub fn verify_recursion(act: &LinearizedAction, s: &StratumData) -> Result<bool> {
    verify_recursion_capped(act, s, DEFAULT_PATTERN_CAP)
}

pub fn verify_recursion_capped(act: &LinearizedAction, s: &StratumData, cap: usize) -> Result<bool> {
    act.require_torus()?;
    if s.centre_indices.is_empty() {
        return Ok(true);
    }
    let centre = centre_action(act, s)?;
    let end = subset_count(s.centre_indices.len(), cap, "centre support patterns")?;
    for mask in 1..end {
        let local = SupportPattern::from_mask(mask)?;
        let global = SupportPattern::new(local.indices().iter().map(|&k| s.centre_indices[k]))?;
        let centre_ss = is_semistable(&centre, &local)?;
        let labelled = act.canonical_label(&raw_label(act, &global)?) == s.beta;
        if centre_ss != labelled {
            return Ok(false);
        }
    }
    Ok(true)
}
