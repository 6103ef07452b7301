//! Homomorphisms between group presentations, rational degrees `[F, d]`,
//! their pushforward, adaptedness, and the destabilizing witness for
//! non-adapted degrees.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{average_operator, group_closure, solve_linear, MatrixGroup, QMat, QSubspace, QVec, Rational};
use crate::root_datum::{connected_weyl_group, levi_group, parabolic, trace_form, weyl_group, GroupData, ParabolicData};

/// `W(G^F, T)`: reflections of `G°` together with the action matrices of `F`.
pub fn weyl_of_subgroup(g: &GroupData, subgroup: &[usize]) -> Result<MatrixGroup> {
    let comps = g.components();
    if !comps.is_subgroup(subgroup) {
        return Err(Error::NotASubgroup(format!("{subgroup:?}")));
    }
    if subgroup.len() == comps.order() {
        return weyl_group(g);
    }
    if subgroup.len() == 1 {
        return connected_weyl_group(g);
    }
    let id = QMat::identity(g.rank());
    let mut gens = g.datum().reflections();
    for &a in subgroup {
        let m = comps.matrix(a);
        if *m != id && !gens.contains(m) {
            gens.push(m.clone());
        }
    }
    group_closure(&gens, g.rank(), g.closure_cap())
}

/// Same as [`weyl_of_subgroup`], from labels.
pub fn weyl_of_subgroup_labels<S: AsRef<str>>(g: &GroupData, labels: &[S]) -> Result<MatrixGroup> {
    let f = g.components().subgroup_from_labels(labels)?;
    weyl_of_subgroup(g, &f)
}

/// A representative `(F, d)` of a rational degree: `F ⊂ π₀(G)` a subgroup
/// and `d ∈ Y_Q` fixed by `W(G^F, T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalDegree {
    group: GroupData,
    subgroup: Vec<usize>,
    d: QVec,
}

impl RationalDegree {
    pub fn new(group: &GroupData, subgroup: &[usize], d: QVec) -> Result<Self> {
        if d.dim() != group.rank() {
            return Err(Error::dim(format!("degree of length {} for rank {}", d.dim(), group.rank())));
        }
        let mut f = subgroup.to_vec();
        f.sort_unstable();
        f.dedup();
        let w = weyl_of_subgroup(group, &f)?;
        if let Some(bad) = w.generators().iter().find(|m| m.apply(&d) != d) {
            return Err(Error::InvariantBroken(format!(
                "degree {d} is not fixed by W(G^F): moved to {}",
                bad.apply(&d)
            )));
        }
        Ok(RationalDegree { group: group.clone(), subgroup: f, d })
    }

    pub fn from_labels<S: AsRef<str>>(group: &GroupData, labels: &[S], d: QVec) -> Result<Self> {
        let f = group.components().subgroup_from_labels(labels)?;
        Self::new(group, &f, d)
    }

    /// The degree whose pairing with each given rational character of `G^F`
    /// takes the given value. The characters must form a basis of the
    /// `W(G^F)`-fixed characters.
    pub fn from_character_values(group: &GroupData, subgroup: &[usize], characters: &[QVec], values: &[Rational]) -> Result<Self> {
        if characters.len() != values.len() {
            return Err(Error::dim(format!("{} characters but {} values", characters.len(), values.len())));
        }
        let w = weyl_of_subgroup(group, subgroup)?;
        let fixed_y = crate::exact_linalg::fixed_subspace(&w);
        let fixed_x = crate::exact_linalg::fixed_subspace(&w.contragredient());
        let chars = QSubspace::span(characters, group.rank())?;
        if chars != fixed_x || characters.len() != fixed_x.dim() {
            return Err(Error::InvariantBroken("characters are not a basis of the rational characters of G^F".into()));
        }
        // d = Σ c_k v_k with v_k a basis of the fixed cocharacters; ⟨d, χ_i⟩ = value_i
        let basis = fixed_y.basis_vectors();
        let rows: Vec<QVec> = characters.iter().map(|chi| basis.iter().map(|v| v.dot(chi)).collect()).collect();
        let a = QMat::from_rows(&rows, basis.len())?;
        let sol = solve_linear(&a, &QVec::new(values.to_vec()))?
            .ok_or_else(|| Error::InvariantBroken("character values are inconsistent".into()))?;
        let d = basis.iter().zip(sol.particular.iter()).fold(QVec::zeros(group.rank()), |acc, (v, c)| acc.add(&v.scale(c)));
        Self::new(group, subgroup, d)
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn subgroup_labels(&self) -> Vec<String> {
        self.subgroup.iter().map(|&a| self.group.components().label(a).to_string()).collect()
    }

    pub fn d(&self) -> &QVec {
        &self.d
    }
}

/// Is there `c ∈ π₀(G)` with `c F_a c⁻¹ = F_b` and `c·d_a = d_b`?
pub fn degrees_equivalent(a: &RationalDegree, b: &RationalDegree) -> Result<bool> {
    if a.group != b.group {
        return Err(Error::GroupMismatch("degrees live on different groups".into()));
    }
    let comps = a.group.components();
    for c in 0..comps.order() {
        let ci = comps.inverse(c);
        let mut conj: Vec<usize> = a.subgroup.iter().map(|&f| comps.mul(comps.mul(c, f), ci)).collect();
        conj.sort_unstable();
        if conj == b.subgroup && comps.matrix(c).apply(&a.d) == b.d {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A homomorphism `f: G → H` presented by its map on cocharacter lattices
/// and on component groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomData {
    source: GroupData,
    target: GroupData,
    tau: QMat,
    phi0: Vec<usize>,
}

impl HomData {
    /// Validates `phi0` as a homomorphism and `tau` as intertwining the
    /// component actions up to the target's connected Weyl group:
    /// `tau·M_G(a) = u·M_H(phi0(a))·tau` for some `u ∈ W(H°)`.
    pub fn new(source: &GroupData, target: &GroupData, tau: QMat, phi0: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidHom(m));
        if tau.rows() != target.rank() || tau.cols() != source.rank() {
            return bad(format!(
                "tau is {}x{}, expected {}x{}",
                tau.rows(),
                tau.cols(),
                target.rank(),
                source.rank()
            ));
        }
        if !tau.is_integral() {
            return bad("tau is not integral".into());
        }
        let (cg, ch) = (source.components(), target.components());
        if phi0.len() != cg.order() || phi0.iter().any(|&b| b >= ch.order()) {
            return bad("phi0 must map every source component to a target component".into());
        }
        for a in 0..cg.order() {
            for b in 0..cg.order() {
                if phi0[cg.mul(a, b)] != ch.mul(phi0[a], phi0[b]) {
                    return bad(format!("phi0 is not a homomorphism at ({}, {})", cg.label(a), cg.label(b)));
                }
            }
        }
        let w_h = connected_weyl_group(target)?;
        for a in 0..cg.order() {
            let lhs = tau.mul(cg.matrix(a));
            let rhs = ch.matrix(phi0[a]).mul(&tau);
            if !w_h.elements().iter().any(|u| u.mul(&rhs) == lhs) {
                return bad(format!(
                    "tau does not intertwine the action of {} with that of {}",
                    cg.label(a),
                    ch.label(phi0[a])
                ));
            }
        }
        Ok(HomData { source: source.clone(), target: target.clone(), tau, phi0 })
    }

    pub fn from_labels(source: &GroupData, target: &GroupData, tau: QMat, phi0: &HashMap<String, String>) -> Result<Self> {
        let (cg, ch) = (source.components(), target.components());
        let mut map = Vec::with_capacity(cg.order());
        for a in 0..cg.order() {
            let la = cg.label(a);
            let image = match phi0.get(la) {
                Some(lb) => ch.index_of(lb).ok_or_else(|| Error::InvalidHom(format!("phi0 image {lb:?} is not a target label")))?,
                // omitted entries are only allowed for a trivial target component group
                None if ch.order() == 1 => 0,
                None => return Err(Error::InvalidHom(format!("phi0 has no image for {la:?}"))),
            };
            map.push(image);
        }
        for k in phi0.keys() {
            if cg.index_of(k).is_none() {
                return Err(Error::InvalidHom(format!("phi0 key {k:?} is not a source label")));
            }
        }
        Self::new(source, target, tau, map)
    }

    pub fn identity(g: &GroupData) -> Self {
        HomData {
            source: g.clone(),
            target: g.clone(),
            tau: QMat::identity(g.rank()),
            phi0: (0..g.components().order()).collect(),
        }
    }

    /// The inclusion `L_G(λ) ↪ G` of a Levi subgroup.
    pub fn levi_inclusion(g: &GroupData, lambda: &QVec) -> Result<Self> {
        let l = levi_group(g, lambda)?;
        let cl = l.components();
        let phi0 = (0..cl.order())
            .map(|a| g.components().index_of(cl.label(a)).expect("Levi labels come from G"))
            .collect();
        Self::new(&l, g, QMat::identity(g.rank()), phi0)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &HomData) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::GroupMismatch("homomorphisms are not composable".into()));
        }
        let phi0 = self.phi0.iter().map(|&b| other.phi0[b]).collect();
        Self::new(&self.source, &other.target, other.tau.mul(&self.tau), phi0)
    }

    pub fn source(&self) -> &GroupData {
        &self.source
    }

    pub fn target(&self) -> &GroupData {
        &self.target
    }

    pub fn tau(&self) -> &QMat {
        &self.tau
    }

    pub fn phi0(&self) -> &[usize] {
        &self.phi0
    }

    /// `phi0(F)`, sorted.
    pub fn image_subgroup(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = subgroup.iter().map(|&a| self.phi0[a]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    fn check_source(&self, deg: &RationalDegree) -> Result<()> {
        if deg.group != self.source {
            return Err(Error::GroupMismatch("degree does not live on the source group".into()));
        }
        Ok(())
    }
}

/// The image of a degree under `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushedDegree {
    /// `tau·d`, the image cocharacter before projection.
    pub image: QVec,
    /// `(phi0(F), d')` with `d'` the projection of `tau·d` onto the
    /// cocharacters fixed by `W(H^{F'})`.
    pub degree: RationalDegree,
}

pub fn push_degree(f: &HomData, deg: &RationalDegree) -> Result<PushedDegree> {
    f.check_source(deg)?;
    let image = f.tau.apply(&deg.d);
    let sub = f.image_subgroup(&deg.subgroup);
    let w = weyl_of_subgroup(&f.target, &sub)?;
    let projected = average_operator(&w).apply(&image);
    let degree = RationalDegree::new(&f.target, &sub, projected)
        .map_err(|e| Error::InvariantBroken(format!("pushed degree is not a degree of the target ({e})")))?;
    Ok(PushedDegree { image, degree })
}

fn kills_roots(g: &GroupData, lambda: &QVec) -> bool {
    g.datum().roots().iter().all(|b| lambda.dot(b).is_zero())
}

/// Is `tau·d` central in `H^{phi0(F)}`?
pub fn is_adapted(f: &HomData, deg: &RationalDegree) -> Result<bool> {
    f.check_source(deg)?;
    let image = f.tau.apply(&deg.d);
    let root_kill = kills_roots(&f.target, &image);
    let comps = f.target.components();
    let fixed = f.image_subgroup(&deg.subgroup).iter().all(|&b| comps.matrix(b).apply(&image) == image);
    if root_kill && !fixed {
        return Err(Error::InvariantBroken(
            "image kills every root but is moved by phi0(F); the homomorphism data is inconsistent".into(),
        ));
    }
    Ok(root_kill && fixed)
}

/// Destabilizing data for the pushed bundle: `λ' = tau·d`, the parabolic
/// `P_H(λ')`, and the weight `(λ', λ')_h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lambda_prime: QVec,
    pub parabolic: ParabolicData,
    pub weight: Rational,
}

pub fn destabilizing_witness(f: &HomData, deg: &RationalDegree) -> Result<Witness> {
    f.check_source(deg)?;
    let lambda_prime = f.tau.apply(&deg.d);
    let parabolic = parabolic(&f.target, &lambda_prime)?;
    let weight = trace_form(&f.target).bilinear(&lambda_prime, &lambda_prime);
    Ok(Witness { lambda_prime, parabolic, weight })
}
