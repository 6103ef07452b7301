use std::collections::HashSet;

use serde::Serialize;

use super::{QMat, QSubspace, Rational};
use crate::error::{Error, Result};

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// A finite group of invertible square matrices. Elements are kept sorted
/// lexicographically by entries so that two groups with the same element
/// set compare equal regardless of how they were generated.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MatrixGroup {
    dim: usize,
    elements: Vec<QMat>,
    generators: Vec<QMat>,
}

/// Smallest multiplication-closed set containing `generators` and the identity.
pub fn group_closure(generators: &[QMat], dim: usize, cap: usize) -> Result<MatrixGroup> {
    for g in generators {
        if !g.is_square() || g.rows() != dim {
            return Err(Error::dim(format!(
                "generator of shape {}x{} in a group acting on Q^{dim}",
                g.rows(),
                g.cols()
            )));
        }
        if g.det()?.is_zero() {
            return Err(Error::InvariantBroken("group generator is singular".into()));
        }
    }
    let id = QMat::identity(dim);
    let mut seen: HashSet<QMat> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for s in generators {
                let h = g.mul(s);
                if !seen.contains(&h) {
                    if seen.len() >= cap {
                        return Err(Error::cap("matrix group closure", cap));
                    }
                    seen.insert(h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    let mut elements: Vec<QMat> = seen.into_iter().collect();
    elements.sort();
    let mut gens: Vec<QMat> = Vec::new();
    for g in generators {
        if !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    Ok(MatrixGroup { dim, elements, generators: gens })
}

impl MatrixGroup {
    pub fn trivial(dim: usize) -> Self {
        MatrixGroup { dim, elements: vec![QMat::identity(dim)], generators: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[QMat] {
        &self.elements
    }

    pub fn generators(&self) -> &[QMat] {
        &self.generators
    }

    pub fn contains(&self, m: &QMat) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &MatrixGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// The group acting on the dual space: `g ↦ (g⁻¹)ᵀ`.
    pub fn contragredient(&self) -> MatrixGroup {
        let dual = |g: &QMat| g.inverse().expect("group elements are invertible").transpose();
        let mut elements: Vec<QMat> = self.elements.iter().map(dual).collect();
        elements.sort();
        MatrixGroup { dim: self.dim, elements, generators: self.generators.iter().map(dual).collect() }
    }

    /// Elements satisfying `pred`, as a group; `pred` must cut out a subgroup.
    pub fn filter(&self, pred: impl Fn(&QMat) -> bool) -> MatrixGroup {
        let elements: Vec<QMat> = self.elements.iter().filter(|g| pred(g)).cloned().collect();
        let generators = elements.iter().filter(|g| **g != QMat::identity(self.dim)).cloned().collect();
        MatrixGroup { dim: self.dim, elements, generators }
    }
}

fn fixed_space_of(mats: &[QMat], dim: usize) -> QSubspace {
    let id = QMat::identity(dim);
    let rows: Vec<_> = mats.iter().flat_map(|g| g.sub(&id).row_vecs()).collect();
    if rows.is_empty() {
        return QSubspace::full(dim);
    }
    QSubspace::kernel_of(&QMat::from_rows(&rows, dim).expect("square rows"))
}

/// `{v : g·v = v for all g}`, from the generators.
pub fn fixed_subspace(group: &MatrixGroup) -> QSubspace {
    fixed_space_of(&group.generators, group.dim)
}

/// Same subspace as [`fixed_subspace`], computed from every element.
pub fn fixed_subspace_all_elements(group: &MatrixGroup) -> QSubspace {
    fixed_space_of(&group.elements, group.dim)
}

/// `(1/|G|) Σ g`, the projection onto the fixed subspace.
pub fn average_operator(group: &MatrixGroup) -> QMat {
    let sum = group.elements.iter().fold(QMat::zeros(group.dim, group.dim), |acc, g| acc.add(g));
    sum.scale(&Rational::new(1, group.order() as i64))
}
