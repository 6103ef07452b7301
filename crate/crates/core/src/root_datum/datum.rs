use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exact_linalg::{solve_linear, MatrixGroup, QMat, QVec, DEFAULT_CLOSURE_CAP};

/// Roots in `X = Z^r` and coroots in `Y = Z^r`, index-paired, with the
/// pairing `⟨λ, χ⟩ = λ · χ` and a declared base of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<QVec>,
    coroots: Vec<QVec>,
    base: Vec<usize>,
}

impl RootDatum {
    /// The maximal torus of rank `rank`: no roots.
    pub fn torus(rank: usize) -> Self {
        RootDatum { rank, roots: Vec::new(), coroots: Vec::new(), base: Vec::new() }
    }

    pub fn new(rank: usize, roots: Vec<QVec>, coroots: Vec<QVec>, base: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        if roots.len() != coroots.len() {
            return bad(format!("{} roots but {} coroots", roots.len(), coroots.len()));
        }
        for (i, (a, c)) in roots.iter().zip(&coroots).enumerate() {
            if a.dim() != rank || c.dim() != rank {
                return bad(format!("root {i} or its coroot does not have length {rank}"));
            }
            if !a.is_integral() || !c.is_integral() {
                return bad(format!("root {i} or its coroot is not integral"));
            }
            if a.is_zero() {
                return bad(format!("root {i} is zero"));
            }
            if c.dot(a) != 2.into() {
                return bad(format!("pairing of root {i} with its coroot is {}, expected 2", c.dot(a)));
            }
        }
        let index: HashMap<&QVec, usize> = roots.iter().enumerate().map(|(i, a)| (a, i)).collect();
        if index.len() != roots.len() {
            return bad("duplicate roots".into());
        }
        for (i, a) in roots.iter().enumerate() {
            match index.get(&a.neg()) {
                Some(&j) if coroots[j] == coroots[i].neg() => {}
                Some(_) => return bad(format!("coroot of -root {i} is not the negated coroot")),
                None => return bad(format!("root set is not symmetric: -root {i} missing")),
            }
        }
        let datum = RootDatum { rank, roots, coroots, base };
        for i in 0..datum.roots.len() {
            let s = datum.reflection(i);
            let sc = s.transpose();
            if datum.permutation_image(&s, &sc).is_none() {
                return bad(format!("reflection in root {i} does not permute the (co)roots"));
            }
        }
        datum.validate_base()?;
        Ok(datum)
    }

    fn validate_base(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        if self.roots.is_empty() {
            if !self.base.is_empty() {
                return bad("base given for a datum without roots".into());
            }
            return Ok(());
        }
        for &i in &self.base {
            if i >= self.roots.len() {
                return bad(format!("base index {i} out of range"));
            }
        }
        let simple: Vec<QVec> = self.base.iter().map(|&i| self.roots[i].clone()).collect();
        let cols = QMat::from_cols(&simple, self.rank)?;
        if cols.rank() != simple.len() {
            return bad("base roots are linearly dependent".into());
        }
        for (i, a) in self.roots.iter().enumerate() {
            let Some(sol) = solve_linear(&cols, a)? else {
                return bad(format!("root {i} is not in the span of the base"));
            };
            let c = &sol.particular;
            if !c.is_integral() {
                return bad(format!("root {i} is not an integer combination of the base"));
            }
            let nonneg = c.iter().all(|x| !x.is_negative());
            let nonpos = c.iter().all(|x| !x.is_positive());
            if !nonneg && !nonpos {
                return bad(format!("root {i} has mixed-sign coordinates {c} in the base"));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[QVec] {
        &self.roots
    }

    pub fn coroots(&self) -> &[QVec] {
        &self.coroots
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn has_roots(&self) -> bool {
        !self.roots.is_empty()
    }

    pub fn root_index(&self, root: &QVec) -> Option<usize> {
        self.roots.iter().position(|a| a == root)
    }

    /// Is root `i` a nonnegative combination of the base?
    pub fn is_positive(&self, i: usize) -> bool {
        let simple: Vec<QVec> = self.base.iter().map(|&j| self.roots[j].clone()).collect();
        let cols = QMat::from_cols(&simple, self.rank).expect("base has rank length");
        let sol = solve_linear(&cols, &self.roots[i]).expect("shapes agree").expect("validated base");
        sol.particular.iter().all(|x| !x.is_negative())
    }

    /// `s_α` acting on `Y`: `λ ↦ λ − ⟨λ, α⟩ α^∨`. Its transpose is the action on `X`.
    pub fn reflection(&self, i: usize) -> QMat {
        let (a, c) = (&self.roots[i], &self.coroots[i]);
        let mut m = QMat::identity(self.rank);
        let mut data = m.entries().to_vec();
        for r in 0..self.rank {
            for s in 0..self.rank {
                data[r * self.rank + s] -= &(&c[r] * &a[s]);
            }
        }
        m = QMat::new(self.rank, self.rank, data).expect("square");
        m
    }

    /// Distinct reflections, one per pair `±α`, in root order.
    pub fn reflections(&self) -> Vec<QMat> {
        let mut out: Vec<QMat> = Vec::new();
        for i in 0..self.roots.len() {
            let s = self.reflection(i);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// When `y_map` (on `Y`) sends coroots to coroots and `x_map` (on `X`)
    /// sends the paired roots to the paired roots, the induced permutation
    /// of root indices.
    pub(crate) fn permutation_image(&self, y_map: &QMat, x_map: &QMat) -> Option<Vec<usize>> {
        let mut perm = Vec::with_capacity(self.roots.len());
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            let ia = self.root_index(&x_map.apply(a))?;
            if self.coroots[ia] != y_map.apply(c) {
                return None;
            }
            perm.push(ia);
        }
        Some(perm)
    }
}

/// A finite group given by a multiplication table, acting on `Y` by
/// unimodular matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentAction {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    matrices: Vec<QMat>,
    identity: usize,
}

impl ComponentAction {
    pub fn trivial(rank: usize) -> Self {
        ComponentAction {
            labels: vec!["1".into()],
            table: vec![vec![0]],
            matrices: vec![QMat::identity(rank)],
            identity: 0,
        }
    }

    /// Validates the table as a group and the matrices as a homomorphism.
    /// Lattice compatibility with a root datum is checked by [`GroupData::new`].
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, matrices: Vec<QMat>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidComponentAction(m));
        let n = labels.len();
        if n == 0 {
            return bad("component group has no elements".into());
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return bad(format!("duplicate label {l:?}"));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return bad(format!("multiplication table is not {n}x{n}"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return bad("multiplication table entry out of range".into());
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("multiplication table has no identity element".into());
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
            if !(0..n).any(|b| table[a][b] == identity) {
                return bad(format!("element {} has no inverse", labels[a]));
            }
        }
        if matrices.len() != n {
            return bad(format!("{} action matrices for {n} elements", matrices.len()));
        }
        let dim = matrices[0].rows();
        for (l, m) in labels.iter().zip(&matrices) {
            if !m.is_square() || m.rows() != dim {
                return bad(format!("action matrix of {l} has the wrong shape"));
            }
            if !m.is_integral() {
                return bad(format!("action matrix of {l} is not integral"));
            }
            let det = m.det()?;
            if det.abs() != 1.into() {
                return bad(format!("action matrix of {l} is not unimodular (det {det})"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if matrices[a].mul(&matrices[b]) != matrices[table[a][b]] {
                    return bad(format!(
                        "action is not a homomorphism: M({})·M({}) ≠ M({})",
                        labels[a], labels[b], labels[table[a][b]]
                    ));
                }
            }
        }
        Ok(ComponentAction { labels, table, matrices, identity })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("validated group")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Action of `a` on `Y`.
    pub fn matrix(&self, a: usize) -> &QMat {
        &self.matrices[a]
    }

    /// Action of `a` on `X`: the inverse transpose.
    pub fn dual_matrix(&self, a: usize) -> QMat {
        self.matrices[self.inverse(a)].transpose()
    }

    pub fn rank(&self) -> usize {
        self.matrices[0].rows()
    }

    /// Does the index set contain the identity and close under products and inverses?
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        if elems.iter().any(|&a| a >= self.order()) || !elems.contains(&self.identity) {
            return false;
        }
        elems.iter().all(|&a| elems.contains(&self.inverse(a)) && elems.iter().all(|&b| elems.contains(&self.mul(a, b))))
    }

    /// Resolves labels to a validated, sorted subgroup.
    pub fn subgroup_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut idx = Vec::new();
        for l in labels {
            let l = l.as_ref();
            let i = self.index_of(l).ok_or_else(|| Error::NotASubgroup(format!("unknown label {l:?}")))?;
            if !idx.contains(&i) {
                idx.push(i);
            }
        }
        idx.sort_unstable();
        if !self.is_subgroup(&idx) {
            return Err(Error::NotASubgroup(format!("{:?} is not closed or misses the identity", labels.iter().map(|l| l.as_ref()).collect::<Vec<_>>())));
        }
        Ok(idx)
    }

    pub(crate) fn restricted(&self, elems: &[usize], conjugate: impl Fn(&QMat) -> QMat) -> Result<ComponentAction> {
        let pos = |a: usize| elems.iter().position(|&x| x == a).expect("subgroup is closed");
        let labels = elems.iter().map(|&a| self.labels[a].clone()).collect();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        let matrices = elems.iter().map(|&a| conjugate(&self.matrices[a])).collect();
        ComponentAction::new(labels, table, matrices)
    }
}

/// A possibly disconnected reductive group presented by the root datum of
/// its neutral component and the action of its component group on `Y`.
#[derive(Clone)]
pub struct GroupData {
    datum: RootDatum,
    components: ComponentAction,
    closure_cap: usize,
    weyl: Arc<OnceLock<Result<MatrixGroup>>>,
    connected_weyl: Arc<OnceLock<Result<MatrixGroup>>>,
}

impl PartialEq for GroupData {
    fn eq(&self, other: &Self) -> bool {
        self.datum == other.datum && self.components == other.components
    }
}

impl Eq for GroupData {}

impl std::fmt::Debug for GroupData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupData")
            .field("datum", &self.datum)
            .field("components", &self.components)
            .finish()
    }
}

impl GroupData {
    pub fn connected(datum: RootDatum) -> Self {
        let rank = datum.rank();
        Self::assemble(datum, ComponentAction::trivial(rank))
    }

    /// Checks that each component matrix permutes the coroots, permutes the
    /// roots contragrediently with matching pairs, and preserves the base.
    pub fn new(datum: RootDatum, components: ComponentAction) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidComponentAction(m));
        if components.rank() != datum.rank() {
            return bad(format!(
                "action matrices act on rank {} but the datum has rank {}",
                components.rank(),
                datum.rank()
            ));
        }
        for a in 0..components.order() {
            let m = components.matrix(a);
            let dual = components.dual_matrix(a);
            let label = components.label(a);
            let Some(perm) = datum.permutation_image(m, &dual) else {
                return bad(format!("action of {label} does not permute the roots and coroots compatibly"));
            };
            let mut image: Vec<usize> = datum.base().iter().map(|&i| perm[i]).collect();
            image.sort_unstable();
            let mut base = datum.base().to_vec();
            base.sort_unstable();
            if image != base {
                return bad(format!("action of {label} does not preserve the declared base (not pinning-preserving)"));
            }
        }
        Ok(Self::assemble(datum, components))
    }

    fn assemble(datum: RootDatum, components: ComponentAction) -> Self {
        GroupData {
            datum,
            components,
            closure_cap: DEFAULT_CLOSURE_CAP,
            weyl: Arc::new(OnceLock::new()),
            connected_weyl: Arc::new(OnceLock::new()),
        }
    }

    /// Same group with a different closure cap (drops cached Weyl groups).
    pub fn with_closure_cap(&self, cap: usize) -> Self {
        let mut g = Self::assemble(self.datum.clone(), self.components.clone());
        g.closure_cap = cap;
        g
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn components(&self) -> &ComponentAction {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn closure_cap(&self) -> usize {
        self.closure_cap
    }

    pub(crate) fn weyl_cache(&self) -> &OnceLock<Result<MatrixGroup>> {
        &self.weyl
    }

    pub(crate) fn connected_weyl_cache(&self) -> &OnceLock<Result<MatrixGroup>> {
        &self.connected_weyl
    }

    /// The neutral component is a torus exactly when there are no roots.
    pub fn is_torus_component(&self) -> bool {
        !self.datum.has_roots()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    #[test]
    fn gl2_validates() {
        let g = groups::gl(2);
        assert_eq!(g.datum().roots().len(), 2);
        assert!(g.datum().is_positive(g.datum().base()[0]));
    }

    #[test]
    fn rejects_bad_pairing() {
        let r = RootDatum::new(
            2,
            vec![QVec::from_ints(&[1, -1]), QVec::from_ints(&[-1, 1])],
            vec![QVec::from_ints(&[1, 0]), QVec::from_ints(&[-1, 0])],
            vec![0],
        );
        assert!(matches!(r, Err(Error::InvalidDatum(m)) if m.contains("pairing")));
    }

    #[test]
    fn rejects_asymmetric_roots() {
        let r = RootDatum::new(1, vec![QVec::from_ints(&[2])], vec![QVec::from_ints(&[1])], vec![0]);
        assert!(matches!(r, Err(Error::InvalidDatum(m)) if m.contains("symmetric")));
    }

    #[test]
    fn rejects_bad_base() {
        let r = RootDatum::new(
            2,
            vec![QVec::from_ints(&[1, -1]), QVec::from_ints(&[-1, 1])],
            vec![QVec::from_ints(&[1, -1]), QVec::from_ints(&[-1, 1])],
            vec![0, 1],
        );
        assert!(matches!(r, Err(Error::InvalidDatum(m)) if m.contains("dependent")));
    }

    #[test]
    fn component_table_checks() {
        let swap = QMat::from_int_rows(&[&[0, 1], &[1, 0]]);
        let id = QMat::identity(2);
        assert!(ComponentAction::new(vec!["e".into(), "s".into()], vec![vec![0, 1], vec![1, 0]], vec![id.clone(), swap.clone()]).is_ok());
        let not_hom = ComponentAction::new(vec!["e".into(), "s".into()], vec![vec![0, 1], vec![1, 0]], vec![id.clone(), QMat::from_int_rows(&[&[0, 1], &[1, 1]])]);
        assert!(not_hom.is_err());
        let no_identity = ComponentAction::new(vec!["a".into(), "b".into()], vec![vec![1, 0], vec![1, 0]], vec![id.clone(), swap]);
        assert!(no_identity.is_err());
    }

    #[test]
    fn non_pinning_action_rejected() {
        // the Weyl reflection of GL2 permutes roots but swaps the base root with its negative
        let swap = QMat::from_int_rows(&[&[0, 1], &[1, 0]]);
        let comps = ComponentAction::new(vec!["e".into(), "s".into()], vec![vec![0, 1], vec![1, 0]], vec![QMat::identity(2), swap]).unwrap();
        let err = GroupData::new(groups::gl(2).datum().clone(), comps).unwrap_err();
        assert!(err.to_string().contains("pinning"));
    }

    #[test]
    fn subgroups() {
        let g = groups::torus_normalizer(2);
        let c = g.components();
        assert!(c.subgroup_from_labels(&["1"]).is_ok());
        assert!(c.subgroup_from_labels(&["1", "s"]).is_ok());
        assert!(matches!(c.subgroup_from_labels(&["s"]), Err(Error::NotASubgroup(_))));
        assert!(c.subgroup_from_labels(&["x"]).is_err());
    }
}
