use serde::{Deserialize, Serialize};

use super::{QMat, QVec, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by its canonical RREF basis so that
/// equality of subspaces is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct QSubspace {
    ambient_dim: usize,
    basis: QMat,
}

impl QSubspace {
    pub fn zero(ambient_dim: usize) -> Self {
        QSubspace { ambient_dim, basis: QMat::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        QSubspace { ambient_dim, basis: QMat::identity(ambient_dim) }
    }

    pub fn span(vectors: &[QVec], ambient_dim: usize) -> Result<Self> {
        let m = QMat::from_rows(vectors, ambient_dim)?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &QMat) -> Self {
        let (r, piv) = m.rref();
        let rows: Vec<QVec> = (0..piv.len()).map(|i| r.row(i)).collect();
        QSubspace {
            ambient_dim: m.cols(),
            basis: QMat::from_rows(&rows, m.cols()).expect("rows of equal length"),
        }
    }

    /// `{v : m·v = 0}`.
    pub fn kernel_of(m: &QMat) -> Self {
        let n = m.cols();
        let (r, piv) = m.rref();
        let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
        let vectors: Vec<QVec> = free
            .iter()
            .map(|&f| {
                let mut v = QVec::zeros(n).into_entries();
                v[f] = Rational::one();
                for (i, &p) in piv.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                QVec::new(v)
            })
            .collect();
        Self::span(&vectors, n).expect("kernel vectors have ambient dimension")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical basis (rows of the RREF).
    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<QVec> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &QVec) -> bool {
        if v.dim() != self.ambient_dim {
            return false;
        }
        let mut rows = self.basis_vectors();
        rows.push(v.clone());
        QMat::from_rows(&rows, self.ambient_dim).expect("same dimension").rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &QSubspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// Vectors orthogonal (under the dot product) to every vector in this subspace.
    pub fn annihilator(&self) -> QSubspace {
        QSubspace::kernel_of(&self.basis)
    }

    pub fn intersection(&self, other: &QSubspace) -> Result<QSubspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::dim("intersection of subspaces of different ambient spaces"));
        }
        let mut rows = self.annihilator().basis_vectors();
        rows.extend(other.annihilator().basis_vectors());
        Ok(QSubspace::kernel_of(&QMat::from_rows(&rows, self.ambient_dim)?))
    }
}

impl std::fmt::Debug for QSubspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "span{:?} in Q^{}", self.basis_vectors(), self.ambient_dim)
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Vec<QVec>,
}

impl From<QSubspace> for SubspaceRepr {
    fn from(s: QSubspace) -> Self {
        SubspaceRepr { ambient_dim: s.ambient_dim, basis: s.basis_vectors() }
    }
}

impl TryFrom<SubspaceRepr> for QSubspace {
    type Error = Error;
    fn try_from(r: SubspaceRepr) -> Result<Self> {
        QSubspace::span(&r.basis, r.ambient_dim)
    }
}
