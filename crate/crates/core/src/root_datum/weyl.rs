use serde::Serialize;

use super::{ComponentAction, GroupData, RootDatum};
use crate::error::{Error, Result};
use crate::exact_linalg::{
    average_operator, fixed_subspace, group_closure, MatrixGroup, QMat, QSubspace, QVec, Rational,
};

fn closure_cached(cache: &std::sync::OnceLock<Result<MatrixGroup>>, f: impl FnOnce() -> Result<MatrixGroup>) -> Result<MatrixGroup> {
    cache.get_or_init(f).clone()
}

/// `W = N_G(T)/Z_G(T)` acting on `Y`: generated by the root reflections
/// and the component-group matrices.
pub fn weyl_group(g: &GroupData) -> Result<MatrixGroup> {
    closure_cached(g.weyl_cache(), || {
        let mut gens = g.datum().reflections();
        let id = QMat::identity(g.rank());
        let comps = g.components();
        for a in 0..comps.order() {
            let m = comps.matrix(a);
            if *m != id && !gens.contains(m) {
                gens.push(m.clone());
            }
        }
        group_closure(&gens, g.rank(), g.closure_cap())
    })
}

/// The Weyl group of the neutral component: reflections only.
pub fn connected_weyl_group(g: &GroupData) -> Result<MatrixGroup> {
    closure_cached(g.connected_weyl_cache(), || {
        group_closure(&g.datum().reflections(), g.rank(), g.closure_cap())
    })
}

/// Rational characters of `G`, realized as the `W`-fixed subspace of `X_Q`.
pub fn rational_characters(g: &GroupData) -> Result<QSubspace> {
    Ok(fixed_subspace(&weyl_group(g)?.contragredient()))
}

/// Central rational cocharacters, realized as the `W`-fixed subspace of `Y_Q`.
pub fn central_cocharacters(g: &GroupData) -> Result<QSubspace> {
    Ok(fixed_subspace(&weyl_group(g)?))
}

/// `{λ ∈ Y_Q : ⟨λ, α⟩ = 0 for every root α}`.
pub fn root_kernel(datum: &RootDatum) -> QSubspace {
    if datum.roots().is_empty() {
        return QSubspace::full(datum.rank());
    }
    QSubspace::kernel_of(&QMat::from_rows(datum.roots(), datum.rank()).expect("roots have rank length"))
}

/// Gram matrix of the trace pairing `(λ, τ) = Σ_α ⟨λ, α⟩⟨τ, α⟩`.
pub fn trace_form(g: &GroupData) -> QMat {
    let r = g.rank();
    let mut data = vec![Rational::zero(); r * r];
    for a in g.datum().roots() {
        for i in 0..r {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..r {
                data[i * r + j] += &(&a[i] * &a[j]);
            }
        }
    }
    QMat::new(r, r, data).expect("square")
}

/// `tr(λ) = Σ_α ⟨λ, α⟩ α ∈ X_Q`.
pub fn tr_g(g: &GroupData, lambda: &QVec) -> Result<QVec> {
    if lambda.dim() != g.rank() {
        return Err(Error::dim(format!("cocharacter of length {} for rank {}", lambda.dim(), g.rank())));
    }
    let mut out = QVec::zeros(g.rank());
    for a in g.datum().roots() {
        let p = lambda.dot(a);
        if !p.is_zero() {
            out = out.add(&a.scale(&p));
        }
    }
    Ok(out)
}

/// Root data of `P_G(λ)` and `L_G(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicData {
    pub lambda: QVec,
    /// Indices of roots with `⟨λ, α⟩ ≥ 0`.
    pub parabolic_roots: Vec<usize>,
    /// Indices of roots with `⟨λ, α⟩ = 0`.
    pub levi_roots: Vec<usize>,
    /// `Stab_W(λ)`.
    #[serde(skip)]
    pub levi_weyl: MatrixGroup,
}

pub fn parabolic(g: &GroupData, lambda: &QVec) -> Result<ParabolicData> {
    if lambda.dim() != g.rank() {
        return Err(Error::dim(format!("cocharacter of length {} for rank {}", lambda.dim(), g.rank())));
    }
    let mut parabolic_roots = Vec::new();
    let mut levi_roots = Vec::new();
    for (i, a) in g.datum().roots().iter().enumerate() {
        let p = lambda.dot(a);
        if !p.is_negative() {
            parabolic_roots.push(i);
        }
        if p.is_zero() {
            levi_roots.push(i);
        }
    }
    let levi_weyl = weyl_group(g)?.filter(|w| w.apply(lambda) == *lambda);
    Ok(ParabolicData { lambda: lambda.clone(), parabolic_roots, levi_roots, levi_weyl })
}

/// A `W`-invariant positive definite Gram matrix on `Y_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantNorm {
    gram: QMat,
    dual: QMat,
}

impl InvariantNorm {
    /// Accepts `gram` after checking positive definiteness and `W`-invariance.
    pub fn new(g: &GroupData, gram: QMat) -> Result<Self> {
        if gram.rows() != g.rank() || !gram.is_square() {
            return Err(Error::dim(format!("norm of shape {}x{} for rank {}", gram.rows(), gram.cols(), g.rank())));
        }
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite("norm Gram matrix".into()));
        }
        for w in weyl_group(g)?.elements() {
            if w.transpose().mul(&gram).mul(w) != gram {
                return Err(Error::InvariantBroken("norm is not Weyl-invariant".into()));
            }
        }
        Ok(Self::from_gram_unchecked(gram))
    }

    fn from_gram_unchecked(gram: QMat) -> Self {
        let dual = gram.inverse().expect("positive definite matrices are invertible");
        InvariantNorm { gram, dual }
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    /// The induced inner product on `X_Q`: the inverse Gram matrix.
    pub fn dual_gram(&self) -> &QMat {
        &self.dual
    }

    /// `‖λ‖² = λᵀ B λ`.
    pub fn norm_sq(&self, lambda: &QVec) -> Rational {
        self.gram.bilinear(lambda, lambda)
    }

    /// `‖χ‖² = χᵀ B⁻¹ χ` for characters.
    pub fn dual_norm_sq(&self, chi: &QVec) -> Rational {
        self.dual.bilinear(chi, chi)
    }
}

/// Averages `seed` over the Weyl group: `(1/|W|) Σ wᵀ·seed·w`.
pub fn invariant_norm(g: &GroupData, seed: &QMat) -> Result<InvariantNorm> {
    if seed.rows() != g.rank() || !seed.is_square() {
        return Err(Error::dim(format!("seed of shape {}x{} for rank {}", seed.rows(), seed.cols(), g.rank())));
    }
    if !seed.is_positive_definite() {
        return Err(Error::SeedNotPD);
    }
    let w = weyl_group(g)?;
    let r = g.rank();
    let sum = w.elements().iter().fold(QMat::zeros(r, r), |acc, m| acc.add(&m.transpose().mul(seed).mul(m)));
    Ok(InvariantNorm::from_gram_unchecked(sum.scale(&Rational::new(1, w.order() as i64))))
}

/// The character `λ^∨ = B·λ ∈ X_Q` with `⟨η, λ^∨⟩ = (η, λ)` for all `η`.
pub fn lambda_vee(g: &GroupData, lambda: &QVec, norm: &InvariantNorm) -> Result<QVec> {
    if lambda.dim() != g.rank() {
        return Err(Error::dim(format!("cocharacter of length {} for rank {}", lambda.dim(), g.rank())));
    }
    Ok(norm.gram.apply(lambda))
}

/// Projection onto central cocharacters (the `W`-averaging operator on `Y_Q`).
pub fn central_projection(g: &GroupData) -> Result<QMat> {
    Ok(average_operator(&weyl_group(g)?))
}

/// Applies simple reflections until `λ` pairs nonnegatively with every base
/// root. Returns the dominant translate and the element `w ∈ W°` with `w·λ` dominant.
pub fn dominant_translate(datum: &RootDatum, lambda: &QVec) -> (QVec, QMat) {
    let mut mu = lambda.clone();
    let mut w = QMat::identity(datum.rank());
    while let Some(&i) = datum.base().iter().find(|&&i| mu.dot(&datum.roots()[i]).is_negative()) {
        let s = datum.reflection(i);
        mu = s.apply(&mu);
        w = s.mul(&w);
    }
    (mu, w)
}

/// Fundamental coweights relative to the base: `⟨ω_i^∨, α_j⟩ = δ_ij`, lying
/// in the span of the coroots, scaled to primitive integer vectors.
pub fn fundamental_coweights(datum: &RootDatum) -> Vec<QVec> {
    let base = datum.base();
    let k = base.len();
    if k == 0 {
        return Vec::new();
    }
    let mut cartan = vec![Rational::zero(); k * k];
    for (i, &bi) in base.iter().enumerate() {
        for (j, &bj) in base.iter().enumerate() {
            cartan[i * k + j] = datum.coroots()[bi].dot(&datum.roots()[bj]);
        }
    }
    let inv = QMat::new(k, k, cartan).expect("square").inverse().expect("Cartan matrix is invertible");
    (0..k)
        .map(|i| {
            let mut v = QVec::zeros(datum.rank());
            for (kk, &bk) in base.iter().enumerate() {
                v = v.add(&datum.coroots()[bk].scale(inv.get(i, kk)));
            }
            v.primitive_integral()
        })
        .collect()
}

/// The Levi subgroup `L_G(λ)` as a group presentation: roots pairing to zero
/// with `λ`, and the component elements that stabilize `λ` (after moving `λ`
/// to its dominant translate), conjugated back to act on `λ`'s torus.
pub fn levi_group(g: &GroupData, lambda: &QVec) -> Result<GroupData> {
    if lambda.dim() != g.rank() {
        return Err(Error::dim(format!("cocharacter of length {} for rank {}", lambda.dim(), g.rank())));
    }
    let datum = g.datum();
    let (mu, w) = dominant_translate(datum, lambda);
    let w_inv = w.inverse().expect("Weyl elements are invertible");
    // w acts on Y; roots move by (w⁻¹)ᵀ, so w⁻¹ moves roots by wᵀ
    let back_x = w.transpose();

    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut base = Vec::new();
    for (i, (a, c)) in datum.roots().iter().zip(datum.coroots()).enumerate() {
        // roots of L_μ, transported to roots of L_λ
        if mu.dot(a).is_zero() {
            if datum.base().contains(&i) {
                base.push(roots.len());
            }
            roots.push(back_x.apply(a));
            coroots.push(w_inv.apply(c));
        }
    }
    let levi = RootDatum::new(g.rank(), roots, coroots, base)?;

    let comps = g.components();
    let stab: Vec<usize> = (0..comps.order()).filter(|&a| comps.matrix(a).apply(&mu) == mu).collect();
    let action: ComponentAction = comps.restricted(&stab, |m| w_inv.mul(m).mul(&w))?;
    GroupData::new(levi, action)
}
