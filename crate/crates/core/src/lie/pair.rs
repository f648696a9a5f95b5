use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::MatrixLieAlgebra;
use super::sparse::SparseMat;
use super::involution::InvolutionMap;
use crate::error::{CkfError, Result};
use crate::exact::{q, QMatrix, Rational, Subspace};
use crate::roots::{HalfSignature, Multiplicity, RestrictedRootData, Signature, Unit4};

/// Seeded sampling used wherever a generic element is needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    /// Requests below [`Sampling::MIN_SAMPLES`] are raised to it.
    pub samples: usize,
}

impl Sampling {
    pub const MIN_SAMPLES: usize = 5;

    pub fn effective_samples(&self) -> usize {
        self.samples.max(Self::MIN_SAMPLES)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: Self::MIN_SAMPLES,
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng, s: &Subspace) -> Vec<Rational> {
    let coeffs: Vec<Rational> = (0..s.dim()).map(|_| q(rng.gen_range(-100..=100))).collect();
    s.combine(&coeffs)
}

/// Rank of a compact-type subalgebra: the smallest `dim ker(ad X|_s)` over
/// seeded samples `X ∈ s`.
pub fn rank_of_compact_subalgebra(g: &MatrixLieAlgebra, s: &Subspace, sampling: &Sampling) -> Result<usize> {
    if !g.is_subalgebra(s) {
        return Err(CkfError::NotASubalgebra(format!(
            "{}-dimensional subspace of {} is not bracket-closed",
            s.dim(),
            g.label()
        )));
    }
    if s.is_zero() {
        return Ok(0);
    }
    let mut rng = sampling.rng();
    let mut best = s.dim();
    for _ in 0..sampling.effective_samples() {
        let x = random_element(&mut rng, s);
        let ad = g.ad_on(&x, s).expect("subalgebra is ad-invariant");
        best = best.min(ad.kernel().dim());
    }
    Ok(best)
}

/// `true` iff `tr ad_{g/h}(X) = 0` for every `X ∈ h`, i.e. `g/h` carries an
/// `h`-invariant volume form.
pub fn isotropy_is_unimodular(g: &MatrixLieAlgebra, h: &Subspace) -> bool {
    h.basis().iter().all(|x| {
        let on_g = g.ad(x).trace();
        let on_h = g.ad_on(x, h).map(|m| m.trace());
        on_h.is_some_and(|t| t == on_g)
    })
}

/// A restricted root space split by `θσ`.
#[derive(Clone, Debug)]
pub struct RootSpace {
    pub space: Subspace,
    pub plus: Subspace,
    pub minus: Subspace,
}

/// Output of [`SymmetricPairRealization::restricted_root_decomposition`];
/// `spaces[i]` belongs to root `i` of `data`.
#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub data: RestrictedRootData,
    pub spaces: Vec<RootSpace>,
    pub centralizer: Subspace,
}

/// Outcome of the hyperbolic-element search.
#[derive(Clone, Debug)]
pub struct HyperbolicSearch {
    pub witness: Option<Vec<Rational>>,
    pub associated: Subspace,
    pub center_in_p: Subspace,
    /// Set when candidates existed but none had the right centralizer.
    pub diagnostic: Option<String>,
}

/// `(g, σ, θ, a)` with the four eigenspaces precomputed.
#[derive(Clone, Debug)]
pub struct SymmetricPairRealization {
    label: String,
    g: Arc<MatrixLieAlgebra>,
    sigma: InvolutionMap,
    theta: InvolutionMap,
    a_basis: Vec<Vec<Rational>>,
    a: Subspace,
    h: Subspace,
    q: Subspace,
    k: Subspace,
    p: Subspace,
    complex_structure: Option<QMatrix>,
}

impl SymmetricPairRealization {
    /// Checks `σθ = θσ` and that `a_basis` spans a maximal abelian subspace of `p ∩ q`.
    pub fn new(
        label: impl Into<String>,
        sigma: InvolutionMap,
        theta: InvolutionMap,
        a_basis: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let label = label.into();
        let g = sigma.algebra().clone();
        if !Arc::ptr_eq(&g, theta.algebra()) {
            return Err(CkfError::InvalidPair(format!("{label}: σ and θ act on different algebras")));
        }
        if !sigma.commutes_with(&theta) {
            return Err(CkfError::InvalidPair(format!("{label}: σθ ≠ θσ")));
        }
        let (h, q_space) = (sigma.eigenspace(1), sigma.eigenspace(-1));
        let (k, p) = (theta.eigenspace(1), theta.eigenspace(-1));
        let pq = p.intersect(&q_space);
        let a = Subspace::from_spanning(g.dim(), a_basis.clone());
        if a.dim() != a_basis.len() {
            return Err(CkfError::InvalidPair(format!("{label}: a basis is linearly dependent")));
        }
        if !a.is_subspace_of(&pq) {
            return Err(CkfError::InvalidPair(format!("{label}: a is not inside p ∩ q")));
        }
        for (i, x) in a_basis.iter().enumerate() {
            for y in &a_basis[i + 1..] {
                if g.bracket(x, y).iter().any(|c| !c.is_zero()) {
                    return Err(CkfError::InvalidPair(format!("{label}: a is not abelian")));
                }
            }
        }
        if g.centralizer(&a_basis).intersect(&pq) != a {
            return Err(CkfError::InvalidPair(format!("{label}: a is not maximal abelian in p ∩ q")));
        }
        Ok(Self {
            label,
            g,
            sigma,
            theta,
            a_basis,
            a,
            h,
            q: q_space,
            k,
            p,
            complex_structure: None,
        })
    }

    /// Records multiplication by `√-1` on `g` (in coordinates), marking `g` as a
    /// complex algebra viewed as real.
    pub fn with_complex_structure(mut self, j: QMatrix) -> Result<Self> {
        let d = self.g.dim();
        if &j * &j != QMatrix::identity(d).scale(&q(-1)) {
            return Err(CkfError::InvalidPair(format!("{}: J² ≠ -1", self.label)));
        }
        self.complex_structure = Some(j);
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn g(&self) -> &Arc<MatrixLieAlgebra> {
        &self.g
    }

    pub fn sigma(&self) -> &InvolutionMap {
        &self.sigma
    }

    pub fn theta(&self) -> &InvolutionMap {
        &self.theta
    }

    pub fn a_basis(&self) -> &[Vec<Rational>] {
        &self.a_basis
    }

    pub fn a(&self) -> &Subspace {
        &self.a
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn q(&self) -> &Subspace {
        &self.q
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    pub fn p(&self) -> &Subspace {
        &self.p
    }

    pub fn complex_structure(&self) -> Option<&QMatrix> {
        self.complex_structure.as_ref()
    }

    /// `g` is complex, `dim g = 2 dim h` and `h + √-1 h = g`.
    pub fn is_type_cr(&self) -> bool {
        let Some(j) = &self.complex_structure else {
            return false;
        };
        self.g.dim() == 2 * self.h.dim() && self.h.sum(&self.h.map(j)).dim() == self.g.dim()
    }

    /// Restricted roots with their `θσ`-split root spaces.
    pub fn restricted_root_decomposition(&self) -> Result<RootDecomposition> {
        let g = &self.g;
        let d = g.dim();
        let irrational = |what: String| CkfError::IrrationalSpectrum(format!("{}: {what}", self.label));
        let mut blocks: Vec<(Vec<Rational>, Subspace)> = vec![(Vec::new(), Subspace::full(d))];
        for (i, y) in self.a_basis.iter().enumerate() {
            let (eig, split) = g.matrix(y).to_dense().rational_eigenvalues();
            if !split {
                return Err(irrational(format!("a basis vector {i} has irrational eigenvalues")));
            }
            let mut diffs: Vec<Rational> = eig.iter().flat_map(|a| eig.iter().map(move |b| a - b)).collect();
            diffs.sort();
            diffs.dedup();
            let ad = g.ad(y);
            let mut eigenspaces = Vec::new();
            let mut total = 0;
            for c in diffs {
                let e = (&ad - &QMatrix::identity(d).scale(&c)).kernel();
                if !e.is_zero() {
                    total += e.dim();
                    eigenspaces.push((c, e));
                }
            }
            if total != d {
                return Err(irrational(format!("ad of a basis vector {i} is not diagonalizable over Q")));
            }
            let mut next = Vec::new();
            for (vals, space) in &blocks {
                for (c, e) in &eigenspaces {
                    let part = space.intersect(e);
                    if !part.is_zero() {
                        let mut v = vals.clone();
                        v.push(c.clone());
                        next.push((v, part));
                    }
                }
            }
            blocks = next;
        }
        let rank = self.a_basis.len();
        let ts = InvolutionMap::from_matrix(g.clone(), self.theta.compose_matrix(&self.sigma))?;
        let (ts_plus, ts_minus) = (ts.eigenspace(1), ts.eigenspace(-1));
        let mut centralizer = Subspace::zero(d);
        let mut roots = Vec::new();
        let mut mult = Vec::new();
        let mut spaces = Vec::new();
        for (vals, space) in blocks {
            if vals.iter().all(Zero::is_zero) {
                centralizer = space;
                continue;
            }
            let plus = space.intersect(&ts_plus);
            let minus = space.intersect(&ts_minus);
            if plus.dim() + minus.dim() != space.dim() {
                return Err(CkfError::InvalidPair(format!("{}: θσ does not preserve a root space", self.label)));
            }
            mult.push(Multiplicity::new(plus.dim() as u32, minus.dim() as u32));
            roots.push(vals);
            spaces.push(RootSpace { space, plus, minus });
        }
        let dim_z_k_h = centralizer.intersect(&self.k).intersect(&self.h).dim();
        let data = RestrictedRootData::new(rank, roots, mult, None, dim_z_k_h, centralizer.dim())?;
        Ok(RootDecomposition {
            data,
            spaces,
            centralizer,
        })
    }

    /// `σ_ε`: `σ` on `z_g(a)` and `ε(α)σ` on `g_α`.
    pub fn sigma_eps_involution(&self, dec: &RootDecomposition, eps: &Signature) -> Result<InvolutionMap> {
        let values = dec.data.extend_signature(eps).map_err(|_| {
            CkfError::SignatureMismatch(format!(
                "{}: signature of rank {} on a root system of rank {}",
                self.label,
                eps.rank(),
                dec.data.rank()
            ))
        })?;
        let d = self.g.dim();
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(d);
        let mut scalars: Vec<Rational> = Vec::with_capacity(d);
        for b in dec.centralizer.basis() {
            columns.push(b.clone());
            scalars.push(q(1));
        }
        for (space, &s) in dec.spaces.iter().zip(&values) {
            for b in space.space.basis() {
                columns.push(b.clone());
                scalars.push(q(s as i64));
            }
        }
        let change = QMatrix::from_columns(d, &columns);
        let inverse = change.inverse().ok_or_else(|| {
            CkfError::InvalidPair(format!("{}: root spaces do not decompose g", self.label))
        })?;
        let mut diag = QMatrix::zeros(d, d);
        for (i, s) in scalars.into_iter().enumerate() {
            diag.set(i, i, s);
        }
        let twist = &(&change * &diag) * &inverse;
        InvolutionMap::from_matrix(self.g.clone(), self.sigma.matrix() * &twist)
    }

    /// `g_ε̂ = z_g(a) ⊕ ⊕ {X + σ(Y) : X, Y ∈ g_α}` over positive `α` with `ε̂(α) = 1`.
    pub fn g_halfeps_subalgebra(&self, dec: &RootDecomposition, heps: &HalfSignature) -> Result<Subspace> {
        let values = dec.data.extend_half_signature(heps).map_err(|_| {
            CkfError::SignatureMismatch(format!("{}: half-signature does not match Σ", self.label))
        })?;
        let mut s = dec.centralizer.clone();
        for i in dec.data.positive_indices() {
            if values[i] == Unit4::One {
                let space = &dec.spaces[i].space;
                s = s.sum(space).sum(&space.map(self.sigma.matrix()));
            }
        }
        Ok(s)
    }

    pub fn check_top_cohomology_nonzero(&self) -> bool {
        isotropy_is_unimodular(&self.g, &self.h)
    }

    /// `h^a = g^{σθ}`.
    pub fn associated_subalgebra(&self) -> Subspace {
        (&(self.sigma.matrix() * self.theta.matrix()) - &QMatrix::identity(self.g.dim())).kernel()
    }

    /// Whether `x ∈ p ∖ {0}` has centralizer exactly `h^a`.
    pub fn is_hyperbolic_witness(&self, x: &[Rational]) -> bool {
        x.iter().any(|c| !c.is_zero())
            && self.p.contains(x)
            && self.g.centralizer(&[x.to_vec()]) == self.associated_subalgebra()
    }

    /// Looks for `X₀ ∈ p ∖ {0}` with `z_g(X₀) = h^a` inside `center(h^a) ∩ p`.
    pub fn find_hyperbolic_witness(&self, sampling: &Sampling) -> HyperbolicSearch {
        let associated = self.associated_subalgebra();
        let center_in_p = self.g.center_of(&associated).intersect(&self.p);
        let mut search = HyperbolicSearch {
            witness: None,
            associated,
            center_in_p,
            diagnostic: None,
        };
        if search.center_in_p.is_zero() {
            return search;
        }
        let c = &search.center_in_p;
        let mut candidates: Vec<Vec<Rational>> = Vec::new();
        candidates.push(c.combine(&vec![q(1); c.dim()]));
        let mut rng = sampling.rng();
        for _ in 0..sampling.effective_samples() {
            candidates.push(random_element(&mut rng, c));
        }
        for x in candidates {
            if x.iter().any(|v| !v.is_zero()) && self.g.centralizer(std::slice::from_ref(&x)) == search.associated {
                search.witness = Some(x);
                return search;
            }
        }
        search.diagnostic = Some(format!(
            "center(h^a) ∩ p has dimension {} but no sampled element has centralizer h^a",
            c.dim()
        ));
        search
    }
}

/// A reductive homogeneous pair `(g, h)` with a Cartan involution `θ`
/// preserving `h`; `h` need not be a symmetric subalgebra.
#[derive(Clone, Debug)]
pub struct HomogeneousPair {
    label: String,
    g: Arc<MatrixLieAlgebra>,
    h: Subspace,
    theta: InvolutionMap,
    k: Subspace,
}

impl HomogeneousPair {
    pub fn new(label: impl Into<String>, h: Subspace, theta: InvolutionMap) -> Result<Self> {
        let label = label.into();
        let g = theta.algebra().clone();
        if !g.is_subalgebra(&h) {
            return Err(CkfError::NotASubalgebra(format!("{label}: h is not bracket-closed")));
        }
        if h.map(theta.matrix()) != h {
            return Err(CkfError::InvalidPair(format!("{label}: θ does not preserve h")));
        }
        let k = theta.eigenspace(1);
        Ok(Self { label, g, h, theta, k })
    }

    /// `h` spanned by the given matrices, which must lie in `g`.
    pub fn from_matrices(label: impl Into<String>, theta: InvolutionMap, h_gens: &[SparseMat]) -> Result<Self> {
        let label = label.into();
        let g = theta.algebra().clone();
        let coords = h_gens
            .iter()
            .map(|m| {
                g.coordinates(m)
                    .ok_or_else(|| CkfError::NotASubalgebra(format!("{label}: generator outside g")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(label, Subspace::from_spanning(g.dim(), coords), theta)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn g(&self) -> &Arc<MatrixLieAlgebra> {
        &self.g
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn theta(&self) -> &InvolutionMap {
        &self.theta
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    /// Lie algebra of the maximal compact subgroup `K_H = K ∩ H`.
    pub fn k_cap_h(&self) -> Subspace {
        self.k.intersect(&self.h)
    }

    pub fn check_top_cohomology_nonzero(&self) -> bool {
        isotropy_is_unimodular(&self.g, &self.h)
    }
}

impl SymmetricPairRealization {
    pub fn homogeneous(&self) -> HomogeneousPair {
        HomogeneousPair {
            label: self.label.clone(),
            g: self.g.clone(),
            h: self.h.clone(),
            theta: self.theta.clone(),
            k: self.k.clone(),
        }
    }
}
