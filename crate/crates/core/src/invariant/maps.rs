use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{CkfError, Result};
use crate::exact::{MultiPoly, QMatrix, Subspace};

use super::presentation::{build_presentation_with, InvariantPresentation, TorusConvention};

/// Restriction of torus coordinate functions along an inclusion of tori:
/// each source variable becomes a linear form in the target variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusEmbedding {
    source_vars: Vec<String>,
    target_vars: Vec<String>,
    substitution: BTreeMap<String, MultiPoly>,
}

impl TorusEmbedding {
    pub fn new(
        source_vars: &[String],
        target_vars: &[String],
        substitution: BTreeMap<String, MultiPoly>,
    ) -> Result<Self> {
        for v in source_vars {
            let img = substitution
                .get(v)
                .ok_or_else(|| CkfError::MissingImage(v.clone()))?;
            if img.vars() != target_vars {
                return Err(CkfError::VariableMismatch(format!(
                    "image of {v} is not over the target variables"
                )));
            }
            if !img.is_homogeneous_of_degree(1) {
                return Err(CkfError::VariableMismatch(format!("image of {v} is not linear")));
            }
        }
        Ok(Self {
            source_vars: source_vars.to_vec(),
            target_vars: target_vars.to_vec(),
            substitution,
        })
    }

    /// Embedding derived from explicit torus bases in a common ambient
    /// matrix space: `target_basis` must lie in the span of `source_basis`,
    /// and source coordinate `j` restricts to `Σ_i M_ij t_i` where
    /// `target_basis[i] = Σ_j M_ij source_basis[j]`.
    pub fn from_bases(
        source_vars: &[String],
        source_basis: &[QMatrix],
        target_vars: &[String],
        target_basis: &[QMatrix],
    ) -> Result<Self> {
        assert_eq!(source_vars.len(), source_basis.len());
        assert_eq!(target_vars.len(), target_basis.len());
        let flat = |m: &QMatrix| -> Vec<_> { m.to_rows().into_iter().flatten().collect() };
        let ambient = source_basis
            .first()
            .or(target_basis.first())
            .map_or(0, |m| m.rows() * m.cols());
        let src: Vec<Vec<_>> = source_basis.iter().map(flat).collect();
        let span = Subspace::from_spanning(ambient, src.clone());
        if span.dim() != src.len() {
            return Err(CkfError::VariableMismatch("source torus basis is dependent".into()));
        }
        let src_matrix = QMatrix::from_columns(ambient, &src);
        let mut images: Vec<MultiPoly> = vec![MultiPoly::zero(target_vars); source_vars.len()];
        for (i, t) in target_basis.iter().enumerate() {
            let v = flat(t);
            let coeffs = solve_columns(&src_matrix, &v).ok_or_else(|| {
                CkfError::VariableMismatch(format!(
                    "torus direction {} does not lie in the source torus",
                    target_vars[i]
                ))
            })?;
            let ti = MultiPoly::var(target_vars, i);
            for (j, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    images[j] = &images[j] + &ti.scale(c);
                }
            }
        }
        let substitution = source_vars.iter().cloned().zip(images).collect();
        Ok(Self {
            source_vars: source_vars.to_vec(),
            target_vars: target_vars.to_vec(),
            substitution,
        })
    }

    pub fn source_vars(&self) -> &[String] {
        &self.source_vars
    }

    pub fn target_vars(&self) -> &[String] {
        &self.target_vars
    }

    pub fn substitution(&self) -> &BTreeMap<String, MultiPoly> {
        &self.substitution
    }

    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.vars() != self.source_vars.as_slice() {
            return Err(CkfError::VariableMismatch(format!(
                "polynomial over {:?}, embedding source {:?}",
                f.vars(),
                self.source_vars
            )));
        }
        f.substitute(&self.substitution, &self.target_vars)
    }
}

/// Unique solution of `A c = v` for `A` with independent columns.
fn solve_columns(a: &QMatrix, v: &[crate::exact::Rational]) -> Option<Vec<crate::exact::Rational>> {
    let n = a.cols();
    let mut aug = QMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, v[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&n) {
        return None;
    }
    let mut out = vec![crate::exact::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        out[p] = r.get(row, n).clone();
    }
    Some(out)
}

/// Homomorphism of invariant algebras, given on generators.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: InvariantPresentation,
    target: InvariantPresentation,
    images: BTreeMap<String, MultiPoly>,
}

impl AlgebraMap {
    /// Checks that every source generator has an image over the target
    /// torus variables, homogeneous of the generator's degree.
    pub fn new(
        source: InvariantPresentation,
        target: InvariantPresentation,
        images: BTreeMap<String, MultiPoly>,
    ) -> Result<Self> {
        for g in source.generators() {
            let img = images
                .get(&g.symbol)
                .ok_or_else(|| CkfError::MissingImage(g.symbol.clone()))?;
            if img.vars() != target.torus_vars() {
                return Err(CkfError::VariableMismatch(format!(
                    "image of {} is not over the torus of {}",
                    g.symbol,
                    target.label()
                )));
            }
            if !img.is_homogeneous_of_degree(g.degree) {
                return Err(CkfError::VariableMismatch(format!(
                    "image of {} is not homogeneous of degree {}",
                    g.symbol, g.degree
                )));
            }
        }
        Ok(Self { source, target, images })
    }

    /// Same images with no validation; used to build deliberately broken
    /// maps in tests.
    pub fn new_unchecked(
        source: InvariantPresentation,
        target: InvariantPresentation,
        images: BTreeMap<String, MultiPoly>,
    ) -> Self {
        Self { source, target, images }
    }

    pub fn source(&self) -> &InvariantPresentation {
        &self.source
    }

    pub fn target(&self) -> &InvariantPresentation {
        &self.target
    }

    pub fn images(&self) -> &BTreeMap<String, MultiPoly> {
        &self.images
    }

    pub fn image(&self, symbol: &str) -> Option<&MultiPoly> {
        self.images.get(symbol)
    }

    pub fn with_image(mut self, symbol: &str, image: MultiPoly) -> Self {
        self.images.insert(symbol.to_string(), image);
        self
    }

    /// Image of an invariant of the source, given in source torus variables.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let in_gens = self.source.express_in_generators(f)?;
        in_gens.substitute(&self.images, self.target.torus_vars())
    }

    /// The identity map of a presentation.
    pub fn identity(p: &InvariantPresentation) -> Self {
        let images = p
            .generators()
            .iter()
            .map(|g| (g.symbol.clone(), g.poly.clone()))
            .collect();
        Self {
            source: p.clone(),
            target: p.clone(),
            images,
        }
    }

    /// Restriction of invariants along a torus embedding.
    pub fn restriction(
        source: &InvariantPresentation,
        target: &InvariantPresentation,
        emb: &TorusEmbedding,
    ) -> Result<Self> {
        let images = source
            .generators()
            .iter()
            .map(|g| Ok((g.symbol.clone(), emb.apply(&g.poly)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Self::new(source.clone(), target.clone(), images)
    }
}

/// `φ(f_{2k}) = Σ_{i+j=k} f_{2i} ⊗ f_{2j}` from the invariants of
/// so(p+q,C) to those of so(p+1,C) ⊕ so(q,C), for p even, q odd, r ≥ 1.
pub fn phi_so_family(p: usize, q: usize, r: usize) -> Result<AlgebraMap> {
    if !p.is_multiple_of(2) || q % 2 != 1 || r < 1 {
        return Err(CkfError::ParityViolation(format!(
            "need p even, q odd, r >= 1; got ({p},{q},{r})"
        )));
    }
    let source = build_presentation_with(&format!("so({},C)", p + q), "h", TorusConvention::Rotation)?;
    let left = build_presentation_with(&format!("so({},C)", p + 1), "c", TorusConvention::Rotation)?;
    let right = build_presentation_with(&format!("so({q},C)"), "d", TorusConvention::Rotation)?;
    let target = InvariantPresentation::tensor(&[&left, &right])?;
    let vars = target.torus_vars().to_vec();
    let coeff = |pres: &InvariantPresentation, k: usize| pres.char_coefficient(k).embed(&vars);
    let mut images = BTreeMap::new();
    for g in source.generators() {
        let k = g.degree as usize / 2;
        let mut acc = MultiPoly::zero(&vars);
        for i in 0..=k {
            let a = coeff(&left, 2 * i)?;
            let b = coeff(&right, 2 * (k - i))?;
            acc = &acc + &(&a * &b);
        }
        images.insert(g.symbol.clone(), acc);
    }
    AlgebraMap::new(source, target, images)
}

/// `φ(f_k) = f_k` from the invariants of sl(m,C) to those of so(m+1,C)
/// (odd `k` map to zero), in eigenvalue coordinates.
pub fn phi_sl_family(n: usize, m: usize) -> Result<AlgebraMap> {
    if !(n > m && m >= 2 && m.is_multiple_of(2)) {
        return Err(CkfError::ParameterViolation(format!(
            "need n > m >= 2 with m even; got (n,m) = ({n},{m})"
        )));
    }
    let source = build_presentation_with(&format!("sl({m},C)"), "h", TorusConvention::Eigen)?;
    let target = build_presentation_with(&format!("so({},C)", m + 1), "c", TorusConvention::Eigen)?;
    let images = source
        .generators()
        .iter()
        .map(|g| (g.symbol.clone(), target.char_coefficient(g.degree as usize)))
        .collect();
    AlgebraMap::new(source, target, images)
}

/// `φ ⊗ rest_l`: the map on invariants of h ⊕ l into those of c ⊕ k_l.
pub fn enlarge(
    phi: &AlgebraMap,
    l: &InvariantPresentation,
    k_l: &InvariantPresentation,
    rest_l: &AlgebraMap,
) -> Result<AlgebraMap> {
    if rest_l.source().torus_vars() != l.torus_vars() || rest_l.target().torus_vars() != k_l.torus_vars() {
        return Err(CkfError::VariableMismatch(
            "restriction map does not match the given presentations".into(),
        ));
    }
    let source = InvariantPresentation::tensor(&[phi.source(), l])?;
    let target = InvariantPresentation::tensor(&[phi.target(), k_l])?;
    let vars = target.torus_vars().to_vec();
    let mut images = BTreeMap::new();
    let mut qualified: BTreeSet<String> = BTreeSet::new();
    for (factor, map) in [(phi.source(), phi), (l, rest_l)] {
        for g in factor.generators() {
            let sym = if factor.prefix().is_empty() {
                g.symbol.clone()
            } else {
                format!("{}.{}", factor.prefix(), g.symbol)
            };
            qualified.insert(sym.clone());
            let img = map
                .image(&g.symbol)
                .ok_or_else(|| CkfError::MissingImage(g.symbol.clone()))?;
            images.insert(sym, img.embed(&vars)?);
        }
    }
    debug_assert_eq!(qualified.len(), source.generators().len());
    AlgebraMap::new(source, target, images)
}
