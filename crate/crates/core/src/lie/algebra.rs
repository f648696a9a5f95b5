use std::collections::VecDeque;
use std::fmt;

use num_traits::Zero;

use super::sparse::{SignedPerm, SparseMat};
use crate::error::{CkfError, Result};
use crate::exact::{QMatrix, Rational, Subspace};

/// Sparse coordinate vector: `(index, value)` pairs, indices ascending.
pub type SparseVec = Vec<(usize, Rational)>;

/// A linear symmetry of `gl(n)` that permutes matrix entries up to sign.
#[derive(Clone, Debug)]
pub enum EntryMap {
    /// `X ↦ A X A⁻¹`.
    Conjugate(SignedPerm),
    /// `X ↦ -A Xᵀ A⁻¹`.
    NegTransposeConjugate(SignedPerm),
}

impl EntryMap {
    fn image(&self, r: usize, c: usize) -> (usize, usize, i8) {
        match self {
            EntryMap::Conjugate(a) => a.conj_entry(r, c),
            EntryMap::NegTransposeConjugate(a) => {
                let (r2, c2, s) = a.conj_entry(c, r);
                (r2, c2, -s)
            }
        }
    }

    pub fn apply(&self, x: &SparseMat) -> SparseMat {
        match self {
            EntryMap::Conjugate(a) => a.conjugate(x),
            EntryMap::NegTransposeConjugate(a) => a.neg_transpose_conjugate(x),
        }
    }
}

/// Subspace of `gl(n, R)` cut out by `X = φ(X)` for entry symmetries `φ` and
/// by vanishing linear functionals.
#[derive(Clone, Debug)]
pub struct MatrixConditions {
    n: usize,
    symmetries: Vec<EntryMap>,
    functionals: Vec<Vec<(usize, usize, Rational)>>,
}

impl MatrixConditions {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            symmetries: Vec::new(),
            functionals: Vec::new(),
        }
    }

    pub fn fixed_by(mut self, map: EntryMap) -> Self {
        self.symmetries.push(map);
        self
    }

    pub fn annihilated_by(mut self, functional: Vec<(usize, usize, Rational)>) -> Self {
        self.functionals.push(functional);
        self
    }

    /// A spanning set of the solution space.
    pub fn solve(&self) -> Vec<SparseMat> {
        let n = self.n;
        let total = n * n;
        let mut sign: Vec<i8> = vec![0; total];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..total {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            let mut consistent = true;
            while let Some(k) = queue.pop_front() {
                for map in &self.symmetries {
                    let (r, c, s) = map.image(k / n, k % n);
                    let t = r * n + c;
                    let want = s * sign[k];
                    if sign[t] == 0 {
                        sign[t] = want;
                        members.push(t);
                        queue.push_back(t);
                    } else if sign[t] != want {
                        consistent = false;
                    }
                }
            }
            if consistent {
                orbits.push(members);
            }
        }
        let orbit_mats: Vec<SparseMat> = orbits
            .iter()
            .map(|members| {
                SparseMat::from_entries(
                    n,
                    members.iter().map(|&k| (k / n, k % n, crate::exact::q(sign[k] as i64))),
                )
            })
            .collect();
        if self.functionals.is_empty() {
            return orbit_mats;
        }
        let rows: Vec<Vec<Rational>> = self
            .functionals
            .iter()
            .map(|f| {
                orbit_mats
                    .iter()
                    .map(|m| f.iter().map(|(r, c, w)| w * m.get(*r, *c)).sum())
                    .collect()
            })
            .collect();
        let kernel = QMatrix::from_rows(rows).kernel();
        kernel
            .basis()
            .iter()
            .map(|coeffs| {
                coeffs
                    .iter()
                    .zip(&orbit_mats)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(SparseMat::zero(n), |acc, (c, m)| acc.add(&m.scale(c)))
            })
            .collect()
    }
}

/// A real Lie algebra of `n × n` rational matrices with a canonical basis: the
/// reduced row echelon basis of its span, so the coordinates of an element
/// are its entries at the pivot positions.
#[derive(Clone)]
pub struct MatrixLieAlgebra {
    label: String,
    n: usize,
    basis: Vec<SparseMat>,
    pivots: Vec<usize>,
    brackets: Vec<Vec<SparseVec>>,
}

impl fmt::Debug for MatrixLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixLieAlgebra({}, dim {}, {}×{})", self.label, self.dim(), self.n, self.n)
    }
}

impl MatrixLieAlgebra {
    /// Span of `generators`; errors unless it is closed under the commutator.
    pub fn from_spanning(label: impl Into<String>, n: usize, generators: &[SparseMat]) -> Result<Self> {
        let label = label.into();
        let span = Subspace::from_spanning(n * n, generators.iter().map(SparseMat::to_flat).collect());
        let basis: Vec<SparseMat> = span.basis().iter().map(|v| SparseMat::from_flat(n, v)).collect();
        let mut alg = Self {
            label,
            n,
            basis,
            pivots: span.pivots().to_vec(),
            brackets: Vec::new(),
        };
        let d = alg.dim();
        let mut brackets = vec![vec![SparseVec::new(); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let m = alg.basis[i].commutator(&alg.basis[j]);
                let c = alg.sparse_coordinates(&m).ok_or_else(|| {
                    CkfError::NotALieAlgebra(format!("{}: bracket of basis elements {i}, {j} leaves the span", alg.label))
                })?;
                brackets[j][i] = c.iter().map(|(k, v)| (*k, -v)).collect();
                brackets[i][j] = c;
            }
        }
        alg.brackets = brackets;
        Ok(alg)
    }

    pub fn from_conditions(label: impl Into<String>, conditions: &MatrixConditions) -> Result<Self> {
        Self::from_spanning(label, conditions.n, &conditions.solve())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseMat] {
        &self.basis
    }

    fn sparse_coordinates(&self, m: &SparseMat) -> Option<SparseVec> {
        let coords: SparseVec = self
            .pivots
            .iter()
            .enumerate()
            .map(|(k, &p)| (k, m.get_flat(p)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        (self.sparse_to_matrix(&coords) == *m).then_some(coords)
    }

    fn sparse_to_matrix(&self, coords: &SparseVec) -> SparseMat {
        SparseMat::from_entries(
            self.n,
            coords
                .iter()
                .flat_map(|(k, c)| self.basis[*k].entries().map(move |(r, col, v)| (r, col, v * c))),
        )
    }

    /// Coordinates of a matrix, or `None` if it is not in the algebra.
    pub fn coordinates(&self, m: &SparseMat) -> Option<Vec<Rational>> {
        self.sparse_coordinates(m).map(|s| densify(self.dim(), &s))
    }

    pub fn matrix(&self, x: &[Rational]) -> SparseMat {
        self.sparse_to_matrix(&sparsify(x))
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.brackets[i][j] {
                    out[k.to_owned()] += &ab * c;
                }
            }
        }
        out
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn structure_constants(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    /// Matrix of `ad(x)` on the basis.
    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for j in 0..d {
                for (k, c) in &self.brackets[i][j] {
                    let v = m.get(*k, j) + a * c;
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    /// Matrix of `ad(x)` restricted to an invariant subspace, on its canonical basis.
    pub fn ad_on(&self, x: &[Rational], s: &Subspace) -> Option<QMatrix> {
        let cols: Option<Vec<Vec<Rational>>> = s.basis().iter().map(|b| s.coordinates(&self.bracket(x, b))).collect();
        Some(QMatrix::from_columns(s.dim(), &cols?))
    }

    /// Elements commuting with every vector in `vs`.
    pub fn centralizer(&self, vs: &[Vec<Rational>]) -> Subspace {
        let d = self.dim();
        let mut rows = Vec::new();
        for v in vs {
            rows.extend(self.ad(v).to_rows());
        }
        if rows.is_empty() {
            return Subspace::full(d);
        }
        QMatrix::from_rows(rows).kernel()
    }

    pub fn center_of(&self, s: &Subspace) -> Subspace {
        self.centralizer(s.basis()).intersect(s)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| s.contains(&self.bracket(&b[i], &b[j]))))
    }

    /// Gram matrix of the Killing form on the basis.
    pub fn killing_form(&self) -> QMatrix {
        let d = self.dim();
        let mut g = QMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                // tr(ad e_i ad e_j) = Σ_l Σ_k [e_i,e_l]_k [e_j,e_k]_l
                let mut t = Rational::zero();
                for l in 0..d {
                    for (k, a) in &self.brackets[i][l] {
                        if let Ok(pos) = self.brackets[j][*k].binary_search_by_key(&l, |(x, _)| *x) {
                            t += a * &self.brackets[j][*k][pos].1;
                        }
                    }
                }
                g.set(i, j, t.clone());
                g.set(j, i, t);
            }
        }
        g
    }

    pub fn is_semisimple(&self) -> bool {
        self.killing_form().rank() == self.dim()
    }
}

pub(crate) fn sparsify(x: &[Rational]) -> SparseVec {
    x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

pub(crate) fn densify(d: usize, x: &SparseVec) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    for (i, c) in x {
        v[*i] = c.clone();
    }
    v
}
