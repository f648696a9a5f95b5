use num_traits::{One, Zero};

use super::{QMatrix, Rational};

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced
/// row-echelon basis. Two subspaces are equal iff their representations are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        Self {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_spanning(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient_dim), "vector length mismatch");
        let mut m = QMatrix::from_rows(vectors);
        let pivots = m.rref_in_place();
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Self {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the space.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.combine(&coords);
        (recon.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `Σ c_i b_i` over the canonical basis.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::from_spanning(self.ambient_dim, v)
    }

    /// Linear functionals (as vectors) vanishing exactly on this space.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.ambient_dim);
        }
        QMatrix::from_rows(self.basis.clone()).kernel()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient_dim);
        }
        let ann = other.annihilator();
        if ann.is_zero() {
            return self.clone();
        }
        // rows: functionals of `other`; columns: basis of `self`
        let a = QMatrix::from_rows(ann.basis.clone());
        let u = QMatrix::from_columns(self.ambient_dim, &self.basis);
        let k = (&a * &u).kernel();
        let vecs = k.basis.iter().map(|c| self.combine(c)).collect();
        Self::from_spanning(self.ambient_dim, vecs)
    }

    /// Image of the space under a linear map given as a square matrix.
    pub fn map(&self, m: &QMatrix) -> Self {
        assert_eq!(m.cols(), self.ambient_dim);
        Self::from_spanning(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)).collect())
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}
