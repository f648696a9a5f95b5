use std::sync::Arc;

use super::algebra::{densify, EntryMap, MatrixLieAlgebra};
use super::sparse::SparseMat;
use crate::error::{CkfError, Result};
use crate::exact::{QMatrix, Rational, Subspace};

/// An involutive automorphism of a matrix Lie algebra, stored as its matrix on
/// the algebra's basis.
#[derive(Clone, Debug)]
pub struct InvolutionMap {
    algebra: Arc<MatrixLieAlgebra>,
    matrix: QMatrix,
}

impl InvolutionMap {
    /// Validates `φ² = 1` and `φ[X, Y] = [φX, φY]` on all basis pairs.
    pub fn from_matrix(algebra: Arc<MatrixLieAlgebra>, matrix: QMatrix) -> Result<Self> {
        let d = algebra.dim();
        let label = algebra.label().to_string();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(CkfError::NotAnInvolution(format!("{label}: matrix is not {d}×{d}")));
        }
        if &matrix * &matrix != QMatrix::identity(d) {
            return Err(CkfError::NotAnInvolution(format!("{label}: does not square to the identity")));
        }
        let images: Vec<Vec<Rational>> = (0..d).map(|j| matrix.column(j)).collect();
        for i in 0..d {
            for j in i + 1..d {
                let lhs = matrix.mul_vec(&densify(d, algebra.structure_constants(i, j)));
                if lhs != algebra.bracket(&images[i], &images[j]) {
                    return Err(CkfError::NotAnInvolution(format!(
                        "{label}: not an automorphism on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { algebra, matrix })
    }

    /// The restriction of a map on matrices; errors if the image leaves the algebra.
    pub fn from_matrix_map(algebra: Arc<MatrixLieAlgebra>, f: impl Fn(&SparseMat) -> SparseMat) -> Result<Self> {
        let cols: Option<Vec<Vec<Rational>>> = algebra.basis().iter().map(|b| algebra.coordinates(&f(b))).collect();
        let cols = cols.ok_or_else(|| {
            CkfError::NotAnInvolution(format!("{}: map does not preserve the algebra", algebra.label()))
        })?;
        let matrix = QMatrix::from_columns(algebra.dim(), &cols);
        Self::from_matrix(algebra, matrix)
    }

    pub fn from_entry_map(algebra: Arc<MatrixLieAlgebra>, map: &EntryMap) -> Result<Self> {
        Self::from_matrix_map(algebra, |x| map.apply(x))
    }

    pub fn identity(algebra: Arc<MatrixLieAlgebra>) -> Self {
        let d = algebra.dim();
        Self {
            algebra,
            matrix: QMatrix::identity(d),
        }
    }

    pub fn algebra(&self) -> &Arc<MatrixLieAlgebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x)
    }

    /// The `±1` eigenspace.
    pub fn eigenspace(&self, sign: i8) -> Subspace {
        let d = self.algebra.dim();
        let shift = QMatrix::identity(d).scale(&crate::exact::q(sign as i64));
        (&self.matrix - &shift).kernel()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        &self.matrix * &other.matrix == &other.matrix * &self.matrix
    }

    /// `self ∘ other` as a plain matrix (an involution when the two commute).
    pub fn compose_matrix(&self, other: &Self) -> QMatrix {
        &self.matrix * &other.matrix
    }
}

/// Eigenspace of an involution for the given sign.
pub fn fixed_subalgebra(inv: &InvolutionMap, sign: i8) -> Subspace {
    inv.eigenspace(sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::lie::algebra::MatrixConditions;
    use crate::lie::sparse::SignedPerm;

    fn sl2() -> Arc<MatrixLieAlgebra> {
        let cond = MatrixConditions::new(2).annihilated_by(vec![(0, 0, q(1)), (1, 1, q(1))]);
        Arc::new(MatrixLieAlgebra::from_conditions("sl(2,R)", &cond).unwrap())
    }

    fn theta(g: &Arc<MatrixLieAlgebra>) -> InvolutionMap {
        InvolutionMap::from_entry_map(g.clone(), &EntryMap::NegTransposeConjugate(SignedPerm::identity(2))).unwrap()
    }

    #[test]
    fn cartan_involution_of_sl2() {
        let g = sl2();
        let t = theta(&g);
        let k = fixed_subalgebra(&t, 1);
        let p = fixed_subalgebra(&t, -1);
        assert_eq!((k.dim(), p.dim()), (1, 2));
        let rot = g.coordinates(&SparseMat::from_entries(2, [(0, 1, q(1)), (1, 0, q(-1))])).unwrap();
        assert!(k.contains(&rot));
        for sym in [
            SparseMat::from_entries(2, [(0, 1, q(1)), (1, 0, q(1))]),
            SparseMat::from_entries(2, [(0, 0, q(1)), (1, 1, q(-1))]),
        ] {
            assert!(p.contains(&g.coordinates(&sym).unwrap()));
        }
        assert!(g.is_subalgebra(&k));
    }

    #[test]
    fn diagonal_conjugation_fixes_diagonal() {
        let g = sl2();
        let s = InvolutionMap::from_entry_map(g.clone(), &EntryMap::Conjugate(SignedPerm::diagonal(&[1, -1]))).unwrap();
        let h = fixed_subalgebra(&s, 1);
        assert_eq!(h.dim(), 1);
        let diag = g.coordinates(&SparseMat::from_entries(2, [(0, 0, q(1)), (1, 1, q(-1))])).unwrap();
        assert!(h.contains(&diag));
        assert!(s.commutes_with(&theta(&g)));
    }

    #[test]
    fn rejects_non_involutions() {
        let g = sl2();
        let scaled = QMatrix::identity(3).scale(&q(2));
        assert!(InvolutionMap::from_matrix(g.clone(), scaled).is_err());
        // X ↦ Xᵀ squares to one but is an anti-automorphism
        let transpose = InvolutionMap::from_matrix_map(g, |x| x.transpose());
        assert!(matches!(transpose, Err(CkfError::NotAnInvolution(_))));
    }
}
