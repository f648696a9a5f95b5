use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::{q, QMatrix, Rational};

/// Square rational matrix stored row by row, nonzero entries only, columns ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMat {
    n: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseMat {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            rows: vec![Vec::new(); n],
        }
    }

    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
        for (r, c, v) in entries {
            let slot = acc[r].entry(c).or_insert_with(Rational::zero);
            *slot += v;
        }
        Self {
            n,
            rows: acc
                .into_iter()
                .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    pub fn from_dense(m: &QMatrix) -> Self {
        let n = m.rows();
        Self::from_entries(
            n,
            (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| (r, c, m.get(r, c).clone())),
        )
    }

    /// Matrix whose row-major flattening is `flat` (length `n²`).
    pub fn from_flat(n: usize, flat: &[Rational]) -> Self {
        Self::from_entries(
            n,
            flat.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k / n, k % n, v.clone())),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.rows[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => self.rows[r][pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn get_flat(&self, k: usize) -> Rational {
        self.get(k / self.n, k % self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.n, self.n);
        for (r, c, v) in self.entries() {
            m.set(r, c, v.clone());
        }
        m
    }

    pub fn to_flat(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n * self.n];
        for (r, c, x) in self.entries() {
            v[r * self.n + c] = x.clone();
        }
        v
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_entries(
            self.n,
            self.entries()
                .chain(other.entries())
                .map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.n);
        for row in &self.rows {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    let slot = acc.entry(*c).or_insert_with(Rational::zero);
                    *slot += a * b;
                }
            }
            out.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Self { n: self.n, rows: out }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.n, self.entries().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

/// Signed permutation matrix: column `j` is `sign[j] · e_{perm[j]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPerm {
    perm: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    pub fn diagonal(signs: &[i8]) -> Self {
        Self {
            perm: (0..signs.len()).collect(),
            sign: signs.to_vec(),
        }
    }

    /// Panics unless `perm` is a permutation.
    pub fn new(perm: Vec<usize>, sign: Vec<i8>) -> Self {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(!seen[p], "not a permutation");
            seen[p] = true;
        }
        assert_eq!(perm.len(), sign.len());
        Self { perm, sign }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
            sign: (0..other.size())
                .map(|j| other.sign[j] * self.sign[other.perm[j]])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.size();
        let mut perm = vec![0; n];
        let mut sign = vec![1; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            sign[self.perm[j]] = self.sign[j];
        }
        Self { perm, sign }
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.size();
        Self {
            perm: self.perm.iter().copied().chain(other.perm.iter().map(|p| p + n)).collect(),
            sign: self.sign.iter().chain(&other.sign).copied().collect(),
        }
    }

    /// `self ⊗ other` with the left factor as the block index.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.size();
        let mut perm = Vec::new();
        let mut sign = Vec::new();
        for j in 0..self.size() {
            for l in 0..m {
                perm.push(self.perm[j] * m + other.perm[l]);
                sign.push(self.sign[j] * other.sign[l]);
            }
        }
        Self { perm, sign }
    }

    pub fn to_sparse(&self) -> SparseMat {
        SparseMat::from_entries(
            self.size(),
            (0..self.size()).map(|j| (self.perm[j], j, q(self.sign[j] as i64))),
        )
    }

    /// Action of `X ↦ A X A⁻¹` on the flattened entry `(r, c)`: target index and sign.
    pub fn conj_entry(&self, r: usize, c: usize) -> (usize, usize, i8) {
        (self.perm[r], self.perm[c], self.sign[r] * self.sign[c])
    }

    pub fn conjugate(&self, x: &SparseMat) -> SparseMat {
        SparseMat::from_entries(
            x.size(),
            x.entries().map(|(r, c, v)| {
                let (r2, c2, s) = self.conj_entry(r, c);
                (r2, c2, v * q(s as i64))
            }),
        )
    }

    /// `X ↦ -A Xᵀ A⁻¹`.
    pub fn neg_transpose_conjugate(&self, x: &SparseMat) -> SparseMat {
        self.conjugate(&x.transpose()).scale(&q(-1))
    }
}
