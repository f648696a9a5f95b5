use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{q, Rational, Subspace};

/// Dense exact rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Diagonal matrix from integer entries.
    pub fn diag_i64(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, q(e));
        }
        m
    }

    /// Builds from rational rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n_rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(n_rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n_rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Reduced row-echelon form with unit pivots; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pv = self.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &f * pv;
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact null space `{v : Mv = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(self.rows, (0..self.cols).map(|j| self.column(j)).collect())
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Coefficients `[1, c1, ..., cn]` of `det(λI - M) = λ^n + c1 λ^{n-1} + ... + cn`
    /// via the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<Rational> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Rational::one()];
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            let c_prev = coeffs[k - 1].clone();
            for i in 0..n {
                let v = next.get(i, i) + &c_prev;
                next.set(i, i, v);
            }
            m = next;
            let am = self * &m;
            let ck = -am.trace() / q(k as i64);
            coeffs.push(ck);
        }
        coeffs
    }

    /// Distinct rational eigenvalues, ascending. The second component is true
    /// when the characteristic polynomial splits completely over the rationals.
    pub fn rational_eigenvalues(&self) -> (Vec<Rational>, bool) {
        let cp = self.char_poly();
        let roots = rational_roots(&cp);
        let mult: usize = roots.iter().map(|(_, m)| m).sum();
        let split = mult == self.rows;
        (roots.into_iter().map(|(r, _)| r).collect(), split)
    }
}

/// Rational roots with multiplicities of the monic-leading polynomial given
/// by descending coefficients.
pub(crate) fn rational_roots(desc: &[Rational]) -> Vec<(Rational, usize)> {
    let mut poly: Vec<Rational> = desc.to_vec();
    let mut out: Vec<(Rational, usize)> = Vec::new();
    // zero roots
    let mut zero_mult = 0;
    while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((Rational::zero(), zero_mult));
    }
    if poly.len() <= 1 {
        out.sort_by(|a, b| a.0.cmp(&b.0));
        return out;
    }
    let denom_lcm = poly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let lead = ints[0].abs();
    let tail = ints[ints.len() - 1].abs();
    let candidates_num = divisors(&tail);
    let candidates_den = divisors(&lead);
    let mut candidates: Vec<Rational> = Vec::new();
    for p in &candidates_num {
        for d in &candidates_den {
            let r = Rational::new(p.clone(), d.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        let mut m = 0;
        while poly.len() > 1 {
            let (quot, rem) = synthetic_division(&poly, &c);
            if !rem.is_zero() {
                break;
            }
            poly = quot;
            m += 1;
        }
        if m > 0 {
            out.push((c, m));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn synthetic_division(desc: &[Rational], root: &Rational) -> (Vec<Rational>, Rational) {
    let mut quot = Vec::with_capacity(desc.len() - 1);
    let mut acc = Rational::zero();
    for c in desc {
        acc = &acc * root + c;
        quot.push(acc.clone());
    }
    let rem = quot.pop().unwrap_or_else(Rational::zero);
    (quot, rem)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // Trial division; spectra of catalog realizations have tiny constants.
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let other = n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out
}

impl<'a> Mul<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(super::rational_to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn identity_has_trivial_kernel() {
        assert_eq!(QMatrix::identity(3).kernel().dim(), 0);
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let k = QMatrix::zeros(2, 3).kernel();
        assert_eq!(k.dim(), 3);
        assert_eq!(k, Subspace::full(3));
    }

    #[test]
    fn hand_reduced_kernel() {
        let m = QMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        let expected = Subspace::from_spanning(3, vec![vec![q(1), q(-1), q(0)]]);
        assert_eq!(k, expected);
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_i64_rows(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        assert!(QMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn char_poly_of_diagonal() {
        let m = QMatrix::diag_i64(&[1, 2, 3]);
        // (λ-1)(λ-2)(λ-3) = λ³ - 6λ² + 11λ - 6
        assert_eq!(m.char_poly(), vec![q(1), q(-6), q(11), q(-6)]);
        let (eig, split) = m.rational_eigenvalues();
        assert!(split);
        assert_eq!(eig, vec![q(1), q(2), q(3)]);
    }

    #[test]
    fn irrational_spectrum_is_detected() {
        let m = QMatrix::from_i64_rows(&[&[0, 2], &[1, 0]]);
        let (eig, split) = m.rational_eigenvalues();
        assert!(!split);
        assert!(eig.is_empty());
    }

    #[test]
    fn fractional_roots() {
        // 4λ² - 1 normalised: λ² - 1/4
        let roots = rational_roots(&[q(1), q(0), frac(-1, 4)]);
        assert_eq!(roots, vec![(frac(-1, 2), 1), (frac(1, 2), 1)]);
    }
}
