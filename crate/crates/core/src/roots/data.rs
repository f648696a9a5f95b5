use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cartan;
use super::signature::{HalfSignature, Signature, Unit4};
use crate::error::{CkfError, Result};
use crate::exact::{q, rational_to_string, QMatrix, Rational};

/// Default upper bound on the rank accepted by [`RestrictedRootData::enumerate_family`].
pub const DEFAULT_FAMILY_RANK_BOUND: usize = 12;

/// Two-sided multiplicity `(m⁺, m⁻)` of a restricted root.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Multiplicity {
    pub plus: u32,
    pub minus: u32,
}

impl Multiplicity {
    pub fn new(plus: u32, minus: u32) -> Self {
        Self { plus, minus }
    }

    pub fn total(self) -> u32 {
        self.plus + self.minus
    }

    pub fn swapped(self) -> Self {
        Self {
            plus: self.minus,
            minus: self.plus,
        }
    }
}

/// Restricted root system `Σ ⊂ a*` with a simple system and two-sided
/// multiplicities, plus the two centralizer dimensions the dimension
/// formulas need.
///
/// Roots are stored as rational coordinate vectors on a fixed basis of `a*`.
/// Every root is also cached as its integer coefficient vector over the
/// simple system.
#[derive(Clone, Debug)]
pub struct RestrictedRootData {
    rank: usize,
    roots: Vec<Vec<Rational>>,
    simple: Vec<usize>,
    mult: Vec<Multiplicity>,
    coeffs: Vec<Vec<i64>>,
    dim_z_k_h: usize,
    dim_z_g_a: usize,
    index: HashMap<Vec<Rational>, usize>,
    /// `(·,·)` on `a*` dual to `Σ α⊗α`; Weyl invariant.
    form: QMatrix,
}

/// One member of an ε-family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub signature: Signature,
    pub data: RestrictedRootData,
    pub basic: bool,
    pub dim_k_cap_h: usize,
}

impl RestrictedRootData {
    /// Validates and builds root data. When `simple` is `None` the simple
    /// system of the lexicographic positive system is chosen.
    pub fn new(
        rank: usize,
        roots: Vec<Vec<Rational>>,
        mult: Vec<Multiplicity>,
        simple: Option<Vec<usize>>,
        dim_z_k_h: usize,
        dim_z_g_a: usize,
    ) -> Result<Self> {
        let invalid = |m: String| CkfError::InvalidRootData(m);
        if roots.len() != mult.len() {
            return Err(invalid("roots and multiplicities differ in length".into()));
        }
        let mut index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if r.len() != rank {
                return Err(invalid(format!("root {i} has {} coordinates, rank is {rank}", r.len())));
            }
            if r.iter().all(Zero::is_zero) {
                return Err(invalid("zero is not a root".into()));
            }
            if index.insert(r.clone(), i).is_some() {
                return Err(invalid(format!("duplicate root {}", fmt_vec(r))));
            }
        }
        for (i, r) in roots.iter().enumerate() {
            let neg: Vec<Rational> = r.iter().map(|x| -x).collect();
            let Some(&j) = index.get(&neg) else {
                return Err(invalid(format!("-({}) is missing", fmt_vec(r))));
            };
            if mult[i] != mult[j] {
                return Err(invalid(format!("m(α) ≠ m(-α) for α = {}", fmt_vec(r))));
            }
            if mult[i].total() == 0 {
                return Err(invalid(format!("root {} has zero multiplicity", fmt_vec(r))));
            }
        }
        let form = if rank == 0 {
            QMatrix::zeros(0, 0)
        } else {
            let mut m = QMatrix::zeros(rank, rank);
            for r in &roots {
                for a in 0..rank {
                    for b in 0..rank {
                        let v = m.get(a, b) + &r[a] * &r[b];
                        m.set(a, b, v);
                    }
                }
            }
            m.inverse()
                .ok_or_else(|| invalid("roots do not span a*".into()))?
        };
        let mut rd = Self {
            rank,
            roots,
            simple: Vec::new(),
            mult,
            coeffs: Vec::new(),
            dim_z_k_h,
            dim_z_g_a,
            index,
            form,
        };
        let simple = match simple {
            Some(s) => s,
            None => rd.lexicographic_simple_system(),
        };
        rd.set_simple_system(simple)?;
        rd.check_axioms()?;
        Ok(rd)
    }

    /// Root data given directly by coefficient vectors over the simple
    /// system (the simple roots are the unit vectors).
    pub fn from_simple_coordinates(
        rank: usize,
        positive: &[(Vec<i64>, Multiplicity)],
        dim_z_k_h: usize,
        dim_z_g_a: usize,
    ) -> Result<Self> {
        let mut roots = Vec::new();
        let mut mult = Vec::new();
        for (c, m) in positive {
            if c.iter().any(|&x| x < 0) {
                return Err(CkfError::InvalidRootData(format!("positive root {c:?} has a negative coefficient")));
            }
            roots.push(c.iter().map(|&x| q(x)).collect::<Vec<_>>());
            mult.push(*m);
        }
        for (c, m) in positive {
            roots.push(c.iter().map(|&x| q(-x)).collect());
            mult.push(*m);
        }
        let simple: Vec<usize> = (0..rank)
            .map(|i| {
                let mut e = vec![q(0); rank];
                e[i] = q(1);
                roots
                    .iter()
                    .position(|r| *r == e)
                    .ok_or_else(|| CkfError::InvalidRootData(format!("simple root {} missing", i + 1)))
            })
            .collect::<Result<_>>()?;
        Self::new(rank, roots, mult, Some(simple), dim_z_k_h, dim_z_g_a)
    }

    /// Reduced irreducible type with a single multiplicity on every root.
    pub fn from_cartan_type(type_name: &str, m: Multiplicity, dim_z_k_h: usize, dim_z_g_a: usize) -> Result<Self> {
        let gram = cartan::gram_matrix(type_name)?;
        let pos = cartan::positive_roots(&gram);
        let positive: Vec<(Vec<i64>, Multiplicity)> = pos.into_iter().map(|c| (c, m)).collect();
        Self::from_simple_coordinates(gram.len(), &positive, dim_z_k_h, dim_z_g_a)
    }

    fn lexicographic_simple_system(&self) -> Vec<usize> {
        let positive: Vec<usize> = (0..self.roots.len())
            .filter(|&i| lex_positive(&self.roots[i]))
            .collect();
        let mut simple = Vec::new();
        for &i in &positive {
            let decomposable = positive.iter().any(|&j| {
                let diff: Vec<Rational> = self.roots[i].iter().zip(&self.roots[j]).map(|(a, b)| a - b).collect();
                self.index.get(&diff).is_some_and(|&k| lex_positive(&self.roots[k]))
            });
            if !decomposable {
                simple.push(i);
            }
        }
        // deterministic order: lexicographically largest first
        simple.sort_by(|&a, &b| self.roots[b].cmp(&self.roots[a]));
        simple
    }

    /// Replaces the simple system, recomputing coefficient vectors.
    pub fn set_simple_system(&mut self, simple: Vec<usize>) -> Result<()> {
        let invalid = |m: String| CkfError::InvalidRootData(m);
        if simple.len() != self.rank {
            return Err(invalid(format!(
                "simple system has {} roots, rank is {}",
                simple.len(),
                self.rank
            )));
        }
        let mut coeffs = Vec::with_capacity(self.roots.len());
        if self.rank > 0 {
            let s = QMatrix::from_rows(simple.iter().map(|&i| self.roots[i].clone()).collect());
            let s_inv = s
                .inverse()
                .ok_or_else(|| invalid("simple roots are linearly dependent".into()))?;
            let s_inv_t = s_inv.transpose();
            for r in &self.roots {
                // c S = α  ⇔  c = α S^{-1}
                let c = s_inv_t.mul_vec(r);
                let mut ints = Vec::with_capacity(c.len());
                for x in &c {
                    if !x.is_integer() {
                        return Err(invalid(format!("{} is not an integer combination of Ψ", fmt_vec(r))));
                    }
                    ints.push(i64::try_from(x.to_integer()).map_err(|_| invalid("coefficient overflow".into()))?);
                }
                let pos = ints.iter().all(|&x| x >= 0);
                let neg = ints.iter().all(|&x| x <= 0);
                if !(pos || neg) {
                    return Err(invalid(format!("{} has mixed-sign coefficients over Ψ", fmt_vec(r))));
                }
                coeffs.push(ints);
            }
        }
        self.simple = simple;
        self.coeffs = coeffs;
        Ok(())
    }

    fn check_axioms(&self) -> Result<()> {
        for (i, alpha) in self.roots.iter().enumerate() {
            let aa = self.inner(alpha, alpha);
            for beta in &self.roots {
                let pairing = q(2) * self.inner(beta, alpha) / &aa;
                if !pairing.is_integer() {
                    return Err(CkfError::InvalidRootData(format!(
                        "Cartan pairing <{}, {}^v> = {} is not an integer",
                        fmt_vec(beta),
                        fmt_vec(alpha),
                        rational_to_string(&pairing)
                    )));
                }
                let refl: Vec<Rational> = beta.iter().zip(alpha).map(|(b, a)| b - &pairing * a).collect();
                if !self.index.contains_key(&refl) {
                    return Err(CkfError::InvalidRootData(format!(
                        "reflection of {} in root {} leaves Σ",
                        fmt_vec(beta),
                        i
                    )));
                }
            }
        }
        Ok(())
    }

    /// Weyl-invariant inner product on `a*`.
    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let fb = self.form.mul_vec(b);
        a.iter().zip(&fb).map(|(x, y)| x * y).sum()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Vec<Rational>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[Rational] {
        &self.roots[i]
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn multiplicities(&self) -> &[Multiplicity] {
        &self.mult
    }

    pub fn multiplicity(&self, i: usize) -> Multiplicity {
        self.mult[i]
    }

    /// Integer coefficients of root `i` over the simple system.
    pub fn simple_coefficients(&self, i: usize) -> &[i64] {
        &self.coeffs[i]
    }

    pub fn dim_z_k_h(&self) -> usize {
        self.dim_z_k_h
    }

    pub fn dim_z_g_a(&self) -> usize {
        self.dim_z_g_a
    }

    pub fn index_of(&self, root: &[Rational]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.coeffs[i].iter().all(|&c| c >= 0)
    }

    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.is_positive(i)).collect()
    }

    pub fn negative_of(&self, i: usize) -> usize {
        let neg: Vec<Rational> = self.roots[i].iter().map(|x| -x).collect();
        self.index[&neg]
    }

    /// `α/2 ∈ Σ`.
    pub fn half_is_root(&self, i: usize) -> bool {
        let half: Vec<Rational> = self.roots[i].iter().map(|x| x / q(2)).collect();
        self.index.contains_key(&half)
    }

    /// `2α ∈ Σ`.
    pub fn double_is_root(&self, i: usize) -> bool {
        let dbl: Vec<Rational> = self.roots[i].iter().map(|x| x * q(2)).collect();
        self.index.contains_key(&dbl)
    }

    fn check_rank(&self, r: usize, what: &str) -> Result<()> {
        if r != self.rank {
            return Err(CkfError::SignatureMismatch(format!(
                "{what} has {r} simple values, root system has rank {}",
                self.rank
            )));
        }
        Ok(())
    }

    /// `ε(Σ nᵢψᵢ) = Π ε(ψᵢ)^{nᵢ}` on every root, in root order.
    pub fn extend_signature(&self, eps: &Signature) -> Result<Vec<i8>> {
        self.check_rank(eps.rank(), "signature")?;
        Ok(self
            .coeffs
            .iter()
            .map(|c| {
                let odd = c
                    .iter()
                    .zip(&eps.values_on_simple)
                    .filter(|(&n, &s)| s == -1 && n.rem_euclid(2) == 1)
                    .count();
                if odd % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect())
    }

    /// Multiplicative extension of a half-signature to every root.
    pub fn extend_half_signature(&self, heps: &HalfSignature) -> Result<Vec<Unit4>> {
        self.check_rank(heps.rank(), "half-signature")?;
        Ok(self
            .coeffs
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&heps.values_on_simple)
                    .fold(Unit4::One, |acc, (&n, &u)| acc * u.pow(n))
            })
            .collect())
    }

    /// Multiplicities of `h_ε`: swapped exactly where `ε(α) = -1`.
    pub fn twist(&self, eps: &Signature) -> Result<Self> {
        let ext = self.extend_signature(eps)?;
        let mut out = self.clone();
        for (m, &s) in out.mult.iter_mut().zip(&ext) {
            if s == -1 {
                *m = m.swapped();
            }
        }
        Ok(out)
    }

    /// `m⁺(α) ≥ m⁻(α)` for every `α` with `α/2 ∉ Σ`.
    pub fn is_basic(&self) -> bool {
        self.first_non_basic_root().is_none()
    }

    /// A root violating the basic condition, if any.
    pub fn first_non_basic_root(&self) -> Option<usize> {
        (0..self.roots.len())
            .filter(|&i| self.is_positive(i))
            .find(|&i| !self.half_is_root(i) && self.mult[i].plus < self.mult[i].minus)
    }

    /// `dim(z_g(a) ∩ k ∩ h) + Σ_{α∈Σ⁺} m⁺(α)`.
    pub fn dim_k_cap_h(&self) -> usize {
        self.dim_z_k_h
            + self
                .positive_indices()
                .iter()
                .map(|&i| self.mult[i].plus as usize)
                .sum::<usize>()
    }

    /// `dim g = dim z_g(a) + Σ_α dim g_α`.
    pub fn dim_g(&self) -> usize {
        self.dim_z_g_a + self.mult.iter().map(|m| m.total() as usize).sum::<usize>()
    }

    /// All `2^r` members of the ε-family, in signature-bit order.
    pub fn enumerate_family(&self, bound: usize) -> Result<Vec<FamilyMember>> {
        if self.rank > bound {
            return Err(CkfError::RankTooLarge { rank: self.rank, bound });
        }
        (0..1u64 << self.rank)
            .map(|bits| {
                let signature = Signature::from_bits(self.rank, bits);
                let data = self.twist(&signature)?;
                Ok(FamilyMember {
                    basic: data.is_basic(),
                    dim_k_cap_h: data.dim_k_cap_h(),
                    signature,
                    data,
                })
            })
            .collect()
    }

    /// The `2^r` half-signatures squaring to `eps`.
    pub fn halfsig_lifts(&self, eps: &Signature) -> Result<Vec<HalfSignature>> {
        self.check_rank(eps.rank(), "signature")?;
        let r = self.rank;
        Ok((0..1u64 << r)
            .map(|bits| HalfSignature {
                values_on_simple: eps
                    .values_on_simple
                    .iter()
                    .enumerate()
                    .map(|(i, &s)| Unit4::square_roots_of(s)[(bits >> i & 1) as usize])
                    .collect(),
            })
            .collect())
    }

    /// Squared length of root `i` relative to the longest root of its
    /// irreducible component.
    fn relative_lengths(&self) -> Vec<Rational> {
        let n = self.roots.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                if !self.inner(&self.roots[i], &self.roots[j]).is_zero() {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a] = b;
                }
            }
        }
        let lens: Vec<Rational> = self.roots.iter().map(|r| self.inner(r, r)).collect();
        let mut max: HashMap<usize, Rational> = HashMap::new();
        for i in 0..n {
            let c = find(&mut comp, i);
            let e = max.entry(c).or_insert_with(|| lens[i].clone());
            if lens[i] > *e {
                *e = lens[i].clone();
            }
        }
        (0..n).map(|i| &lens[i] / &max[&find(&mut comp, i)]).collect()
    }

    /// Basis-independent summary used to compare two presentations of the
    /// same root data.
    pub fn profile(&self) -> RootProfile {
        let lens = self.relative_lengths();
        let mut classes: BTreeMap<String, usize> = BTreeMap::new();
        for i in 0..self.roots.len() {
            let key = format!(
                "len²={} m=({},{}){}{}",
                rational_to_string(&lens[i]),
                self.mult[i].plus,
                self.mult[i].minus,
                if self.half_is_root(i) { " α/2∈Σ" } else { "" },
                if self.double_is_root(i) { " 2α∈Σ" } else { "" },
            );
            *classes.entry(key).or_default() += 1;
        }
        RootProfile {
            rank: self.rank,
            num_roots: self.roots.len(),
            dim_z_k_h: self.dim_z_k_h,
            dim_z_g_a: self.dim_z_g_a,
            classes,
        }
    }

    /// Root permutations induced by the simple reflections.
    fn reflection_perms(&self) -> Vec<Vec<usize>> {
        self.simple
            .iter()
            .map(|&s| {
                let a = &self.roots[s];
                let aa = self.inner(a, a);
                (0..self.roots.len())
                    .map(|i| {
                        let b = &self.roots[i];
                        let c = q(2) * self.inner(b, a) / &aa;
                        let img: Vec<Rational> = b.iter().zip(a).map(|(x, y)| x - &c * y).collect();
                        self.index[&img]
                    })
                    .collect()
            })
            .collect()
    }

    /// Root permutations induced by permutations of the simple system that
    /// preserve the inner products (Dynkin diagram symmetries).
    fn diagram_perms(&self) -> Vec<Vec<usize>> {
        let r = self.rank;
        let gram: Vec<Vec<Rational>> = self
            .simple
            .iter()
            .map(|&a| self.simple.iter().map(|&b| self.inner(&self.roots[a], &self.roots[b])).collect())
            .collect();
        let by_coeffs: HashMap<&[i64], usize> = (0..self.roots.len()).map(|i| (self.coeffs[i].as_slice(), i)).collect();
        let mut out = Vec::new();
        let mut pi: Vec<usize> = (0..r).collect();
        loop {
            if (0..r).all(|i| (0..r).all(|j| gram[pi[i]][pi[j]] == gram[i][j])) {
                out.push(
                    self.coeffs
                        .iter()
                        .map(|c| {
                            let mut d = vec![0; r];
                            for i in 0..r {
                                d[pi[i]] = c[i];
                            }
                            by_coeffs[d.as_slice()]
                        })
                        .collect(),
                );
            }
            // next permutation in lexicographic order
            let Some(i) = (1..r).rev().find(|&i| pi[i - 1] < pi[i]) else { break };
            let j = (i..r).rev().find(|&j| pi[j] > pi[i - 1]).expect("successor exists");
            pi.swap(i - 1, j);
            pi[i..].reverse();
        }
        out
    }

    /// Whether some automorphism of the root system carries the
    /// multiplicities of `self` onto `target` (indexed like `self`).
    fn mult_orbit_contains(&self, target: &[Multiplicity]) -> bool {
        let gens = self.reflection_perms();
        let n = self.roots.len();
        for d in self.diagram_perms() {
            let start: Vec<Multiplicity> = (0..n).map(|i| self.mult[d[i]]).collect();
            let mut seen = std::collections::HashSet::new();
            let mut stack = vec![start];
            while let Some(m) = stack.pop() {
                if m == target {
                    return true;
                }
                if !seen.insert(m.clone()) {
                    continue;
                }
                for g in &gens {
                    stack.push((0..n).map(|i| m[g[i]]).collect());
                }
            }
        }
        false
    }

    /// Human-readable differences against `expected`; empty when they agree
    /// up to an automorphism of the root system. When both sides list the
    /// same coefficient vectors over their simple systems the offending
    /// roots are named individually.
    pub fn compare(&self, expected: &Self) -> Vec<String> {
        let mut out = Vec::new();
        let mine: HashMap<&[i64], usize> = (0..self.num_roots()).map(|i| (self.coeffs[i].as_slice(), i)).collect();
        let aligned = self.rank == expected.rank
            && self.num_roots() == expected.num_roots()
            && (0..expected.num_roots()).all(|j| mine.contains_key(expected.coeffs[j].as_slice()));
        let moved = aligned && {
            let mut target = self.mult.clone();
            for j in 0..expected.num_roots() {
                target[mine[expected.coeffs[j].as_slice()]] = expected.mult[j];
            }
            target != self.mult && self.mult_orbit_contains(&target)
        };
        if aligned && !moved {
            for j in expected.positive_indices() {
                let i = mine[expected.coeffs[j].as_slice()];
                if self.mult[i] != expected.mult[j] {
                    out.push(format!(
                        "root {:?}: expected (m+,m-)=({},{}), computed ({},{})",
                        expected.coeffs[j], expected.mult[j].plus, expected.mult[j].minus, self.mult[i].plus, self.mult[i].minus
                    ));
                }
            }
        }
        let (a, b) = (self.profile(), expected.profile());
        if a.rank != b.rank {
            out.push(format!("rank: expected {}, computed {}", b.rank, a.rank));
        }
        if a.num_roots != b.num_roots {
            out.push(format!("|Σ|: expected {}, computed {}", b.num_roots, a.num_roots));
        }
        if a.dim_z_k_h != b.dim_z_k_h {
            out.push(format!("dim z_g(a)∩k∩h: expected {}, computed {}", b.dim_z_k_h, a.dim_z_k_h));
        }
        if a.dim_z_g_a != b.dim_z_g_a {
            out.push(format!("dim z_g(a): expected {}, computed {}", b.dim_z_g_a, a.dim_z_g_a));
        }
        if a.classes != b.classes && (!aligned || out.is_empty()) {
            let keys: std::collections::BTreeSet<&String> = a.classes.keys().chain(b.classes.keys()).collect();
            for k in keys {
                let (x, y) = (a.classes.get(k).copied().unwrap_or(0), b.classes.get(k).copied().unwrap_or(0));
                if x != y {
                    out.push(format!("roots with {k}: expected {y}, computed {x}"));
                }
            }
        }
        out
    }
}

/// See [`RestrictedRootData::profile`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RootProfile {
    pub rank: usize,
    pub num_roots: usize,
    pub dim_z_k_h: usize,
    pub dim_z_g_a: usize,
    pub classes: BTreeMap<String, usize>,
}

fn lex_positive(v: &[Rational]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

pub(crate) fn fmt_vec(v: &[Rational]) -> String {
    let s: Vec<String> = v.iter().map(rational_to_string).collect();
    format!("({})", s.join(","))
}

impl PartialEq for RestrictedRootData {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.roots == other.roots
            && self.simple == other.simple
            && self.mult == other.mult
            && self.dim_z_k_h == other.dim_z_k_h
            && self.dim_z_g_a == other.dim_z_g_a
    }
}

