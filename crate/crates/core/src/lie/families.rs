//! Standard realizations of the classical symmetric pairs.
//!
//! Every algebra is a real matrix algebra with Cartan involution
//! `θ(X) = -Xᵀ`. Complex matrices use 2×2 blocks `a + bi ↦ [[a, -b], [b, a]]`,
//! quaternionic ones left multiplication on `H = R⁴` (basis `1, i, j, k`),
//! so the real transpose realizes the conjugate transpose in both cases.

use std::fmt;
use std::sync::Arc;

use super::algebra::{EntryMap, MatrixConditions, MatrixLieAlgebra};
use super::involution::InvolutionMap;
use super::pair::SymmetricPairRealization;
use super::sparse::{SignedPerm, SparseMat};
use crate::error::{CkfError, Result};
use crate::exact::{q, QMatrix, Rational};

fn signs(blocks: &[(usize, i8)]) -> SignedPerm {
    SignedPerm::diagonal(&blocks.iter().flat_map(|&(n, s)| std::iter::repeat_n(s, n)).collect::<Vec<_>>())
}

fn ipq(p: usize, q: usize) -> SignedPerm {
    signs(&[(p, 1), (q, -1)])
}

/// `[[0, -I], [I, 0]]` of size `2n`.
fn symplectic(n: usize) -> SignedPerm {
    let perm = (0..2 * n).map(|j| if j < n { j + n } else { j - n }).collect();
    let sign = (0..2 * n).map(|j| if j < n { 1 } else { -1 }).collect();
    SignedPerm::new(perm, sign)
}

/// `[[0, I], [I, 0]]` of size `2n`.
fn swap_halves(n: usize) -> SignedPerm {
    SignedPerm::new((0..2 * n).map(|j| if j < n { j + n } else { j - n }).collect(), vec![1; 2 * n])
}

fn complex(a: &SignedPerm) -> SignedPerm {
    a.kron(&SignedPerm::identity(2))
}

fn quaternionic(a: &SignedPerm) -> SignedPerm {
    a.kron(&SignedPerm::identity(4))
}

/// Complex conjugation `X ↦ Kc X Kc` on realized `n × n` complex matrices.
fn conj(n: usize) -> SignedPerm {
    SignedPerm::identity(n).kron(&SignedPerm::diagonal(&[1, -1]))
}

/// Multiplication by `√-1`.
fn mult_i(n: usize) -> SignedPerm {
    SignedPerm::identity(n).kron(&SignedPerm::new(vec![1, 0], vec![1, -1]))
}

/// Right multiplication by `i` and `j` on `Hⁿ`.
fn right_mult(n: usize) -> [SignedPerm; 2] {
    [
        SignedPerm::identity(n).kron(&SignedPerm::new(vec![1, 0, 3, 2], vec![1, -1, -1, 1])),
        SignedPerm::identity(n).kron(&SignedPerm::new(vec![2, 3, 0, 1], vec![1, 1, -1, -1])),
    ]
}

fn real_trace(n: usize) -> Vec<(usize, usize, Rational)> {
    (0..n).map(|i| (i, i, q(1))).collect()
}

fn imaginary_trace(n: usize) -> Vec<(usize, usize, Rational)> {
    (0..n).map(|i| (2 * i + 1, 2 * i, q(1))).collect()
}

/// Complex `n × n` matrix with entries `(row, col, re, im)`, realized.
fn cx(n: usize, entries: &[(usize, usize, i64, i64)]) -> SparseMat {
    SparseMat::from_entries(
        2 * n,
        entries.iter().flat_map(|&(r, c, re, im)| {
            [
                (2 * r, 2 * c, q(re)),
                (2 * r + 1, 2 * c + 1, q(re)),
                (2 * r, 2 * c + 1, q(-im)),
                (2 * r + 1, 2 * c, q(im)),
            ]
        }),
    )
}

fn real(n: usize, entries: &[(usize, usize, i64)]) -> SparseMat {
    SparseMat::from_entries(n, entries.iter().map(|&(r, c, v)| (r, c, q(v))))
}

fn quat_real(n: usize, entries: &[(usize, usize, i64)]) -> SparseMat {
    SparseMat::from_entries(
        4 * n,
        entries
            .iter()
            .flat_map(|&(r, c, v)| (0..4).map(move |l| (4 * r + l, 4 * c + l, q(v)))),
    )
}

fn complex_conditions(n: usize) -> MatrixConditions {
    MatrixConditions::new(2 * n).fixed_by(EntryMap::Conjugate(mult_i(n)))
}

fn quaternionic_conditions(n: usize) -> MatrixConditions {
    let [ri, rj] = right_mult(n);
    MatrixConditions::new(4 * n)
        .fixed_by(EntryMap::Conjugate(ri))
        .fixed_by(EntryMap::Conjugate(rj))
}

/// `{X : Xᵀ F + F X = 0}` inside `gl(n, C)` for a real signed-permutation form `F`.
fn complex_form_conditions(form: &SignedPerm) -> MatrixConditions {
    let n = form.size();
    // X = -F⁻¹ Kc Xᵀ Kc F
    let a = complex(&form.inverse()).compose(&conj(n));
    complex_conditions(n).fixed_by(EntryMap::NegTransposeConjugate(a))
}

fn build(label: &str, cond: &MatrixConditions) -> Result<Arc<MatrixLieAlgebra>> {
    Ok(Arc::new(MatrixLieAlgebra::from_conditions(label, cond)?))
}

pub fn sl_real(n: usize) -> Result<Arc<MatrixLieAlgebra>> {
    build(&format!("sl({n},R)"), &MatrixConditions::new(n).annihilated_by(real_trace(n)))
}

pub fn sl_complex(n: usize) -> Result<Arc<MatrixLieAlgebra>> {
    let cond = complex_conditions(n)
        .annihilated_by(real_trace(2 * n))
        .annihilated_by(imaginary_trace(n));
    build(&format!("sl({n},C)"), &cond)
}

pub fn sl_quaternionic(n: usize) -> Result<Arc<MatrixLieAlgebra>> {
    build(&format!("sl({n},H)"), &quaternionic_conditions(n).annihilated_by(real_trace(4 * n)))
}

pub fn su(p: usize, q_: usize) -> Result<Arc<MatrixLieAlgebra>> {
    let n = p + q_;
    let cond = complex_conditions(n)
        .fixed_by(EntryMap::NegTransposeConjugate(complex(&ipq(p, q_))))
        .annihilated_by(real_trace(2 * n))
        .annihilated_by(imaginary_trace(n));
    build(&format!("su({p},{q_})"), &cond)
}

pub fn so_real(p: usize, q_: usize) -> Result<Arc<MatrixLieAlgebra>> {
    let cond = MatrixConditions::new(p + q_).fixed_by(EntryMap::NegTransposeConjugate(ipq(p, q_)));
    build(&format!("so({p},{q_})"), &cond)
}

/// `so(n, C)` for the form `F`; `n = F.size()`.
pub fn so_complex(form: &SignedPerm) -> Result<Arc<MatrixLieAlgebra>> {
    build(&format!("so({},C)", form.size()), &complex_form_conditions(form))
}

pub fn so_star(n: usize) -> Result<Arc<MatrixLieAlgebra>> {
    let cond = complex_form_conditions(&swap_halves(n))
        .fixed_by(EntryMap::NegTransposeConjugate(complex(&ipq(n, n))));
    build(&format!("so*({})", 2 * n), &cond)
}

pub fn sp_real(n: usize) -> Result<Arc<MatrixLieAlgebra>> {
    let cond = MatrixConditions::new(2 * n).fixed_by(EntryMap::NegTransposeConjugate(symplectic(n).inverse()));
    build(&format!("sp({n},R)"), &cond)
}

pub fn sp_complex(n: usize) -> Result<Arc<MatrixLieAlgebra>> {
    build(&format!("sp({n},C)"), &complex_form_conditions(&symplectic(n)))
}

pub fn sp_quaternionic(p: usize, q_: usize) -> Result<Arc<MatrixLieAlgebra>> {
    let cond = quaternionic_conditions(p + q_).fixed_by(EntryMap::NegTransposeConjugate(quaternionic(&ipq(p, q_))));
    build(&format!("sp({p},{q_})"), &cond)
}

/// The classical symmetric pairs with shipped realizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    /// `(sl(p+q, C), su(p, q))`
    SlComplexSu { p: usize, q: usize },
    /// `(sl(n, C), sl(n, R))`
    SlComplexSlReal { n: usize },
    /// `(sl(p+q, R), so(p, q))`
    SlRealSo { p: usize, q: usize },
    /// `(sl(p+q, H), sp(p, q))`
    SlQuatSp { p: usize, q: usize },
    /// `(so(p+q, C), so(p, q))`
    SoComplexSo { p: usize, q: usize },
    /// `(so(2n, C), so*(2n))`
    SoComplexSoStar { n: usize },
    /// `(sp(n, C), sp(n, R))`
    SpComplexSpReal { n: usize },
    /// `(sp(p+q, C), sp(p, q))`
    SpComplexSp { p: usize, q: usize },
    /// `(so(p+r, q), so(p, q) ⊕ so(r))`
    SoSplit { p: usize, q: usize, r: usize },
    /// `(su(n, n), sl(n, C) ⊕ R)`
    SuSlComplex { n: usize },
    /// `(so(p+1, q+1), so(p, 1) ⊕ so(1, q))`
    SoLorentzPair { p: usize, q: usize },
    /// `(so(n, n), so(n, C))`
    SoSoComplex { n: usize },
    /// `(so*(4n), sl(n, H) ⊕ R)`
    SoStarSlQuat { n: usize },
    /// `(sp(n, R), sl(n, R) ⊕ R)`
    SpRealGl { n: usize },
    /// `(sp(n, n), sp(n, C))`
    SpSpComplex { n: usize },
}

fn term(name: &str, a: usize, b: usize) -> String {
    if b == 0 {
        format!("{name}({a})")
    } else {
        format!("{name}({a},{b})")
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PairKind::*;
        match *self {
            SlComplexSu { p, q } => write!(f, "sl({},C)/{}", p + q, term("su", p, q)),
            SlComplexSlReal { n } => write!(f, "sl({n},C)/sl({n},R)"),
            SlRealSo { p, q } => write!(f, "sl({},R)/{}", p + q, term("so", p, q)),
            SlQuatSp { p, q } => write!(f, "sl({},H)/{}", p + q, term("sp", p, q)),
            SoComplexSo { p, q } => write!(f, "so({},C)/{}", p + q, term("so", p, q)),
            SoComplexSoStar { n } => write!(f, "so({},C)/so*({})", 2 * n, 2 * n),
            SpComplexSpReal { n } => write!(f, "sp({n},C)/sp({n},R)"),
            SpComplexSp { p, q } => write!(f, "sp({},C)/{}", p + q, term("sp", p, q)),
            SoSplit { p, q, r } => {
                let mut h = Vec::new();
                if p + q > 1 {
                    h.push(if p == 0 { term("so", q, 0) } else { term("so", p, q) });
                }
                if r > 1 {
                    h.push(term("so", r, 0));
                }
                if h.is_empty() {
                    h.push("0".into());
                }
                write!(f, "{}/{}", term("so", p + r, q), h.join("+"))
            }
            SuSlComplex { n } => write!(f, "su({n},{n})/sl({n},C)+R"),
            SoLorentzPair { p, q } => write!(f, "so({},{})/so({p},1)+so(1,{q})", p + 1, q + 1),
            SoSoComplex { n } => write!(f, "so({n},{n})/so({n},C)"),
            SoStarSlQuat { n } => write!(f, "so*({})/sl({n},H)+R", 4 * n),
            SpRealGl { n } => write!(f, "sp({n},R)/sl({n},R)+R"),
            SpSpComplex { n } => write!(f, "sp({n},{n})/sp({n},C)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Arg {
    Int(usize),
    Field(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    name: String,
    args: Vec<Arg>,
}

impl Term {
    fn ints(&self) -> Option<Vec<usize>> {
        self.args
            .iter()
            .map(|a| match a {
                Arg::Int(n) => Some(*n),
                Arg::Field(_) => None,
            })
            .collect()
    }

    /// `name(n, F)`.
    fn over(&self, name: &str, field: char) -> Option<usize> {
        match self.args.as_slice() {
            [Arg::Int(n), Arg::Field(c)] if self.name == name && *c == field => Some(*n),
            _ => None,
        }
    }

    /// `name(p, q)` or `name(n)` read as `(n, 0)`.
    fn signature(&self, name: &str) -> Option<(usize, usize)> {
        if self.name != name {
            return None;
        }
        match self.ints()?.as_slice() {
            [n] => Some((*n, 0)),
            [p, q] => Some((*p, *q)),
            _ => None,
        }
    }
}

fn parse_side(s: &str) -> Option<Vec<Term>> {
    s.split('+').map(|t| parse_term(t.trim())).collect()
}

fn parse_term(t: &str) -> Option<Term> {
    if t == "R" || t == "0" {
        return Some(Term {
            name: t.into(),
            args: Vec::new(),
        });
    }
    let (name, rest) = t.split_once('(')?;
    let inner = rest.strip_suffix(')')?;
    let args = inner
        .split(',')
        .map(|a| {
            let a = a.trim();
            match a {
                "R" | "C" | "H" => Some(Arg::Field(a.chars().next().unwrap())),
                _ => a.parse().ok().map(Arg::Int),
            }
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Term {
        name: name.trim().into(),
        args,
    })
}

impl PairKind {
    /// Parses `"g/h"` in the notation of [`fmt::Display`], accepting the usual
    /// aliases (`su(n)` for `su(n,0)`, `gl(n,R)` for `sl(n,R)+R`, dropping
    /// trivial `so(1)` summands).
    pub fn parse(s: &str) -> Option<Self> {
        use PairKind::*;
        let (g, h) = s.split_once('/')?;
        let g = parse_term(g.trim())?;
        let mut h = parse_side(h)?;
        h.retain(|t| !(t.name == "so" && t.ints().is_some_and(|v| v == [1] || v == [0])) && t.name != "0");
        let single = if h.len() == 1 { Some(&h[0]) } else { None };
        let with_r = |name: &str, field: char| -> Option<usize> {
            match h.as_slice() {
                [t, r] if r.name == "R" => t.over(name, field),
                [t] if t.name == "gl" => t.over("gl", field),
                _ => None,
            }
        };
        if let Some(n) = g.over("sl", 'C') {
            let t = single?;
            if let Some((p, q)) = t.signature("su").filter(|(p, q)| p + q == n) {
                return Some(SlComplexSu { p, q });
            }
            return (t.over("sl", 'R') == Some(n)).then_some(SlComplexSlReal { n });
        }
        if let Some(n) = g.over("sl", 'R') {
            let (p, q) = single?.signature("so").filter(|(p, q)| p + q == n)?;
            return Some(SlRealSo { p, q });
        }
        if let Some(n) = g.over("sl", 'H') {
            let (p, q) = single?.signature("sp").filter(|(p, q)| p + q == n)?;
            return Some(SlQuatSp { p, q });
        }
        if let Some(n) = g.over("so", 'C') {
            let t = single?;
            if let Some((p, q)) = t.signature("so").filter(|(p, q)| p + q == n) {
                return Some(SoComplexSo { p, q });
            }
            let m = t.ints().filter(|_| t.name == "so*")?;
            return (m == [n] && n % 2 == 0).then_some(SoComplexSoStar { n: n / 2 });
        }
        if let Some(n) = g.over("sp", 'C') {
            let t = single?;
            if t.over("sp", 'R') == Some(n) {
                return Some(SpComplexSpReal { n });
            }
            let (p, q) = t.signature("sp").filter(|(p, q)| p + q == n)?;
            return Some(SpComplexSp { p, q });
        }
        if let Some(n) = g.over("sp", 'R') {
            return (with_r("sl", 'R').or_else(|| with_r("gl", 'R')) == Some(n)).then_some(SpRealGl { n });
        }
        if g.name == "so*" {
            let m = g.ints()?;
            let n = with_r("sl", 'H')?;
            return (m == [4 * n]).then_some(SoStarSlQuat { n });
        }
        if g.name == "su" {
            let (a, b) = g.signature("su")?;
            let n = with_r("sl", 'C')?;
            return (a == n && b == n).then_some(SuSlComplex { n });
        }
        if g.name == "sp" {
            let (a, b) = g.signature("sp")?;
            let n = single?.over("sp", 'C')?;
            return (a == n && b == n).then_some(SpSpComplex { n });
        }
        if g.name == "so" {
            let (a, b) = g.signature("so")?;
            if let Some(n) = single.and_then(|t| t.over("so", 'C')) {
                return (a == n && b == n).then_some(SoSoComplex { n });
            }
            // so(p,1)+so(1,q) with the Lorentz summands written out
            if let [x, y] = h.as_slice() {
                if let (Some((p, 1)), Some((1, q))) = (x.signature("so"), y.signature("so")) {
                    if a == p + 1 && b == q + 1 && x.ints()?.len() == 2 && y.ints()?.len() == 2 {
                        return Some(SoLorentzPair { p, q });
                    }
                }
            }
            let sig: Vec<(usize, usize, bool)> = h
                .iter()
                .map(|t| t.signature("so").map(|(p, q)| (p, q, t.ints().map_or(0, |v| v.len()) == 1)))
                .collect::<Option<_>>()?;
            // indefinite part (p, q) and compact part r; r = 1 summands were dropped
            let fits = |a: usize, b: usize| -> Option<PairKind> {
                match sig.as_slice() {
                    [] => (b == 0 && a == 1).then_some(SoSplit { p: 0, q: 0, r: 1 }),
                    [(p, q, _)] if *q == b && *p < a && a - p == 1 => Some(SoSplit { p: *p, q: *q, r: 1 }),
                    [(x, 0, true)] if *x == a && b == 1 => Some(SoSplit { p: 0, q: 1, r: a }),
                    [(x, 0, true)] if *x == b && a == 1 => Some(SoSplit { p: 0, q: b, r: 1 }),
                    [(p, q, false), (r, 0, true)] if *q == b && p + r == a => Some(SoSplit { p: *p, q: *q, r: *r }),
                    [(r, 0, true), (p, q, false)] if *q == b && p + r == a => Some(SoSplit { p: *p, q: *q, r: *r }),
                    [(x, 0, true), (y, 0, true)] if *x == a && *y == b => Some(SoSplit { p: 0, q: b, r: a }),
                    _ => None,
                }
            };
            return fits(a, b).or_else(|| fits(b, a));
        }
        None
    }

    /// Realizes the pair with its standard `σ`, `θ = -ᵀ` and maximal abelian `a`.
    pub fn realize(&self) -> Result<SymmetricPairRealization> {
        use PairKind::*;
        let label = self.to_string();
        let bad = |m: &str| CkfError::ParameterViolation(format!("{label}: {m}"));
        let (g, sigma, a, complex_n): (Arc<MatrixLieAlgebra>, EntryMap, Vec<SparseMat>, Option<usize>) = match *self {
            SlComplexSu { p, q: q_ } => {
                let n = p + q_;
                if n < 2 {
                    return Err(bad("need p + q ≥ 2"));
                }
                let a = (0..n - 1).map(|k| cx(n, &[(k, k, 1, 0), (k + 1, k + 1, -1, 0)])).collect();
                (
                    sl_complex(n)?,
                    EntryMap::NegTransposeConjugate(complex(&ipq(p, q_))),
                    a,
                    Some(n),
                )
            }
            SlComplexSlReal { n } => {
                if n < 2 {
                    return Err(bad("need n ≥ 2"));
                }
                let a = (0..n / 2).map(|k| cx(n, &[(2 * k, 2 * k + 1, 0, 1), (2 * k + 1, 2 * k, 0, -1)])).collect();
                (sl_complex(n)?, EntryMap::Conjugate(conj(n)), a, Some(n))
            }
            SlRealSo { p, q: q_ } => {
                let n = p + q_;
                if n < 2 {
                    return Err(bad("need p + q ≥ 2"));
                }
                let a = (0..n - 1).map(|k| real(n, &[(k, k, 1), (k + 1, k + 1, -1)])).collect();
                (sl_real(n)?, EntryMap::NegTransposeConjugate(ipq(p, q_)), a, None)
            }
            SlQuatSp { p, q: q_ } => {
                let n = p + q_;
                if n < 2 {
                    return Err(bad("need p + q ≥ 2"));
                }
                let a = (0..n - 1).map(|k| quat_real(n, &[(k, k, 1), (k + 1, k + 1, -1)])).collect();
                (
                    sl_quaternionic(n)?,
                    EntryMap::NegTransposeConjugate(quaternionic(&ipq(p, q_))),
                    a,
                    None,
                )
            }
            SoComplexSo { p, q: q_ } => {
                let n = p + q_;
                if n < 3 {
                    return Err(bad("need p + q ≥ 3"));
                }
                let mut a = Vec::new();
                for (start, len) in [(0, p), (p, q_)] {
                    for k in 0..len / 2 {
                        let (x, y) = (start + 2 * k, start + 2 * k + 1);
                        a.push(cx(n, &[(x, y, 0, 1), (y, x, 0, -1)]));
                    }
                }
                (so_complex(&ipq(p, q_))?, EntryMap::Conjugate(conj(n)), a, Some(n))
            }
            SoComplexSoStar { n } => {
                if n < 2 {
                    return Err(bad("need n ≥ 2"));
                }
                let a = (0..n).map(|k| cx(2 * n, &[(k, k, 1, 0), (n + k, n + k, -1, 0)])).collect();
                (
                    so_complex(&swap_halves(n))?,
                    EntryMap::NegTransposeConjugate(complex(&ipq(n, n))),
                    a,
                    Some(2 * n),
                )
            }
            SpComplexSpReal { n } => {
                if n < 1 {
                    return Err(bad("need n ≥ 1"));
                }
                let a = (0..n).map(|k| cx(2 * n, &[(k, n + k, 0, 1), (n + k, k, 0, -1)])).collect();
                (sp_complex(n)?, EntryMap::Conjugate(conj(2 * n)), a, Some(2 * n))
            }
            SpComplexSp { p, q: q_ } => {
                let n = p + q_;
                if n < 1 {
                    return Err(bad("need p + q ≥ 1"));
                }
                let k_form = signs(&[(p, 1), (q_, -1), (p, 1), (q_, -1)]);
                let a = (0..n).map(|k| cx(2 * n, &[(k, k, 1, 0), (n + k, n + k, -1, 0)])).collect();
                (
                    sp_complex(n)?,
                    EntryMap::NegTransposeConjugate(complex(&k_form)),
                    a,
                    Some(2 * n),
                )
            }
            SoSplit { p, q: q_, r } => {
                let n = p + q_ + r;
                if r < 1 || n < 2 || (p + r < 1) {
                    return Err(bad("need r ≥ 1 and p + q + r ≥ 2"));
                }
                let form = signs(&[(p + r, 1), (q_, -1)]);
                let g = build(&term("so", p + r, q_), &MatrixConditions::new(n).fixed_by(EntryMap::NegTransposeConjugate(form)))?;
                let a = (0..r.min(q_))
                    .map(|k| real(n, &[(p + k, p + r + k, 1), (p + r + k, p + k, 1)]))
                    .collect();
                (g, EntryMap::Conjugate(signs(&[(p, 1), (r, -1), (q_, 1)])), a, None)
            }
            SuSlComplex { n } => {
                if n < 1 {
                    return Err(bad("need n ≥ 1"));
                }
                let a = (0..n).map(|k| cx(2 * n, &[(k, n + k, 0, 1), (n + k, k, 0, -1)])).collect();
                (su(n, n)?, EntryMap::Conjugate(complex(&swap_halves(n))), a, None)
            }
            SoLorentzPair { p, q: q_ } => {
                let n = p + q_ + 2;
                let g = so_real(p + 1, q_ + 1)?;
                let (e, f) = (|i: usize| i, |j: usize| p + 1 + j);
                let mut a: Vec<SparseMat> = (0..p.min(q_))
                    .map(|k| real(n, &[(e(k), f(k + 1), 1), (f(k + 1), e(k), 1)]))
                    .collect();
                a.push(real(n, &[(e(p), f(0), 1), (f(0), e(p), 1)]));
                (g, EntryMap::Conjugate(signs(&[(p, 1), (1, -1), (1, 1), (q_, -1)])), a, None)
            }
            SoSoComplex { n } => {
                if n < 2 {
                    return Err(bad("need n ≥ 2"));
                }
                let a = (0..n).map(|k| real(2 * n, &[(k, n + k, 1), (n + k, k, 1)])).collect();
                (so_real(n, n)?, EntryMap::Conjugate(symplectic(n)), a, None)
            }
            SoStarSlQuat { n } => {
                if n < 1 {
                    return Err(bad("need n ≥ 1"));
                }
                let m = 2 * n;
                let a = (0..n)
                    .map(|k| {
                        cx(
                            2 * m,
                            &[(k, m + n + k, 1, 0), (m + n + k, k, 1, 0), (n + k, m + k, -1, 0), (m + k, n + k, -1, 0)],
                        )
                    })
                    .collect();
                // Y = [[0, Q], [Q, 0]] with Q = [[0, -I], [I, 0]]
                let y = swap_halves(m).compose(&symplectic(n).direct_sum(&symplectic(n)));
                (so_star(m)?, EntryMap::Conjugate(complex(&y)), a, None)
            }
            SpRealGl { n } => {
                if n < 1 {
                    return Err(bad("need n ≥ 1"));
                }
                let a = (0..n).map(|k| real(2 * n, &[(k, n + k, 1), (n + k, k, 1)])).collect();
                (sp_real(n)?, EntryMap::Conjugate(ipq(n, n)), a, None)
            }
            SpSpComplex { n } => {
                if n < 1 {
                    return Err(bad("need n ≥ 1"));
                }
                let a = (0..n).map(|k| quat_real(2 * n, &[(k, n + k, 1), (n + k, k, 1)])).collect();
                (
                    sp_quaternionic(n, n)?,
                    EntryMap::Conjugate(quaternionic(&symplectic(n))),
                    a,
                    None,
                )
            }
        };
        let sigma = InvolutionMap::from_entry_map(g.clone(), &sigma)?;
        let theta = InvolutionMap::from_entry_map(g.clone(), &EntryMap::NegTransposeConjugate(SignedPerm::identity(g.ambient_size())))?;
        let a_coords = a
            .iter()
            .map(|m| g.coordinates(m).ok_or_else(|| CkfError::InvalidPair(format!("{label}: a leaves g"))))
            .collect::<Result<Vec<_>>>()?;
        let pair = SymmetricPairRealization::new(label.clone(), sigma, theta, a_coords)?;
        match complex_n {
            Some(n) => {
                let j = mult_i(n).to_sparse();
                let cols = g
                    .basis()
                    .iter()
                    .map(|b| g.coordinates(&j.mul(b)))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| CkfError::InvalidPair(format!("{label}: g is not complex")))?;
                pair.with_complex_structure(QMatrix::from_columns(g.dim(), &cols))
            }
            None => Ok(pair),
        }
    }
}

