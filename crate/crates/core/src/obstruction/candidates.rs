//! Shipped (C, φ) data for the invariant-polynomial criterion, with the
//! matching matrix realizations of G/H, C and the torus of K_H.

use std::fmt;
use std::sync::Arc;

use crate::error::{CkfError, Result};
use crate::exact::{q, Rational, Subspace};
use crate::invariant::{place, sl_chain_diagram, so_family_enlarged_diagram, DiagramData};
use crate::lie::families::{sl_real, so_real};
use crate::lie::{EntryMap, HomogeneousPair, InvolutionMap, MatrixLieAlgebra, SignedPerm, SparseMat};

/// A non-symmetric homogeneous space with a shipped candidate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CandidateRecipe {
    /// `SO₀(p+r+s,q)/(SO₀(p,q)×SO(s))` with `C = SO(p+1)×SO(q)×SO(s)`;
    /// `s = 0` is the plain family.
    SoFamily { p: usize, q: usize, r: usize, s: usize },
    /// `SL(Σp_i + q, R)/Π SL(p_i, R)` with `C = SO(p_b+1)×Π_{i≠b} SO(p_i)`,
    /// `p_b` the first even block.
    SlChain { blocks: Vec<usize>, q: usize },
}

impl fmt::Display for CandidateRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateRecipe::SoFamily { p, q, r, s } => {
                write!(f, "so({},{q})/so({p},{q})", p + r + s)?;
                if *s > 0 {
                    write!(f, "+so({s})")?;
                }
                Ok(())
            }
            CandidateRecipe::SlChain { blocks, q } => {
                let n: usize = blocks.iter().sum::<usize>() + q;
                let h: Vec<String> = blocks.iter().map(|p| format!("sl({p},R)")).collect();
                write!(f, "sl({n},R)/{}", h.join("+"))
            }
        }
    }
}

fn parse_args(s: &str, name: &str) -> Option<Vec<String>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(|x| x.trim().to_string()).collect())
}

fn nums(args: &[String]) -> Option<Vec<usize>> {
    args.iter().map(|a| a.parse().ok()).collect()
}

impl CandidateRecipe {
    /// Parses `so(a,b)/so(c,b)[+so(s)]` and `sl(n,R)/sl(p,R)[+sl(p',R)...]`.
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (g, h) = s.split_once('/')?;
        let terms: Vec<&str> = h.split('+').collect();
        if let Some(ga) = parse_args(g, "so").and_then(|a| nums(&a)) {
            let [a, b] = ga[..] else { return None };
            let hb = nums(&parse_args(terms[0], "so")?)?;
            let [p, qq] = hb[..] else { return None };
            let s_dim = match terms.len() {
                1 => 0,
                2 => {
                    let t = nums(&parse_args(terms[1], "so")?)?;
                    let [s] = t[..] else { return None };
                    s
                }
                _ => return None,
            };
            if qq != b || a < p + s_dim + 1 {
                return None;
            }
            return Some(CandidateRecipe::SoFamily {
                p,
                q: b,
                r: a - p - s_dim,
                s: s_dim,
            });
        }
        let ga = parse_args(g, "sl")?;
        if ga.len() != 2 || ga[1] != "R" {
            return None;
        }
        let n: usize = ga[0].parse().ok()?;
        let mut blocks = Vec::new();
        for t in terms {
            let a = parse_args(t, "sl")?;
            if a.len() != 2 || a[1] != "R" {
                return None;
            }
            blocks.push(a[0].parse().ok()?);
        }
        let total: usize = blocks.iter().sum();
        if total >= n {
            return None;
        }
        Some(CandidateRecipe::SlChain { blocks, q: n - total })
    }

    /// The recipe this one enlarges, with the label of the added factor L.
    pub fn base(&self) -> Option<(CandidateRecipe, String)> {
        match self {
            CandidateRecipe::SoFamily { p, q, r, s } if *s > 0 => Some((
                CandidateRecipe::SoFamily { p: *p, q: *q, r: *r, s: 0 },
                format!("so({s})"),
            )),
            CandidateRecipe::SlChain { blocks, q } if blocks.len() > 1 => {
                let b = blocks.iter().position(|&p| p % 2 == 0)?;
                let others: Vec<String> = blocks
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != b)
                    .map(|(_, p)| format!("sl({p},R)"))
                    .collect();
                Some((
                    CandidateRecipe::SlChain {
                        blocks: vec![blocks[b]],
                        q: *q,
                    },
                    others.join("+"),
                ))
            }
            _ => None,
        }
    }

    /// Adds a factor `L` (`"so(s)"` for the orthogonal family, a `+`-joined
    /// list of `"sl(k,R)"` for the chain; `""` or `"0"` for none).
    pub fn enlarged_by(&self, l_label: &str) -> Result<Self> {
        let l: String = l_label.chars().filter(|c| !c.is_whitespace()).collect();
        if l.is_empty() || l == "0" {
            return Ok(self.clone());
        }
        let bad = || CkfError::CandidateIllFormed(format!("cannot enlarge {self} by {l_label}"));
        match self {
            CandidateRecipe::SoFamily { p, q, r, s } => {
                let a = nums(&parse_args(&l, "so").ok_or_else(bad)?).ok_or_else(bad)?;
                let [k] = a[..] else { return Err(bad()) };
                if k == 0 {
                    return Err(bad());
                }
                Ok(CandidateRecipe::SoFamily {
                    p: *p,
                    q: *q,
                    r: *r,
                    s: s + k,
                })
            }
            CandidateRecipe::SlChain { blocks, q } => {
                let mut blocks = blocks.clone();
                for t in l.split('+') {
                    let a = parse_args(t, "sl").ok_or_else(bad)?;
                    if a.len() != 2 || a[1] != "R" {
                        return Err(bad());
                    }
                    let k: usize = a[0].parse().map_err(|_| bad())?;
                    if k < 2 {
                        return Err(bad());
                    }
                    blocks.push(k);
                }
                Ok(CandidateRecipe::SlChain { blocks, q: *q })
            }
        }
    }

    /// Same homogeneous space up to reordering the chain's blocks.
    pub fn same_space(&self, other: &Self) -> bool {
        match (self, other) {
            (CandidateRecipe::SlChain { blocks: a, q: qa }, CandidateRecipe::SlChain { blocks: b, q: qb }) => {
                let (mut a, mut b) = (a.clone(), b.clone());
                a.sort_unstable();
                b.sort_unstable();
                a == b && qa == qb
            }
            _ => self == other,
        }
    }

    pub fn c_label(&self) -> String {
        match self {
            CandidateRecipe::SoFamily { p, q, s, .. } => {
                let mut l = format!("so({})+so({q})", p + 1);
                if *s > 0 {
                    l.push_str(&format!("+so({s})"));
                }
                l
            }
            CandidateRecipe::SlChain { blocks, .. } => {
                let b = blocks.iter().position(|&p| p % 2 == 0).unwrap_or(0);
                let mut parts = vec![format!("so({})", blocks[b] + 1)];
                parts.extend(
                    blocks
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != b)
                        .map(|(_, p)| format!("so({p})")),
                );
                parts.join("+")
            }
        }
    }

    pub fn phi_label(&self) -> String {
        match self.base() {
            Some((base, l)) => format!("enlarge({}, {l})", base.phi_label()),
            None => match self {
                CandidateRecipe::SoFamily { p, q, r, .. } => format!("phi_so_family({p},{q},{r})"),
                CandidateRecipe::SlChain { blocks, q } => {
                    format!("phi_sl_family({},{})", blocks[0] + q, blocks[0])
                }
            },
        }
    }

    pub fn build(&self) -> Result<DiagramCandidate> {
        match self {
            CandidateRecipe::SoFamily { p, q, r, s } => build_so(self, *p, *q, *r, *s),
            CandidateRecipe::SlChain { blocks, q } => build_sl(self, blocks, *q),
        }
    }
}

/// Matrix and invariant-polynomial data for one candidate.
#[derive(Clone, Debug)]
pub struct DiagramCandidate {
    pub recipe: CandidateRecipe,
    pub pair: HomogeneousPair,
    pub c_label: String,
    pub phi_label: String,
    /// `c` in coordinates of `g`.
    pub c: Subspace,
    /// Basis of the torus `t_H` of `K_H` in coordinates of `g`, in the
    /// order of the diagram's t variables.
    pub torus: Vec<Vec<Rational>>,
    pub diagram: DiagramData,
}

fn rotation(n: usize, a: usize, b: usize) -> SparseMat {
    SparseMat::from_entries(n, [(a, b, q(1)), (b, a, q(-1))])
}

/// `so` of the form `diag(signs)` restricted to the given coordinates.
fn so_block(n: usize, coords: &[usize], signs: &[i8]) -> Vec<SparseMat> {
    let mut out = Vec::new();
    for (i, &a) in coords.iter().enumerate() {
        for &b in &coords[i + 1..] {
            let other = if signs[a] == signs[b] { -1 } else { 1 };
            out.push(SparseMat::from_entries(n, [(a, b, q(1)), (b, a, q(other))]));
        }
    }
    out
}

fn coords_of(g: &MatrixLieAlgebra, ms: &[SparseMat], what: &str) -> Result<Vec<Vec<Rational>>> {
    ms.iter()
        .map(|m| {
            g.coordinates(m)
                .ok_or_else(|| CkfError::CandidateIllFormed(format!("{what} is not inside {}", g.label())))
        })
        .collect()
}

fn cartan_involution(g: &Arc<MatrixLieAlgebra>) -> Result<InvolutionMap> {
    let n = g.ambient_size();
    InvolutionMap::from_entry_map(g.clone(), &EntryMap::NegTransposeConjugate(SignedPerm::identity(n)))
}

fn assemble(
    recipe: &CandidateRecipe,
    g: Arc<MatrixLieAlgebra>,
    h: Vec<SparseMat>,
    c: Vec<SparseMat>,
    torus: Vec<SparseMat>,
    diagram: DiagramData,
) -> Result<DiagramCandidate> {
    let theta = cartan_involution(&g)?;
    let pair = HomogeneousPair::from_matrices(recipe.to_string(), theta, &h)?;
    let c = Subspace::from_spanning(g.dim(), coords_of(&g, &c, "C")?);
    let torus = coords_of(&g, &torus, "torus")?;
    Ok(DiagramCandidate {
        recipe: recipe.clone(),
        pair,
        c_label: recipe.c_label(),
        phi_label: recipe.phi_label(),
        c,
        torus,
        diagram,
    })
}

// Coordinates (p-block, r-block, s-block, q-block); the first p+r+s are
// positive for the form.
fn build_so(recipe: &CandidateRecipe, p: usize, q_: usize, r: usize, s: usize) -> Result<DiagramCandidate> {
    let diagram = so_family_enlarged_diagram(p, q_, r, s)?;
    let n = p + r + s + q_;
    let signs: Vec<i8> = (0..n).map(|i| if i < p + r + s { 1 } else { -1 }).collect();
    let pc: Vec<usize> = (0..p).collect();
    let rc: Vec<usize> = (p..p + r).collect();
    let sc: Vec<usize> = (p + r..p + r + s).collect();
    let qc: Vec<usize> = (p + r + s..n).collect();
    let g = so_real(p + r + s, q_)?;
    let mut h = so_block(n, &[pc.clone(), qc.clone()].concat(), &signs);
    h.extend(so_block(n, &sc, &signs));
    let mut c = so_block(n, &[pc.clone(), vec![rc[0]]].concat(), &signs);
    c.extend(so_block(n, &qc, &signs));
    c.extend(so_block(n, &sc, &signs));
    // the diagram's t_H is in rotation coordinates: its placed basis is real
    let t_coords = [pc, qc, sc].concat();
    let torus = place(diagram.t.torus_basis(), &t_coords, n)
        .iter()
        .map(SparseMat::from_dense)
        .collect();
    assemble(recipe, g, h, c, torus, diagram)
}

// Blocks laid out consecutively, then q extra coordinates.
fn build_sl(recipe: &CandidateRecipe, blocks: &[usize], q_: usize) -> Result<DiagramCandidate> {
    let diagram = sl_chain_diagram(blocks, q_)?;
    let b = blocks
        .iter()
        .position(|&p| p % 2 == 0)
        .expect("diagram construction found an even block");
    let n: usize = blocks.iter().sum::<usize>() + q_;
    let mut offsets = Vec::new();
    let mut acc = 0;
    for &p in blocks {
        offsets.push(acc);
        acc += p;
    }
    let block = |i: usize| -> Vec<usize> { (offsets[i]..offsets[i] + blocks[i]).collect() };
    let plus = vec![1i8; n];
    let g = sl_real(n)?;
    let mut h = Vec::new();
    for i in 0..blocks.len() {
        let bc = block(i);
        for &x in &bc {
            for &y in &bc {
                if x != y {
                    h.push(SparseMat::from_entries(n, [(x, y, q(1))]));
                }
            }
        }
        for w in bc.windows(2) {
            h.push(SparseMat::from_entries(n, [(w[0], w[0], q(1)), (w[1], w[1], q(-1))]));
        }
    }
    let order: Vec<usize> = std::iter::once(b).chain((0..blocks.len()).filter(|&i| i != b)).collect();
    let mut c = so_block(n, &[block(b), vec![acc]].concat(), &plus);
    for &i in &order[1..] {
        c.extend(so_block(n, &block(i), &plus));
    }
    // real rotation generators in the planes whose eigenvalue coordinates
    // the diagram uses (w = √-1 x)
    let mut torus = Vec::new();
    for &i in &order {
        let bc = block(i);
        for k in 0..bc.len() / 2 {
            torus.push(rotation(n, bc[2 * k], bc[2 * k + 1]));
        }
    }
    assemble(recipe, g, h, c, torus, diagram)
}
