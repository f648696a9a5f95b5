use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{CkfError, Result};
use crate::exact::{indexed_vars, q, MultiPoly, QMatrix, Rational};

/// Coordinates used on the torus of an orthogonal algebra.
///
/// `Rotation` parametrizes the compact torus by rotation blocks
/// `[[0, x], [-x, 0]]`. `Eigen` uses the eigenvalue coordinates of the
/// complexified torus, `diag(w, -w)` per block, so that orthogonal and
/// special linear tori can be compared over the rationals (`w = i x`).
/// For sl and gl both conventions give the diagonal torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorusConvention {
    Rotation,
    Eigen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Sl,
    Gl,
    So,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub symbol: String,
    pub degree: u32,
    pub poly: MultiPoly,
}

/// Invariant polynomials of a complex classical algebra (or a direct sum of
/// such), restricted to a fixed maximal torus.
///
/// The torus is pinned by `torus_basis`: matrices in the defining
/// representation such that the torus element with coordinates `v` is
/// `Σ v_i · torus_basis[i]`.
#[derive(Clone, Debug)]
pub struct InvariantPresentation {
    label: String,
    prefix: String,
    convention: TorusConvention,
    vars: Vec<String>,
    torus_basis: Vec<QMatrix>,
    size: usize,
    generators: Vec<Generator>,
    coefficients: Vec<MultiPoly>,
    reflections: Vec<BTreeMap<String, MultiPoly>>,
}

fn parse_label(label: &str) -> Result<(Family, usize)> {
    let bad = || CkfError::UnsupportedFamily(label.to_string());
    let s: String = label.chars().filter(|c| !c.is_whitespace()).collect();
    let (name, rest) = s.split_once('(').ok_or_else(bad)?;
    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
    let (n, field) = inner.split_once(',').ok_or_else(bad)?;
    if field != "C" {
        return Err(bad());
    }
    let n: usize = n.parse().map_err(|_| bad())?;
    let family = match name {
        "sl" => Family::Sl,
        "gl" => Family::Gl,
        "so" => Family::So,
        _ => return Err(bad()),
    };
    Ok((family, n))
}

fn unit(n: usize, i: usize, j: usize, v: i64) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    m.set(i, j, q(v));
    m
}

/// Presentation over variables `x1, x2, ...` in rotation coordinates.
pub fn build_presentation(label: &str) -> Result<InvariantPresentation> {
    build_presentation_with(label, "x", TorusConvention::Rotation)
}

pub fn build_presentation_with(
    label: &str,
    prefix: &str,
    convention: TorusConvention,
) -> Result<InvariantPresentation> {
    let (family, n) = parse_label(label)?;
    let rank = match family {
        Family::Sl => n.saturating_sub(1),
        Family::Gl => n,
        Family::So => n / 2,
    };
    let vars = indexed_vars(prefix, rank);
    let torus_basis: Vec<QMatrix> = (0..rank)
        .map(|i| match family {
            Family::Sl => &unit(n, i, i, 1) - &unit(n, n - 1, n - 1, 1),
            Family::Gl => unit(n, i, i, 1),
            Family::So => match convention {
                TorusConvention::Rotation => &unit(n, 2 * i, 2 * i + 1, 1) - &unit(n, 2 * i + 1, 2 * i, 1),
                TorusConvention::Eigen => &unit(n, 2 * i, 2 * i, 1) - &unit(n, 2 * i + 1, 2 * i + 1, 1),
            },
        })
        .collect();
    let element = symbolic_element(&vars, &torus_basis, n);
    let coefficients = char_poly_symbolic(&element);

    let gen = |k: usize| Generator {
        symbol: format!("f{k}"),
        degree: k as u32,
        poly: coefficients[k].clone(),
    };
    let mut generators: Vec<Generator> = match family {
        Family::Sl => (2..=n).map(gen).collect(),
        Family::Gl => (1..=n).map(gen).collect(),
        Family::So if n % 2 == 1 => (1..=rank).map(|k| gen(2 * k)).collect(),
        Family::So => (1..rank).map(|k| gen(2 * k)).collect(),
    };
    if family == Family::So && n % 2 == 0 && rank > 0 {
        // Pfaffian of the rotation element with the same parameters, so
        // that f̃ = x1⋯xm in either convention.
        let rot: Vec<QMatrix> = (0..rank)
            .map(|i| &unit(n, 2 * i, 2 * i + 1, 1) - &unit(n, 2 * i + 1, 2 * i, 1))
            .collect();
        generators.push(Generator {
            symbol: "pf".into(),
            degree: rank as u32,
            poly: pfaffian(&symbolic_element(&vars, &rot, n)),
        });
    }

    let reflections = weyl_reflections(family, n, &vars);
    Ok(InvariantPresentation {
        label: format!(
            "{}({n},C)",
            match family {
                Family::Sl => "sl",
                Family::Gl => "gl",
                Family::So => "so",
            }
        ),
        prefix: prefix.to_string(),
        convention,
        vars,
        torus_basis,
        size: n,
        generators,
        coefficients,
        reflections,
    })
}

fn symbolic_element(vars: &[String], basis: &[QMatrix], n: usize) -> Vec<Vec<MultiPoly>> {
    let mut m = vec![vec![MultiPoly::zero(vars); n]; n];
    for (k, b) in basis.iter().enumerate() {
        let v = MultiPoly::var(vars, k);
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let c = b.get(i, j);
                if !c.is_zero() {
                    *cell = &*cell + &v.scale(c);
                }
            }
        }
    }
    m
}

/// Coefficients `[1, f1, ..., fn]` of `det(λI - A) = Σ f_k λ^{n-k}` for a
/// square matrix of polynomials (Faddeev–LeVerrier).
pub fn char_poly_symbolic(a: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    let n = a.len();
    let vars: Vec<String> = a
        .first()
        .and_then(|r| r.first())
        .map(|p| p.vars().to_vec())
        .unwrap_or_default();
    let zero = MultiPoly::zero(&vars);
    let matmul = |x: &[Vec<MultiPoly>], y: &[Vec<MultiPoly>]| -> Vec<Vec<MultiPoly>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = zero.clone();
                        for (k, yk) in y.iter().enumerate() {
                            if !x[i][k].is_zero() && !yk[j].is_zero() {
                                acc = &acc + &(&x[i][k] * &yk[j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![MultiPoly::one(&vars)];
    let mut m = vec![vec![zero.clone(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + f_{k-1} I
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[k - 1];
        }
        m = next;
        let am = matmul(a, &m);
        let mut tr = zero.clone();
        for (i, row) in am.iter().enumerate() {
            tr = &tr + &row[i];
        }
        coeffs.push(tr.scale(&(-Rational::new(1.into(), (k as i64).into()))));
    }
    coeffs
}

/// Pfaffian of a skew-symmetric matrix of polynomials, by expansion along
/// the first row (sum over perfect matchings).
pub fn pfaffian(a: &[Vec<MultiPoly>]) -> MultiPoly {
    let vars: Vec<String> = a
        .first()
        .and_then(|r| r.first())
        .map(|p| p.vars().to_vec())
        .unwrap_or_default();
    fn rec(a: &[Vec<MultiPoly>], idx: &[usize], vars: &[String]) -> MultiPoly {
        if idx.is_empty() {
            return MultiPoly::one(vars);
        }
        if idx.len() % 2 == 1 {
            return MultiPoly::zero(vars);
        }
        let first = idx[0];
        let mut acc = MultiPoly::zero(vars);
        for pos in 1..idx.len() {
            let entry = &a[first][idx[pos]];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..]
                .iter()
                .enumerate()
                .filter(|&(p, _)| p + 1 != pos)
                .map(|(_, &i)| i)
                .collect();
            let term = entry * &rec(a, &rest, vars);
            acc = if pos % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let idx: Vec<usize> = (0..a.len()).collect();
    rec(a, &idx, &vars)
}

fn weyl_reflections(family: Family, n: usize, vars: &[String]) -> Vec<BTreeMap<String, MultiPoly>> {
    let r = vars.len();
    let var = |i: usize| MultiPoly::var(vars, i);
    let identity = || -> BTreeMap<String, MultiPoly> {
        vars.iter().enumerate().map(|(i, v)| (v.clone(), var(i))).collect()
    };
    let swap = |i: usize, j: usize| {
        let mut m = identity();
        m.insert(vars[i].clone(), var(j));
        m.insert(vars[j].clone(), var(i));
        m
    };
    let mut out = Vec::new();
    match family {
        Family::Sl => {
            for i in 0..r.saturating_sub(1) {
                out.push(swap(i, i + 1));
            }
            if r >= 1 {
                // swap of the last free coordinate with the eliminated one
                let mut m = identity();
                let mut minus_sum = MultiPoly::zero(vars);
                for i in 0..r {
                    minus_sum = &minus_sum - &var(i);
                }
                m.insert(vars[r - 1].clone(), minus_sum);
                out.push(m);
            }
        }
        Family::Gl => {
            for i in 0..r.saturating_sub(1) {
                out.push(swap(i, i + 1));
            }
        }
        Family::So => {
            for i in 0..r.saturating_sub(1) {
                out.push(swap(i, i + 1));
            }
            if r >= 1 && n % 2 == 1 {
                let mut m = identity();
                m.insert(vars[r - 1].clone(), -&var(r - 1));
                out.push(m);
            } else if r >= 2 {
                // (x_{m-1}, x_m) -> (-x_m, -x_{m-1})
                let mut m = identity();
                m.insert(vars[r - 2].clone(), -&var(r - 1));
                m.insert(vars[r - 1].clone(), -&var(r - 2));
                out.push(m);
            }
        }
    }
    out
}

impl InvariantPresentation {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn convention(&self) -> TorusConvention {
        self.convention
    }

    pub fn torus_vars(&self) -> &[String] {
        &self.vars
    }

    pub fn torus_basis(&self) -> &[QMatrix] {
        &self.torus_basis
    }

    /// Size of the defining representation.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, symbol: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.symbol == symbol)
    }

    pub fn symbols(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.symbol.clone()).collect()
    }

    /// `f_k` from the characteristic polynomial of the torus element
    /// (`f_0 = 1`, zero beyond the size). Only for simple factors.
    pub fn char_coefficient(&self, k: usize) -> MultiPoly {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    /// Weyl reflections generating the Weyl group, as substitutions.
    pub fn reflections(&self) -> &[BTreeMap<String, MultiPoly>] {
        &self.reflections
    }

    /// Symbols of generators not fixed by some generating reflection.
    pub fn weyl_violations(&self) -> Vec<String> {
        self.generators
            .iter()
            .filter(|g| {
                self.reflections.iter().any(|s| {
                    g.poly
                        .substitute(s, &self.vars)
                        .map_or(true, |img| img != g.poly)
                })
            })
            .map(|g| g.symbol.clone())
            .collect()
    }

    /// The empty presentation (invariants of the zero algebra).
    pub fn trivial() -> Self {
        Self {
            label: "0".into(),
            prefix: String::new(),
            convention: TorusConvention::Rotation,
            vars: Vec::new(),
            torus_basis: Vec::new(),
            size: 0,
            generators: Vec::new(),
            coefficients: vec![MultiPoly::one(&[])],
            reflections: Vec::new(),
        }
    }

    /// Presentation of a direct sum. Torus variables must be disjoint;
    /// generator symbols are qualified by each factor's variable prefix.
    pub fn tensor(factors: &[&InvariantPresentation]) -> Result<Self> {
        let mut vars: Vec<String> = Vec::new();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for f in factors {
            for v in &f.vars {
                if !seen.insert(v.clone()) {
                    return Err(CkfError::VariableCollision(v.clone()));
                }
                vars.push(v.clone());
            }
        }
        let size: usize = factors.iter().map(|f| f.size).sum();
        let mut torus_basis = Vec::new();
        let mut generators = Vec::new();
        let mut reflections = Vec::new();
        let mut symbols: BTreeSet<String> = BTreeSet::new();
        let mut offset = 0;
        for f in factors {
            for b in &f.torus_basis {
                let mut m = QMatrix::zeros(size, size);
                for i in 0..f.size {
                    for j in 0..f.size {
                        m.set(offset + i, offset + j, b.get(i, j).clone());
                    }
                }
                torus_basis.push(m);
            }
            for g in &f.generators {
                let symbol = if f.prefix.is_empty() {
                    g.symbol.clone()
                } else {
                    format!("{}.{}", f.prefix, g.symbol)
                };
                if !symbols.insert(symbol.clone()) {
                    return Err(CkfError::VariableCollision(symbol));
                }
                generators.push(Generator {
                    symbol,
                    degree: g.degree,
                    poly: g.poly.embed(&vars)?,
                });
            }
            for s in &f.reflections {
                let mut m: BTreeMap<String, MultiPoly> = vars
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.clone(), MultiPoly::var(&vars, i)))
                    .collect();
                for (k, img) in s {
                    m.insert(k.clone(), img.embed(&vars)?);
                }
                reflections.push(m);
            }
            offset += f.size;
        }
        let label = if factors.is_empty() {
            "0".to_string()
        } else {
            factors.iter().map(|f| f.label.as_str()).collect::<Vec<_>>().join("+")
        };
        Ok(Self {
            label,
            prefix: String::new(),
            convention: factors.first().map_or(TorusConvention::Rotation, |f| f.convention),
            vars: vars.clone(),
            torus_basis,
            size,
            generators,
            coefficients: vec![MultiPoly::one(&vars)],
            reflections,
        })
    }

    /// Writes an invariant torus polynomial as a polynomial in the
    /// generators (variables named by generator symbol). Fails when `f` is
    /// not in the subalgebra they generate.
    pub fn express_in_generators(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let f = if f.vars() == self.vars.as_slice() {
            f.clone()
        } else {
            f.embed(&self.vars)?
        };
        let symbols = self.symbols();
        let mut out = MultiPoly::zero(&symbols);
        let mut by_degree: BTreeMap<u32, Vec<(Rational, Vec<u32>)>> = BTreeMap::new();
        for (e, c) in f.terms() {
            by_degree.entry(e.iter().sum()).or_default().push((c.clone(), e.clone()));
        }
        for (d, terms) in by_degree {
            let target = MultiPoly::from_terms(&self.vars, terms);
            let exps = weighted_exponents(&self.generators.iter().map(|g| g.degree).collect::<Vec<_>>(), d);
            let columns: Vec<MultiPoly> = exps
                .iter()
                .map(|e| {
                    let mut p = MultiPoly::one(&self.vars);
                    for (g, &k) in self.generators.iter().zip(e) {
                        if k > 0 {
                            p = &p * &g.poly.pow(k);
                        }
                    }
                    p
                })
                .collect();
            let mut monos: BTreeSet<Vec<u32>> = target.terms().map(|(e, _)| e.clone()).collect();
            for c in &columns {
                monos.extend(c.terms().map(|(e, _)| e.clone()));
            }
            let monos: Vec<Vec<u32>> = monos.into_iter().collect();
            let ncol = columns.len();
            let mut aug = QMatrix::zeros(monos.len(), ncol + 1);
            for (r, m) in monos.iter().enumerate() {
                for (c, col) in columns.iter().enumerate() {
                    aug.set(r, c, col.coefficient(m));
                }
                aug.set(r, ncol, target.coefficient(m));
            }
            let (reduced, pivots) = aug.rref();
            if pivots.contains(&ncol) {
                return Err(CkfError::VariableMismatch(format!(
                    "degree {d} part is not a polynomial in the generators of {}",
                    self.label
                )));
            }
            let mut terms = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                terms.push((reduced.get(r, ncol).clone(), exps[p].clone()));
            }
            out = &out + &MultiPoly::from_terms(&symbols, terms);
        }
        Ok(out)
    }

    /// Evaluates a polynomial in generator symbols back to torus coordinates.
    pub fn evaluate_generators(&self, g: &MultiPoly) -> Result<MultiPoly> {
        let images: BTreeMap<String, MultiPoly> = self
            .generators
            .iter()
            .map(|gen| (gen.symbol.clone(), gen.poly.clone()))
            .collect();
        g.substitute(&images, &self.vars)
    }
}

/// Exponent vectors `e` with `Σ e_i w_i = d`.
fn weighted_exponents(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let max = left.checked_div(w).unwrap_or(0);
        for k in 0..=max {
            cur.push(k);
            rec(weights, i + 1, left - k * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for InvariantPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over [{}]", self.label, self.vars.join(", "))?;
        for g in &self.generators {
            writeln!(f, "  {} = {}", g.symbol, g.poly)?;
        }
        Ok(())
    }
}
