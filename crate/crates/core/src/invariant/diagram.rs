use serde::Serialize;

use crate::error::{CkfError, Result};
use crate::exact::QMatrix;

use super::maps::{enlarge, phi_sl_family, phi_so_family, AlgebraMap, TorusEmbedding};
use super::presentation::{build_presentation_with, InvariantPresentation, TorusConvention};

/// Outcome of the diagram check; `failures` names generators whose
/// identity fails, tagged with the triangle (`g->c` or `h->t`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramCheck {
    pub commutes: bool,
    pub failures: Vec<String>,
}

/// Verifies both triangles as exact polynomial identities:
/// `rest_{g→c} f = φ(rest_{g→h} f)` for every generator `f` of g, and
/// `rest_{c→t} φ(f) = rest_{h→t} f` for every generator `f` of h.
#[allow(clippy::too_many_arguments)]
pub fn check_diagram_identities(
    g: &InvariantPresentation,
    h: &InvariantPresentation,
    c: &InvariantPresentation,
    phi: &AlgebraMap,
    g_to_h: &TorusEmbedding,
    g_to_c: &TorusEmbedding,
    h_to_t: &TorusEmbedding,
    c_to_t: &TorusEmbedding,
) -> Result<DiagramCheck> {
    let same = |a: &[String], b: &[String], what: &str| {
        if a == b {
            Ok(())
        } else {
            Err(CkfError::VariableMismatch(format!("{what}: {a:?} vs {b:?}")))
        }
    };
    same(phi.source().torus_vars(), h.torus_vars(), "source of phi")?;
    same(phi.target().torus_vars(), c.torus_vars(), "target of phi")?;
    same(g_to_h.source_vars(), g.torus_vars(), "g -> h source")?;
    same(g_to_h.target_vars(), h.torus_vars(), "g -> h target")?;
    same(g_to_c.source_vars(), g.torus_vars(), "g -> c source")?;
    same(g_to_c.target_vars(), c.torus_vars(), "g -> c target")?;
    same(h_to_t.source_vars(), h.torus_vars(), "h -> t source")?;
    same(c_to_t.source_vars(), c.torus_vars(), "c -> t source")?;
    same(h_to_t.target_vars(), c_to_t.target_vars(), "shared t_H variables")?;

    let mut failures = Vec::new();
    for f in g.generators() {
        let direct = g_to_c.apply(&f.poly)?;
        let via_h = phi.apply(&g_to_h.apply(&f.poly)?);
        match via_h {
            Ok(p) if p == direct => {}
            _ => failures.push(format!("{} (g->c)", f.symbol)),
        }
    }
    for f in phi.source().generators() {
        let img = phi
            .image(&f.symbol)
            .ok_or_else(|| CkfError::MissingImage(f.symbol.clone()))?;
        if c_to_t.apply(img)? != h_to_t.apply(&f.poly)? {
            failures.push(format!("{} (h->t)", f.symbol));
        }
    }
    Ok(DiagramCheck {
        commutes: failures.is_empty(),
        failures,
    })
}

/// A complete set of diagram data: presentations of g, h, c and the
/// common torus t_H, the map φ and the four embeddings.
#[derive(Clone, Debug)]
pub struct DiagramData {
    pub label: String,
    pub g: InvariantPresentation,
    pub h: InvariantPresentation,
    pub c: InvariantPresentation,
    pub t: InvariantPresentation,
    pub phi: AlgebraMap,
    pub g_to_h: TorusEmbedding,
    pub g_to_c: TorusEmbedding,
    pub h_to_t: TorusEmbedding,
    pub c_to_t: TorusEmbedding,
}

impl DiagramData {
    pub fn check(&self) -> Result<DiagramCheck> {
        self.check_with(&self.phi)
    }

    /// Same data with a different φ (mutation testing).
    pub fn check_with(&self, phi: &AlgebraMap) -> Result<DiagramCheck> {
        check_diagram_identities(
            &self.g,
            &self.h,
            &self.c,
            phi,
            &self.g_to_h,
            &self.g_to_c,
            &self.h_to_t,
            &self.c_to_t,
        )
    }
}

/// Places the defining-representation matrices of `basis` on the given
/// ambient coordinates.
pub fn place(basis: &[QMatrix], coords: &[usize], ambient: usize) -> Vec<QMatrix> {
    basis
        .iter()
        .map(|b| {
            assert_eq!(b.rows(), coords.len(), "placement size mismatch");
            let mut m = QMatrix::zeros(ambient, ambient);
            for (i, &ci) in coords.iter().enumerate() {
                for (j, &cj) in coords.iter().enumerate() {
                    m.set(ci, cj, b.get(i, j).clone());
                }
            }
            m
        })
        .collect()
}

struct Placed<'a> {
    pres: &'a InvariantPresentation,
    basis: Vec<QMatrix>,
}

impl<'a> Placed<'a> {
    fn new(pres: &'a InvariantPresentation, coords: &[usize], ambient: usize) -> Self {
        Self {
            pres,
            basis: place(pres.torus_basis(), coords, ambient),
        }
    }

    fn restrict_to(&self, other: &Placed) -> Result<TorusEmbedding> {
        TorusEmbedding::from_bases(self.pres.torus_vars(), &self.basis, other.pres.torus_vars(), &other.basis)
    }
}

fn assemble(
    label: String,
    ambient: usize,
    (g, g_coords): (InvariantPresentation, Vec<usize>),
    (h_coords, c_coords): (Vec<usize>, Vec<usize>),
    (t, t_coords): (InvariantPresentation, Vec<usize>),
    phi: AlgebraMap,
) -> Result<DiagramData> {
    let h = phi.source().clone();
    let c = phi.target().clone();
    let pg = Placed::new(&g, &g_coords, ambient);
    let ph = Placed::new(&h, &h_coords, ambient);
    let pc = Placed::new(&c, &c_coords, ambient);
    let pt = Placed::new(&t, &t_coords, ambient);
    let g_to_h = pg.restrict_to(&ph)?;
    let g_to_c = pg.restrict_to(&pc)?;
    let h_to_t = ph.restrict_to(&pt)?;
    let c_to_t = pc.restrict_to(&pt)?;
    Ok(DiagramData {
        label,
        g,
        h,
        c,
        t,
        phi,
        g_to_h,
        g_to_c,
        h_to_t,
        c_to_t,
    })
}

fn so(n: usize, prefix: &str, conv: TorusConvention) -> Result<InvariantPresentation> {
    build_presentation_with(&format!("so({n},C)"), prefix, conv)
}

fn sl(n: usize, prefix: &str) -> Result<InvariantPresentation> {
    build_presentation_with(&format!("sl({n},C)"), prefix, TorusConvention::Eigen)
}

/// Diagram for SO₀(p+r,q)/SO₀(p,q) with C = SO(p+1)×SO(q), p even, q odd.
///
/// Ambient coordinates are ordered (p-block, r-block, q-block). The torus
/// of so(p)⊕so(q) uses the rotation planes of the p- and q-blocks; C
/// contains the first r-coordinate.
pub fn so_family_diagram(p: usize, q: usize, r: usize) -> Result<DiagramData> {
    so_family_enlarged_diagram(p, q, r, 0)
}

/// The so family diagram enlarged by a compact factor L = SO(s) acting on
/// `s` further positive coordinates (K_L = L, restriction the identity).
/// `s = 0` gives the plain diagram.
pub fn so_family_enlarged_diagram(p: usize, q: usize, r: usize, s: usize) -> Result<DiagramData> {
    let phi = phi_so_family(p, q, r)?;
    let n = p + r + s + q;
    let pc: Vec<usize> = (0..p).collect();
    let rc: Vec<usize> = (p..p + r).collect();
    let sc: Vec<usize> = (p + r..p + r + s).collect();
    let qc: Vec<usize> = (p + r + s..n).collect();
    let cat = |parts: &[&[usize]]| -> Vec<usize> { parts.concat() };

    let g = so(n, "g", TorusConvention::Rotation)?;
    // rotation planes of g: those of the p-, q- and s-blocks first, then
    // the leftover coordinates paired up
    let even = |v: &[usize]| v.len() - v.len() % 2;
    let g_coords = cat(&[
        &pc,
        &qc[..even(&qc)],
        &sc[..even(&sc)],
        &rc,
        &qc[even(&qc)..],
        &sc[even(&sc)..],
    ]);
    let t_p = so(p, "t", TorusConvention::Rotation)?;
    let t_q = so(q, "u", TorusConvention::Rotation)?;
    let (phi, t, t_coords, label) = if s == 0 {
        let t = InvariantPresentation::tensor(&[&t_p, &t_q])?;
        (phi, t, cat(&[&pc, &qc]), format!("so({},{q})/so({p},{q})", p + r))
    } else {
        let l = so(s, "l", TorusConvention::Rotation)?;
        let id = AlgebraMap::identity(&l);
        let phi = enlarge(&phi, &l, &l, &id)?;
        let t = InvariantPresentation::tensor(&[&t_p, &t_q, &l])?;
        (
            phi,
            t,
            cat(&[&pc, &qc, &sc]),
            format!("so({},{q})/so({p},{q})+so({s})", p + r + s),
        )
    };
    let h_coords = cat(&[&pc, &qc, &sc]);
    let c_coords = cat(&[&pc, &rc[..1], &qc, &sc]);
    assemble(label, n, (g, g_coords), (h_coords, c_coords), (t, t_coords), phi)
}

/// Diagram for SL(n,R)/SL(m,R) with C = SO(m+1), m even, in eigenvalue
/// coordinates.
pub fn sl_family_diagram(n: usize, m: usize) -> Result<DiagramData> {
    sl_chain_diagram(&[m], n - m)
}

/// Diagram for SL(p₁+⋯+p_k+q, R)/(SL(p₁,R)×⋯×SL(p_k,R)), obtained from
/// the SL(p_b+q)/SL(p_b) diagram (p_b the first even block) by enlarging
/// with L = Π_{i≠b} SL(p_i), K_L = Π SO(p_i).
pub fn sl_chain_diagram(blocks: &[usize], q: usize) -> Result<DiagramData> {
    let b = blocks
        .iter()
        .position(|&p| p >= 2 && p % 2 == 0)
        .ok_or_else(|| CkfError::ParameterViolation(format!("no even block >= 2 in {blocks:?}")))?;
    if q < 1 || blocks.iter().any(|&p| p < 2) {
        return Err(CkfError::ParameterViolation(format!(
            "need q >= 1 and blocks >= 2; got {blocks:?}, q = {q}"
        )));
    }
    let total: usize = blocks.iter().sum::<usize>() + q;
    let mut offsets = Vec::new();
    let mut acc = 0;
    for &p in blocks {
        offsets.push(acc);
        acc += p;
    }
    let block = |i: usize| -> Vec<usize> { (offsets[i]..offsets[i] + blocks[i]).collect() };
    let q0 = acc;

    let base = phi_sl_family(blocks[b] + q, blocks[b])?;
    let others: Vec<usize> = (0..blocks.len()).filter(|&i| i != b).collect();

    let ls: Vec<InvariantPresentation> = others
        .iter()
        .map(|&i| sl(blocks[i], &format!("l{}", i + 1)))
        .collect::<Result<_>>()?;
    let kls: Vec<InvariantPresentation> = others
        .iter()
        .map(|&i| so(blocks[i], &format!("k{}", i + 1), TorusConvention::Eigen))
        .collect::<Result<_>>()?;
    let l = InvariantPresentation::tensor(&ls.iter().collect::<Vec<_>>())?;
    let kl = InvariantPresentation::tensor(&kls.iter().collect::<Vec<_>>())?;
    let other_coords: Vec<usize> = others.iter().flat_map(|&i| block(i)).collect();
    let l_basis = place(l.torus_basis(), &other_coords, total);
    let kl_basis = place(kl.torus_basis(), &other_coords, total);
    let rest_l = AlgebraMap::restriction(
        &l,
        &kl,
        &TorusEmbedding::from_bases(l.torus_vars(), &l_basis, kl.torus_vars(), &kl_basis)?,
    )?;
    let phi = if others.is_empty() {
        base
    } else {
        enlarge(&base, &l, &kl, &rest_l)?
    };

    let g = sl(total, "g")?;
    let g_coords: Vec<usize> = (0..total).collect();
    let t_h = so(blocks[b], "t", TorusConvention::Eigen)?;
    let t = InvariantPresentation::tensor(&[&t_h, &kl])?;
    let hb = block(b);
    let h_coords = [hb.clone(), other_coords.clone()].concat();
    let c_coords = [hb.clone(), vec![q0], other_coords.clone()].concat();
    let t_coords = h_coords.clone();
    let label = format!(
        "sl({total},R)/{}",
        blocks.iter().map(|p| format!("sl({p},R)")).collect::<Vec<_>>().join("+")
    );
    assemble(label, total, (g, g_coords), (h_coords, c_coords), (t, t_coords), phi)
}
