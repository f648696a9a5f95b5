//! The acceptance gate: one PASS/FAIL line per criterion, then a single
//! assertion that every criterion passed. Run with `--nocapture` to see the
//! lines on success.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ckf_core::catalog::{Catalog, Table};
use ckf_core::exact::{q, MultiPoly};
use ckf_core::invariant::{build_presentation, build_presentation_with, so_family_diagram, DiagramData, TorusConvention};
use ckf_core::lie::{fixed_subalgebra, PairKind, Sampling, SymmetricPairRealization};
use ckf_core::obstruction::{check_type_cr, decide, diagram_conditions, CandidateRecipe, DecideOptions, Subject, Verdict};
use ckf_core::roots::{HalfSignature, Multiplicity, RestrictedRootData, Signature, Unit4};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn(&Catalog) -> Outcome);

/// Bound on the rank of the complex simple algebra a catalog row is built from.
const RANK_BOUND: i64 = 4;

fn fail(msg: impl Into<String>) -> Outcome {
    Err(msg.into())
}

fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    std::thread::scope(|s| {
        let f = &f;
        let handles: Vec<_> = items.iter().map(|x| s.spawn(move || f(x))).collect();
        handles.into_iter().map(|h| h.join().expect("worker thread")).collect()
    })
}

fn collect_errors(results: Vec<Outcome>) -> Outcome {
    let errs: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs.join("; "))
    }
}

fn realize(label: &str) -> Result<SymmetricPairRealization, String> {
    PairKind::parse(label)
        .ok_or_else(|| format!("{label}: not a symmetric pair label"))?
        .realize()
        .map_err(|e| format!("{label}: {e}"))
}

/// Labels of realized rows of `table` at every tuple within the rank bound.
fn table_labels(cat: &Catalog, table: Table) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for e in cat.table(table).filter(|e| e.realization.is_some()) {
        for p in e.tuples_up_to(RANK_BOUND).map_err(|e| e.to_string())? {
            let inst = e.instantiate(&p).map_err(|e| e.to_string())?;
            out.extend(inst.label);
        }
    }
    Ok(out)
}

/// Every catalog instance within the rank bound that is a symmetric pair.
fn realized_pairs(cat: &Catalog) -> Result<Vec<String>, String> {
    let mut labels = BTreeSet::new();
    for e in cat.entries.iter().filter(|e| e.realization.is_some()) {
        for p in e.tuples_up_to(RANK_BOUND).map_err(|e| e.to_string())? {
            let inst = e.instantiate(&p).map_err(|e| e.to_string())?;
            labels.extend(inst.label.filter(|l| PairKind::parse(l).is_some()));
        }
    }
    Ok(labels.into_iter().collect())
}

fn table2_type_cr(cat: &Catalog) -> Outcome {
    let labels = table_labels(cat, Table::T2)?;
    if labels.is_empty() {
        return fail("no table 2 instances");
    }
    collect_errors(par_map(&labels, |label| {
        let real = realize(label)?;
        let report = check_type_cr(&real).map_err(|e| format!("{label}: {e}"))?;
        if report.verdict != Verdict::Obstructed {
            return fail(format!("{label}: type (C,R) did not fire"));
        }
        let data = real.restricted_root_decomposition().map_err(|e| format!("{label}: {e}"))?.data;
        if data.is_basic() {
            return fail(format!("{label}: root data computed basic"));
        }
        Ok(())
    }))
}

fn hyperbolic(label: &str) -> Result<Option<Vec<ckf_core::exact::Rational>>, String> {
    let real = realize(label)?;
    let found = real.find_hyperbolic_witness(&Sampling::default()).witness;
    if let Some(x) = &found {
        // recheck outside the search: z_g(X₀) = h^a and X₀ ∈ p
        if real.g().centralizer(std::slice::from_ref(x)) != real.associated_subalgebra() || !real.p().contains(x) {
            return Err(format!("{label}: witness fails the centralizer check"));
        }
    }
    Ok(found)
}

fn table3_hyperbolic(cat: &Catalog) -> Outcome {
    let mut labels = Vec::new();
    for e in cat.table(Table::T3).filter(|e| e.realization.is_some()) {
        let first = e.tuples_up_to(8).map_err(|e| e.to_string())?.into_iter().next();
        let p = first.ok_or_else(|| format!("{}: no admissible tuple", e.id))?;
        labels.extend(e.instantiate(&p).map_err(|e| e.to_string())?.label);
    }
    if labels.len() < 10 {
        return fail(format!("only {} table 3 rows instantiated", labels.len()));
    }
    let mut results = par_map(&labels, |l| match hyperbolic(l)? {
        Some(_) => Ok(()),
        None => fail(format!("{l}: no hyperbolic witness")),
    });
    let controls = ["sl(3,R)/so(3)", "sl(2,C)/su(2)", "so(4,1)/so(4)", "sp(2,C)/sp(2)"];
    results.extend(par_map(&controls, |l| match hyperbolic(l)? {
        None => Ok(()),
        Some(_) => fail(format!("{l}: Riemannian control produced a witness")),
    }));
    collect_errors(results)
}

fn candidate_holds(recipe: &CandidateRecipe) -> Result<ckf_core::obstruction::DiagramCandidate, String> {
    let cand = recipe.build().map_err(|e| format!("{recipe}: {e}"))?;
    let cond = diagram_conditions(&cand, &Sampling::default()).map_err(|e| format!("{recipe}: {e}"))?;
    if !cond.holds() {
        return Err(format!("{recipe}: {cond:?}"));
    }
    let check = cand.diagram.check().map_err(|e| format!("{recipe}: {e}"))?;
    if !check.commutes {
        return Err(format!("{recipe}: diagram fails on {}", check.failures.join(", ")));
    }
    Ok(cand)
}

const SO_CONFIGS: [(usize, usize, usize); 3] = [(2, 1, 1), (2, 3, 1), (4, 1, 2)];

fn so_family_diagrams(_: &Catalog) -> Outcome {
    collect_errors(par_map(&SO_CONFIGS, |&(p, qq, r)| {
        let recipe = CandidateRecipe::SoFamily { p, q: qq, r, s: 0 };
        let cand = candidate_holds(&recipe)?;
        let cond = diagram_conditions(&cand, &Sampling::default()).map_err(|e| e.to_string())?;
        let (dim_c, dim_kh) = ((p + 1) * p / 2 + qq * (qq - 1) / 2, p * (p - 1) / 2 + qq * (qq - 1) / 2);
        if (cond.dim_c, cond.dim_k_cap_h) != (dim_c, dim_kh) || !cond.torus_ok {
            return fail(format!("{recipe}: dims {}/{} torus {}", cond.dim_c, cond.dim_k_cap_h, cond.torus_ok));
        }
        Ok(())
    }))
}

fn sl_chains(_: &Catalog) -> Outcome {
    let configs = [(3usize, 2usize), (4, 2), (5, 4)];
    let mut odd_seen = 0;
    let results = par_map(&configs, |&(n, m)| {
        let recipe = CandidateRecipe::SlChain { blocks: vec![m], q: n - m };
        let cand = candidate_holds(&recipe)?;
        let phi = &cand.diagram.phi;
        let mut odd = 0;
        for g in phi.source().generators().iter().filter(|g| g.degree % 2 == 1) {
            odd += 1;
            if !phi.image(&g.symbol).is_some_and(MultiPoly::is_zero) {
                return Err(format!("{recipe}: φ({}) is not zero", g.symbol));
            }
        }
        Ok(odd)
    });
    let mut errs = Vec::new();
    for r in results {
        match r {
            Ok(k) => odd_seen += k,
            Err(e) => errs.push(e),
        }
    }
    if odd_seen == 0 {
        errs.push("no odd-degree generator exercised".into());
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs.join("; "))
    }
}

fn family_dimensions(cat: &Catalog) -> Outcome {
    let labels = realized_pairs(cat)?;
    collect_errors(par_map(&labels, |label| {
        let real = realize(label)?;
        let dec = real.restricted_root_decomposition().map_err(|e| format!("{label}: {e}"))?;
        let data = &dec.data;
        let r = data.rank();
        let family = data.enumerate_family(RANK_BOUND as usize).map_err(|e| format!("{label}: {e}"))?;
        let basic = family
            .iter()
            .find(|m| m.basic)
            .ok_or_else(|| format!("{label}: family has no basic member"))?;
        let top = basic.data.dim_k_cap_h();
        for bits in 0..1u64 << r {
            let eps = Signature::from_bits(r, bits);
            let t = basic.data.twist(&eps).map_err(|e| e.to_string())?;
            let d = t.dim_k_cap_h();
            if d > top || (d == top) != t.is_basic() {
                return fail(format!("{label} {eps}: dim {d} vs basic {top}, basic={}", t.is_basic()));
            }
            // independent: k ∩ g^{σ_ε} from the matrix involution
            let sigma = real.sigma_eps_involution(&dec, &eps).map_err(|e| e.to_string())?;
            let matrix = real.k().intersect(&fixed_subalgebra(&sigma, 1)).dim();
            let from_roots = data.twist(&eps).map_err(|e| e.to_string())?.dim_k_cap_h();
            if matrix != from_roots {
                return fail(format!("{label} {eps}: matrix {matrix} vs root data {from_roots}"));
            }
        }
        Ok(())
    }))
}

fn all_half_signatures(r: usize) -> Vec<HalfSignature> {
    (0..4usize.pow(r as u32))
        .map(|mut k| HalfSignature {
            values_on_simple: (0..r)
                .map(|_| {
                    let u = Unit4::ALL[k % 4];
                    k /= 4;
                    u
                })
                .collect(),
        })
        .collect()
}

fn half_signatures(cat: &Catalog) -> Outcome {
    let labels = realized_pairs(cat)?;
    let results = par_map(&labels, |label| -> Result<bool, String> {
        let real = realize(label)?;
        let dec = real.restricted_root_decomposition().map_err(|e| format!("{label}: {e}"))?;
        let r = dec.data.rank();
        if r > 2 {
            return Ok(false);
        }
        for heps in all_half_signatures(r) {
            let g_heps = real.g_halfeps_subalgebra(&dec, &heps).map_err(|e| e.to_string())?;
            let sigma = real.sigma_eps_involution(&dec, &heps.square()).map_err(|e| e.to_string())?;
            let h_eps = fixed_subalgebra(&sigma, 1);
            if real.h().intersect(&g_heps) != h_eps.intersect(&g_heps) {
                return Err(format!("{label} {heps}: h∩g_ε̂ differs from h_ε∩g_ε̂"));
            }
        }
        Ok(true)
    });
    let mut checked = 0;
    let mut errs = Vec::new();
    for r in results {
        match r {
            Ok(c) => checked += c as usize,
            Err(e) => errs.push(e),
        }
    }
    if checked == 0 {
        errs.push("no pair of rank ≤ 2".into());
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs.join("; "))
    }
}

fn counts(data: &RestrictedRootData, what: &str) -> Outcome {
    let r = data.rank();
    let family = data.enumerate_family(RANK_BOUND as usize).map_err(|e| e.to_string())?;
    if family.len() != 1 << r {
        return fail(format!("{what}: {} family members, rank {r}", family.len()));
    }
    for m in &family {
        let lifts = data.halfsig_lifts(&m.signature).map_err(|e| e.to_string())?;
        let distinct: BTreeSet<String> = lifts.iter().map(|l| l.to_string()).collect();
        if lifts.len() != 1 << r || distinct.len() != lifts.len() {
            return fail(format!("{what} {}: {} lifts", m.signature, lifts.len()));
        }
        if let Some(l) = lifts.iter().find(|l| l.square() != m.signature) {
            return fail(format!("{what}: {l} does not square to {}", m.signature));
        }
    }
    Ok(())
}

fn counting(cat: &Catalog) -> Outcome {
    let types = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"];
    let mut results: Vec<Outcome> = types
        .iter()
        .map(|t| {
            let data = RestrictedRootData::from_cartan_type(t, Multiplicity::new(1, 1), 0, 0).map_err(|e| e.to_string())?;
            counts(&data, t)
        })
        .collect();
    let labels = realized_pairs(cat)?;
    results.extend(par_map(&labels, |label| {
        let data = realize(label)?.restricted_root_decomposition().map_err(|e| e.to_string())?.data;
        counts(&data, label)
    }));
    collect_errors(results)
}

fn invariant_identities(_: &Catalog) -> Outcome {
    let mut errs = Vec::new();
    for m in 1..=5 {
        let p = build_presentation(&format!("so({},C)", 2 * m)).map_err(|e| e.to_string())?;
        let pf = &p.generator("pf").ok_or("no pfaffian generator")?.poly;
        if pf.pow(2) != p.char_coefficient(2 * m) {
            errs.push(format!("so({}): pf² ≠ f_{}", 2 * m, 2 * m));
        }
    }
    for n in 2..=10 {
        let p = build_presentation(&format!("so({n},C)")).map_err(|e| e.to_string())?;
        for k in (1..=n).step_by(2) {
            if !p.char_coefficient(k).is_zero() {
                errs.push(format!("so({n}): f_{k} ≠ 0"));
            }
        }
    }
    let labels = [
        "sl(2,C)", "sl(3,C)", "sl(4,C)", "sl(5,C)", "gl(3,C)", "so(3,C)", "so(4,C)", "so(5,C)", "so(6,C)",
        "so(7,C)", "so(8,C)", "so(9,C)", "so(10,C)",
    ];
    for label in labels {
        for conv in [TorusConvention::Rotation, TorusConvention::Eigen] {
            let p = build_presentation_with(label, "x", conv).map_err(|e| e.to_string())?;
            let v = p.weyl_violations();
            if !v.is_empty() {
                errs.push(format!("{label} {conv:?}: {}", v.join(", ")));
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs.join("; "))
    }
}

fn safety(cat: &Catalog) -> Outcome {
    let mut subjects = Vec::new();
    for e in cat.entries.iter().filter(|e| e.admits_compact_form()) {
        for p in e.tuples_up_to(8).map_err(|e| e.to_string())? {
            let inst = e.instantiate(&p).map_err(|e| e.to_string())?;
            let label = inst.label.ok_or_else(|| format!("{}: no realization", e.id))?;
            let candidates: Vec<CandidateRecipe> = inst.candidates.iter().filter_map(|c| CandidateRecipe::parse(c)).collect();
            subjects.push((label, candidates));
        }
    }
    if !subjects.iter().any(|(l, _)| l.contains("so(8,C)")) || subjects.len() < 5 {
        return fail(format!("only {} compact-form instances", subjects.len()));
    }
    collect_errors(par_map(&subjects, |(label, candidates)| {
        let subject = Subject::parse(label).map_err(|e| format!("{label}: {e}"))?;
        let opts = DecideOptions {
            candidates: candidates.clone(),
            ..DecideOptions::default()
        };
        let report = decide(&subject, &opts);
        if report.verdict != Verdict::NoConclusion {
            return fail(format!("{label}: decided OBSTRUCTED"));
        }
        Ok(())
    }))
}

fn mutation_count(d: &DiagramData, seed: u64, rounds: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols = d.phi.source().symbols();
    let vars = d.c.torus_vars().to_vec();
    let mut missed = Vec::new();
    for round in 0..rounds {
        let sym = &symbols[rng.gen_range(0..symbols.len())];
        let img = d.phi.image(sym).ok_or("missing image")?.clone();
        let degree = d.phi.source().generator(sym).ok_or("missing generator")?.degree;
        let delta = loop {
            let v = rng.gen_range(-5i64..=5);
            if v != 0 {
                break q(v);
            }
        };
        let terms: Vec<Vec<u32>> = img.terms().map(|(e, _)| e.clone()).collect();
        let exps = if !terms.is_empty() && rng.gen_bool(0.5) {
            terms[rng.gen_range(0..terms.len())].clone()
        } else {
            let mut e = vec![0u32; vars.len()];
            for _ in 0..degree {
                e[rng.gen_range(0..vars.len())] += 1;
            }
            e
        };
        let mutated = &img + &MultiPoly::from_terms(&vars, [(delta, exps)]);
        let check = d.check_with(&d.phi.clone().with_image(sym, mutated)).map_err(|e| e.to_string())?;
        if check.commutes {
            missed.push(format!("round {round} ({sym})"));
        }
    }
    if missed.is_empty() {
        Ok(())
    } else {
        fail(format!("{}: undetected {}", d.label, missed.join(", ")))
    }
}

fn mutations(_: &Catalog) -> Outcome {
    collect_errors(par_map(&SO_CONFIGS, |&(p, qq, r)| {
        let d = so_family_diagram(p, qq, r).map_err(|e| e.to_string())?;
        mutation_count(&d, 100 + p as u64 * 10 + qq as u64, 60)
    }))
}

#[test]
fn acceptance() {
    let cat = Catalog::shipped().expect("shipped catalog");
    let criteria: [Criterion; 10] = [
        ("table 2 classical rows: type (C,R), non-basic root data", table2_type_cr),
        ("table 3 classical rows: hyperbolic witnesses, Riemannian controls", table3_hyperbolic),
        ("so(p+r,q)/so(p,q) diagrams", so_family_diagrams),
        ("sl(n,R)/sl(m,R) diagrams", sl_chains),
        ("ε-family dimension property", family_dimensions),
        ("half-signature intersections", half_signatures),
        ("family and lift counts", counting),
        ("invariant algebra identities", invariant_identities),
        ("no verdict on pairs with compact forms", safety),
        ("diagram mutations detected", mutations),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&cat);
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                println!("FAIL {:>2} {name} ({secs:.1}s): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
