//! Bounded-order checks of the classification statements against the search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{enumerate, ClassRecord, SearchConstraints};
use crate::equivalence::{canonical_form, CanonicalKey};
use crate::error::Result;
use crate::families::{catalog, FamilyId, FamilyKind};
use crate::matrix::Digraph;
use crate::spectra::is_plus_minus_two_only;

use FamilyKind::*;

/// Outcome of one bounded check.
#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub name: String,
    pub max_order: usize,
    pub passed: bool,
    /// `(label, expected, found)` for each compared set.
    pub sections: Vec<Section>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub label: String,
    pub found: Vec<String>,
    pub missing: Vec<String>,
    pub unlisted: Vec<String>,
}

impl Section {
    pub fn ok(&self) -> bool {
        self.missing.is_empty() && self.unlisted.is_empty()
    }
}

impl Verification {
    fn new(name: &str, max_order: usize) -> Self {
        Verification { name: name.into(), max_order, passed: true, sections: vec![], notes: vec![] }
    }

    fn push(&mut self, s: Section) {
        self.passed &= s.ok();
        self.sections.push(s);
    }

    fn require(&mut self, ok: bool, note: String) {
        self.passed &= ok;
        self.notes.push(format!("{} {note}", if ok { "ok:" } else { "FAILED:" }));
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{} (max order {}): {verdict}", self.name, self.max_order);
        for sec in &self.sections {
            let _ = writeln!(s, "  {}: {} classes", sec.label, sec.found.len());
            let _ = writeln!(s, "    found: {}", sec.found.join(", "));
            if !sec.missing.is_empty() {
                let _ = writeln!(s, "    missing: {}", sec.missing.join(", "));
            }
            if !sec.unlisted.is_empty() {
                let _ = writeln!(s, "    unlisted: {}", sec.unlisted.join("; "));
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  {n}");
        }
        s
    }
}

/// Catalog members of the given kinds, keyed canonically.
fn expected(kinds: &[FamilyKind], max_order: usize) -> BTreeMap<CanonicalKey, FamilyId> {
    let entries: Vec<(FamilyId, Digraph)> =
        catalog(max_order).into_iter().filter(|(id, _)| kinds.contains(&id.kind)).collect();
    let keyed: Vec<(CanonicalKey, FamilyId)> =
        entries.par_iter().map(|(id, g)| (canonical_form(g), *id)).collect();
    let mut out = BTreeMap::new();
    for (k, id) in keyed {
        out.entry(k).or_insert(id);
    }
    out
}

fn describe(r: &ClassRecord) -> String {
    match r.family {
        Some(f) => f.to_string(),
        None => format!("order {} {:?}", r.order, r.representative.rows()),
    }
}

fn compare<'a>(
    label: &str,
    found: impl IntoIterator<Item = &'a ClassRecord>,
    want: &BTreeMap<CanonicalKey, FamilyId>,
) -> Section {
    let found: Vec<&ClassRecord> = found.into_iter().collect();
    let keys: BTreeSet<&CanonicalKey> = found.iter().map(|r| &r.key).collect();
    Section {
        label: label.into(),
        found: found.iter().map(|r| describe(r)).collect(),
        missing: want.iter().filter(|(k, _)| !keys.contains(k)).map(|(_, id)| id.to_string()).collect(),
        unlisted: found.iter().filter(|r| !want.contains_key(&r.key)).map(|r| describe(r)).collect(),
    }
}

/// Vertex sets of all connected induced subgraphs with at most `max_size`
/// vertices, each listed once.
pub fn connected_induced_subsets(g: &Digraph, max_size: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let adj = |u: usize, v: usize| u != v && (g.get(u, v) != 0 || g.get(v, u) != 0);
    let mut out = Vec::new();
    // Wernicke's ESU: extension sets only take exclusive neighbours above the root.
    fn grow(
        sub: &mut Vec<usize>,
        ext: Vec<usize>,
        root: usize,
        max_size: usize,
        n: usize,
        adj: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        let mut s = sub.clone();
        s.sort_unstable();
        out.push(s);
        if sub.len() == max_size {
            return;
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for u in root + 1..n {
                let exclusive = adj(w, u)
                    && !sub.contains(&u)
                    && u != w
                    && !next.contains(&u)
                    && !sub.iter().any(|&x| adj(x, u));
                if exclusive {
                    next.push(u);
                }
            }
            sub.push(w);
            grow(sub, next, root, max_size, n, adj, out);
            sub.pop();
        }
    }
    if max_size == 0 {
        return out;
    }
    for v in 0..n {
        let ext: Vec<usize> = (v + 1..n).filter(|&u| adj(v, u)).collect();
        grow(&mut vec![v], ext, v, max_size, n, &adj, &mut out);
    }
    out
}

/// Canonical keys of the connected induced subgraphs, up to `max_size`
/// vertices, of the given digraphs.
pub fn subgraph_closure(graphs: &[Digraph], max_size: usize) -> BTreeSet<CanonicalKey> {
    let subs: Vec<Digraph> = graphs
        .iter()
        .flat_map(|g| {
            connected_induced_subsets(g, max_size).into_iter().map(move |s| g.principal(&s))
        })
        .collect();
    let mut keys: Vec<CanonicalKey> = subs.par_iter().map(canonical_form).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().collect()
}

/// Some sign switching makes every off-diagonal entry nonnegative.
pub fn switchable_to_nonnegative(g: &Digraph) -> bool {
    let n = g.order();
    let mut sign = vec![0i64; n];
    for s in 0..n {
        if sign[s] != 0 {
            continue;
        }
        sign[s] = 1;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if v == u || (g.get(u, v) == 0 && g.get(v, u) == 0) {
                    continue;
                }
                for w in [g.get(u, v), g.get(v, u)] {
                    if w == 0 {
                        continue;
                    }
                    let want = sign[u] * w.signum();
                    if sign[v] == 0 {
                        sign[v] = want;
                        stack.push(v);
                    } else if sign[v] != want {
                        return false;
                    }
                }
            }
        }
    }
    true
}

const THEOREM_1: [FamilyKind; 8] = [A1TildePrime, A2Pm, LPlus, O4Prime, L, LPrime, O4Pm, S8Minus];

/// Maximal connected nonsymmetric cyclotomic classes, their squares, and the
/// claim that every nonsymmetric cyclotomic class lies inside one of them.
pub fn verify_theorem_1(max_order: usize) -> Result<Verification> {
    let rep = enumerate(&SearchConstraints::cyclotomic(max_order).nonsymmetric())?;
    let mut v = Verification::new("theorem1", max_order);
    let want = expected(&THEOREM_1, max_order);
    v.push(compare("maximal nonsymmetric", rep.maximal(), &want));
    let bad: Vec<String> =
        rep.maximal().filter(|r| !is_plus_minus_two_only(&r.representative)).map(describe).collect();
    let note = if bad.is_empty() {
        "A^2 = 4I on every maximal class".to_string()
    } else {
        format!("A^2 != 4I on {}", bad.join(", "))
    };
    v.require(bad.is_empty(), note);
    // containment: the nonsymmetric classes are exactly the connected
    // nonsymmetric induced subgraphs of listed maximal digraphs
    let parents: Vec<Digraph> = catalog(2 * max_order + 2)
        .into_iter()
        .filter(|(id, _)| THEOREM_1.contains(&id.kind))
        .map(|(_, g)| g)
        .collect();
    let closure: BTreeSet<CanonicalKey> = subgraph_closure(&parents, max_order)
        .into_iter()
        .filter(|k| !k.matrix().is_symmetric())
        .collect();
    let found: BTreeSet<CanonicalKey> = rep.classes.iter().map(|r| r.key.clone()).collect();
    let outside = found.difference(&closure).count();
    let unreached = closure.difference(&found).count();
    v.require(
        outside == 0 && unreached == 0,
        format!(
            "{} nonsymmetric classes, all inside listed maximal digraphs ({outside} outside, {unreached} subgraphs not found)",
            found.len()
        ),
    );
    Ok(v)
}

const THEOREM_2: [FamilyKind; 5] = [B, C, F4, G2, O4DoublePrime];

/// Nonsymmetric classes with spectrum in `(-2, 2)`.
pub fn verify_theorem_2(max_order: usize) -> Result<Verification> {
    let rep = enumerate(&SearchConstraints::cyclotomic(max_order).open().nonsymmetric())?;
    let mut v = Verification::new("theorem2", max_order);
    let mut kinds = THEOREM_2.to_vec();
    kinds.push(B2Pm);
    let want = expected(&kinds, max_order);
    v.push(compare("nonsymmetric (all lie in the listed families)", &rep.classes, &want));
    let strict = expected(&[F4, G2, O4DoublePrime, B2Pm], max_order);
    v.push(compare("without a one-vertex extension", rep.maximal(), &strict));
    v.notes.push("B_n lies in B_(n+1), so B_n and C_n are never without extension".into());
    Ok(v)
}

fn has_unit_charge(g: &Digraph) -> bool {
    (0..g.order()).any(|i| g.charge(i).abs() == 1)
}

/// Nonnegative maximal cyclotomic classes in four buckets.
pub fn verify_corollary_1(max_order: usize) -> Result<Verification> {
    let rep = enumerate(&SearchConstraints::cyclotomic(max_order).nonnegative())?;
    let mut v = Verification::new("corollary1", max_order);
    let buckets: [(&str, bool, bool, Vec<FamilyKind>); 4] = [
        (
            "uncharged symmetric",
            false,
            true,
            vec![Charge2, A1Tilde, ATilde, DTilde, E6Tilde, E7Tilde, E8Tilde],
        ),
        (
            "uncharged nonsymmetric",
            false,
            false,
            vec![A1TildePrime, BTilde, CTilde, CTildePrime, G2Tilde, F4Tilde],
        ),
        ("charged symmetric", true, true, vec![I, J]),
        ("charged nonsymmetric", true, false, vec![M]),
    ];
    for (label, charged, symmetric, kinds) in buckets {
        let found = rep.maximal().filter(|r| {
            has_unit_charge(&r.representative) == charged && r.symmetric == symmetric
        });
        v.push(compare(label, found, &expected(&kinds, max_order)));
    }
    let keys: BTreeSet<&CanonicalKey> = rep.maximal().map(|r| &r.key).collect();
    let unclosed: Vec<String> = rep
        .maximal()
        .filter(|r| !keys.contains(&canonical_form(&r.representative.transpose())))
        .map(describe)
        .collect();
    v.require(unclosed.is_empty(), format!("maximal classes closed under transpose {unclosed:?}"));
    Ok(v)
}

/// Nonnegative classes with spectrum in `(-2, 2)`.
pub fn verify_corollary_5(max_order: usize) -> Result<Verification> {
    let rep = enumerate(&SearchConstraints::cyclotomic(max_order).nonnegative().open())?;
    let mut v = Verification::new("corollary5", max_order);
    let charged_nonsym: Vec<String> =
        rep.classes.iter().filter(|r| r.charged && !r.symmetric).map(describe).collect();
    v.require(
        charged_nonsym.is_empty(),
        format!("no charged nonsymmetric class at any order {charged_nonsym:?}"),
    );
    let select = |charged: bool, symmetric: bool| {
        rep.classes.iter().filter(move |r| r.charged == charged && r.symmetric == symmetric)
    };
    v.push(compare(
        "uncharged symmetric (subgraphs of A_n, D_n, E_6, E_7, E_8)",
        select(false, true),
        &expected(&[A, D, E6, E7, E8], max_order),
    ));
    v.push(compare("charged symmetric", select(true, true), &expected(&[PPlus], max_order)));
    v.push(compare(
        "nonsymmetric",
        select(false, false),
        &expected(&[B, C, F4, G2], max_order),
    ));
    v.push(compare(
        "nonsymmetric without a one-vertex extension",
        rep.maximal().filter(|r| !r.symmetric),
        &expected(&[F4, G2], max_order),
    ));
    Ok(v)
}

/// Connected induced subgraphs of `g` that are uncharged and switch to
/// nonnegative, and are maximal among such subgraphs of `g`.
pub fn maximal_balanced_subgraphs(g: &Digraph) -> Vec<Digraph> {
    let n = g.order();
    let good = |s: &[usize]| {
        let h = g.principal(s);
        !h.is_charged() && switchable_to_nonnegative(&h)
    };
    let adj = |u: usize, v: usize| g.get(u, v) != 0 || g.get(v, u) != 0;
    connected_induced_subsets(g, n)
        .into_par_iter()
        .filter(|s| good(s))
        .filter(|s| {
            (0..n).filter(|w| !s.contains(w) && s.iter().any(|&u| adj(u, *w))).all(|w| {
                let mut t = s.clone();
                t.push(w);
                t.sort_unstable();
                !good(&t)
            })
        })
        .map(|s| g.principal(&s))
        .collect()
}

/// Maximal uncharged, balanced connected subgraphs of the maximal
/// nonsymmetric digraphs.
pub fn verify_corollary_3(max_order: usize) -> Result<Verification> {
    let mut v = Verification::new("corollary3", max_order);
    let parents: Vec<(FamilyId, Digraph)> = catalog(max_order)
        .into_iter()
        .filter(|(id, _)| THEOREM_1.contains(&id.kind))
        .collect();
    let affine = [A1TildePrime, BTilde, CTilde, CTildePrime, G2Tilde, F4Tilde];
    // a ladder on 2r + 2 vertices yields the affine pieces on r + 2 vertices
    let want = expected(&affine, max_order / 2 + 1);
    let index = expected(&[affine.as_slice(), &[ATilde, DTilde, A1Tilde, I, J, M]].concat(), max_order);
    let mut all: BTreeMap<CanonicalKey, Digraph> = BTreeMap::new();
    for (id, g) in &parents {
        let mut names: Vec<String> = maximal_balanced_subgraphs(g)
            .into_iter()
            .map(|h| {
                let k = canonical_form(&h);
                let name = index.get(&k).map_or_else(|| format!("{:?}", h.rows()), |f| f.to_string());
                all.entry(k).or_insert(h);
                name
            })
            .collect();
        names.sort();
        names.dedup();
        v.notes.push(format!("from {id}: {}", names.join(", ")));
    }
    let found: Vec<ClassRecord> = all
        .into_iter()
        .map(|(key, h)| ClassRecord {
            order: h.order(),
            maximal: true,
            symmetric: h.is_symmetric(),
            charged: h.is_charged(),
            family: index.get(&key).copied(),
            representative: h,
            key,
        })
        .collect();
    let symmetric: Vec<String> = found.iter().filter(|r| r.symmetric).map(describe).collect();
    v.notes.push(format!("symmetric maximal pieces, outside the nonsymmetric statement: {}", symmetric.join(", ")));
    let sec = compare("nonsymmetric maximal balanced subgraphs", found.iter().filter(|r| !r.symmetric), &want);
    v.push(sec);
    Ok(v)
}
