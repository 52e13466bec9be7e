//! Exhaustive search for connected symmetrizable integer matrices with
//! spectrum in `[-2, 2]` or `(-2, 2)`.
//!
//! Classes are grown one vertex at a time. Interlacing makes the admissible
//! set closed under deleting a vertex that keeps the digraph connected, so
//! every admissible class of order `k + 1` extends some admissible class of
//! order `k`, and growing representatives loses nothing.
//!
//! Entry pairs `(a_iv, a_vi)` of a new vertex `v` are sign symmetric with
//! `1 <= a_iv a_vi <= 4`. Rows are further bounded by `(A^2)_ii <= 4`
//! (`<= 3` for the open interval): `(A^2)_ii = (S^2)_ii` for the
//! symmetrization `S`, which is at most the largest eigenvalue of `S^2`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::equivalence::{canonical_form, CanonicalKey};
use crate::error::{Error, Result};
use crate::families::{catalog, FamilyId};
use crate::matrix::Digraph;
use crate::spectra::symmetrizable_within_two;
use crate::symmetrize::compute_symmetrizer;

/// Search cap used when `CYCLOMAT_MAX_ORDER` is not set.
pub const DEFAULT_MAX_ORDER: usize = 10;

/// The order cap, from `CYCLOMAT_MAX_ORDER` if set.
pub fn order_cap() -> usize {
    std::env::var("CYCLOMAT_MAX_ORDER")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConstraints {
    pub max_order: usize,
    /// Report only classes not equivalent to a symmetric matrix. The search
    /// still grows through symmetric classes.
    pub require_nonsymmetric: bool,
    pub require_nonnegative: bool,
    pub allow_charges: bool,
    /// Certify `(-2, 2)` instead of `[-2, 2]`.
    pub open_interval: bool,
}

impl SearchConstraints {
    /// Closed interval, signed entries, charges allowed.
    pub fn cyclotomic(max_order: usize) -> Self {
        SearchConstraints {
            max_order,
            require_nonsymmetric: false,
            require_nonnegative: false,
            allow_charges: true,
            open_interval: false,
        }
    }

    pub fn open(self) -> Self {
        SearchConstraints { open_interval: true, ..self }
    }

    pub fn nonnegative(self) -> Self {
        SearchConstraints { require_nonnegative: true, ..self }
    }

    pub fn nonsymmetric(self) -> Self {
        SearchConstraints { require_nonsymmetric: true, ..self }
    }

    pub fn uncharged(self) -> Self {
        SearchConstraints { allow_charges: false, ..self }
    }

    fn norm_bound(&self) -> i64 {
        if self.open_interval {
            3
        } else {
            4
        }
    }

    fn pair_options(&self) -> Vec<(i64, i64)> {
        let pos = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1), (2, 2)];
        let mut out = pos.to_vec();
        if !self.require_nonnegative {
            out.extend(pos.iter().map(|&(b, c)| (-b, -c)));
        }
        out
    }

    fn charge_options(&self, bound: i64) -> Vec<i64> {
        if !self.allow_charges {
            return vec![0];
        }
        let lo = if self.require_nonnegative { 0 } else { -bound };
        (lo..=bound).collect()
    }

    /// Every defining predicate, checked from scratch.
    pub fn admits(&self, g: &Digraph) -> bool {
        g.is_connected()
            && compute_symmetrizer(g).is_ok()
            && (!self.require_nonnegative || !g.has_negative_entry())
            && (self.allow_charges || !g.is_charged())
            && symmetrizable_within_two(g, self.open_interval)
    }

    fn seeds(&self) -> Vec<Digraph> {
        let bound = if self.open_interval { 1 } else { 2 };
        self.charge_options(bound)
            .into_iter()
            .map(|c| Digraph::from_rows(&[[c]]).expect("1 x 1"))
            .collect()
    }
}

/// A representative together with the data the extension step needs.
struct Node {
    g: Digraph,
    dsq: Vec<Ratio<i64>>,
    norms: Vec<i64>,
}

impl Node {
    fn new(g: Digraph) -> Self {
        let dsq = compute_symmetrizer(&g)
            .expect("representatives are symmetrizable")
            .dsq
            .iter()
            .map(|d| Ratio::from_integer(i64::try_from(d).expect("small symmetrizer")))
            .collect();
        let norms = g.row_norms();
        Node { g, dsq, norms }
    }
}

struct Extender<'a> {
    c: &'a SearchConstraints,
    node: &'a Node,
    options: Vec<(i64, i64)>,
    pairs: Vec<(i64, i64)>,
}

impl Extender<'_> {
    fn run(&mut self, f: &mut dyn FnMut(Digraph) -> ControlFlow<()>) -> ControlFlow<()> {
        self.rec(0, self.c.norm_bound(), None, f)
    }

    fn rec(
        &mut self,
        i: usize,
        budget: i64,
        dv2: Option<Ratio<i64>>,
        f: &mut dyn FnMut(Digraph) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.node.g.order();
        if i == n {
            if dv2.is_none() {
                return ControlFlow::Continue(());
            }
            let max_charge = (0..=2).rev().find(|c| c * c <= budget).unwrap_or(0);
            for charge in self.c.charge_options(max_charge) {
                let h = self.build(charge);
                if symmetrizable_within_two(&h, self.c.open_interval) {
                    f(h)?;
                }
            }
            return ControlFlow::Continue(());
        }
        self.pairs[i] = (0, 0);
        self.rec(i + 1, budget, dv2, f)?;
        let bound = self.c.norm_bound();
        for k in 0..self.options.len() {
            let (b, c) = self.options[k];
            let p = b * c;
            if p > budget || self.node.norms[i] + p > bound {
                continue;
            }
            // flipping the new vertex negates all its pairs
            if dv2.is_none() && b < 0 {
                continue;
            }
            let need = self.node.dsq[i] * Ratio::new(c, b);
            if dv2.is_some_and(|d| d != need) {
                continue;
            }
            self.pairs[i] = (b, c);
            self.rec(i + 1, budget - p, Some(need), f)?;
        }
        self.pairs[i] = (0, 0);
        ControlFlow::Continue(())
    }

    fn build(&self, charge: i64) -> Digraph {
        let g = &self.node.g;
        let n = g.order();
        let mut h = Digraph::zero(n + 1);
        for i in 0..n {
            for j in 0..n {
                h.set(i, j, g.get(i, j));
            }
            h.set(i, n, self.pairs[i].0);
            h.set(n, i, self.pairs[i].1);
        }
        h.set(n, n, charge);
        h
    }
}

fn for_each_extension(
    node: &Node,
    c: &SearchConstraints,
    mut f: impl FnMut(Digraph) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = node.g.order();
    let mut ext = Extender { c, node, options: c.pair_options(), pairs: vec![(0, 0); n] };
    ext.run(&mut f)
}

/// One-vertex admissible extensions of `g`, with `g` as leading principal
/// submatrix. Up to the sign of the new vertex, every admissible extension is
/// listed once.
pub fn extensions(g: &Digraph, c: &SearchConstraints) -> Result<Vec<Digraph>> {
    if !c.admits(g) {
        return Err(Error::arg("extensions need an admissible digraph"));
    }
    let node = Node::new(g.clone());
    let mut out = Vec::new();
    let _ = for_each_extension(&node, c, |h| {
        out.push(h);
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// No admissible one-vertex extension exists. By interlacing this is the
/// same as having no admissible connected proper supergraph.
pub fn is_maximal(g: &Digraph, c: &SearchConstraints) -> Result<bool> {
    if !c.admits(g) {
        return Err(Error::arg("maximality needs an admissible digraph"));
    }
    let node = Node::new(g.clone());
    Ok(for_each_extension(&node, c, |_| ControlFlow::Break(())).is_continue())
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub order: usize,
    pub representative: Digraph,
    #[serde(skip)]
    pub key: CanonicalKey,
    pub maximal: bool,
    pub symmetric: bool,
    pub charged: bool,
    pub family: Option<FamilyId>,
}

impl ClassRecord {
    pub fn family_name(&self) -> String {
        self.family.map_or_else(|| "unlisted".to_string(), |f| f.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub constraints: SearchConstraints,
    /// Sorted by order, then canonical key.
    pub classes: Vec<ClassRecord>,
}

impl ClassificationReport {
    pub fn maximal(&self) -> impl Iterator<Item = &ClassRecord> {
        self.classes.iter().filter(|r| r.maximal)
    }

    pub fn counts_by_order(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for r in &self.classes {
            *m.entry(r.order).or_insert(0) += 1;
        }
        m
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (order, count) in self.counts_by_order() {
            let max = self.classes.iter().filter(|r| r.order == order && r.maximal).count();
            let _ = writeln!(s, "order {order}: {count} classes, {max} maximal");
        }
        for r in &self.classes {
            let rows: Vec<String> = r
                .representative
                .rows()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let _ = writeln!(
                s,
                "{} {} {} [{}]",
                r.order,
                if r.maximal { "maximal" } else { "-" },
                r.family_name(),
                rows.join("; ")
            );
        }
        s
    }

    /// `{"<order>": [{"matrix", "family", "maximal"}]}`, orders ascending.
    pub fn to_json(&self) -> serde_json::Value {
        let mut by_order: BTreeMap<String, Vec<serde_json::Value>> = BTreeMap::new();
        let mut orders: Vec<usize> = self.classes.iter().map(|r| r.order).collect();
        orders.dedup();
        for r in &self.classes {
            by_order.entry(r.order.to_string()).or_default().push(serde_json::json!({
                "family": r.family.map(|f| f.to_string()),
                "matrix": r.key.matrix().rows(),
                "maximal": r.maximal,
            }));
        }
        let mut map = serde_json::Map::new();
        for o in orders {
            let k = o.to_string();
            map.insert(k.clone(), serde_json::Value::Array(by_order.remove(&k).unwrap()));
        }
        serde_json::Value::Object(map)
    }
}

fn family_index(max_order: usize) -> BTreeMap<CanonicalKey, FamilyId> {
    let entries = catalog(max_order);
    let keyed: Vec<(CanonicalKey, FamilyId)> =
        entries.par_iter().map(|(id, g)| (canonical_form(g), *id)).collect();
    let mut out = BTreeMap::new();
    for (k, id) in keyed {
        out.entry(k).or_insert(id);
    }
    out
}

/// Admissible classes keyed canonically, one map per order.
type Levels = Vec<BTreeMap<CanonicalKey, Digraph>>;

fn insert_class(level: &mut BTreeMap<CanonicalKey, Digraph>, key: CanonicalKey, g: Digraph, c: &SearchConstraints) {
    match level.get_mut(&key) {
        None => {
            level.insert(key, g);
        }
        // nonnegative mode keeps the least nonnegative member seen
        Some(rep) if c.require_nonnegative && g < *rep => *rep = g,
        Some(_) => {}
    }
}

fn representative(key: &CanonicalKey, g: Digraph, c: &SearchConstraints) -> Digraph {
    if c.require_nonnegative {
        g
    } else {
        key.matrix().clone()
    }
}

/// Parent key, whether it has no extension, and its keyed children.
type Grown = (CanonicalKey, bool, Vec<(CanonicalKey, Digraph)>);

/// All admissible classes up to `max_order`, with maximality flags.
pub fn enumerate(c: &SearchConstraints) -> Result<ClassificationReport> {
    let cap = order_cap();
    if c.max_order > cap {
        return Err(Error::CapExceeded { requested: c.max_order, cap });
    }
    if c.max_order == 0 {
        return Err(Error::arg("max order must be at least 1"));
    }
    let mut levels: Levels = Vec::new();
    let mut first = BTreeMap::new();
    for s in c.seeds() {
        let k = canonical_form(&s);
        let rep = representative(&k, s, c);
        insert_class(&mut first, k, rep, c);
    }
    levels.push(first);
    let mut maximal: Vec<BTreeMap<CanonicalKey, bool>> = Vec::new();
    for order in 1..=c.max_order {
        let frontier: Vec<(&CanonicalKey, &Digraph)> = levels[order - 1].iter().collect();
        if order == c.max_order {
            let flags = frontier
                .par_iter()
                .map(|(k, g)| {
                    let node = Node::new((*g).clone());
                    let ext = for_each_extension(&node, c, |_| ControlFlow::Break(()));
                    ((*k).clone(), ext.is_continue())
                })
                .collect();
            maximal.push(flags);
            break;
        }
        let grown: Vec<Grown> = frontier
            .par_iter()
            .map(|(k, g)| {
                let node = Node::new((*g).clone());
                let mut out = Vec::new();
                let _ = for_each_extension(&node, c, |h| {
                    out.push(h);
                    ControlFlow::Continue(())
                });
                let keyed: Vec<(CanonicalKey, Digraph)> = out
                    .into_iter()
                    .map(|h| {
                        let key = canonical_form(&h);
                        let rep = representative(&key, h, c);
                        (key, rep)
                    })
                    .collect();
                ((*k).clone(), keyed.is_empty(), keyed)
            })
            .collect();
        let mut next = BTreeMap::new();
        let mut flags = BTreeMap::new();
        for (k, is_max, keyed) in grown {
            flags.insert(k, is_max);
            for (key, rep) in keyed {
                insert_class(&mut next, key, rep, c);
            }
        }
        maximal.push(flags);
        levels.push(next);
    }
    let families = family_index(c.max_order);
    let mut classes = Vec::new();
    for (idx, level) in levels.into_iter().enumerate() {
        for (key, rep) in level {
            let symmetric = rep.is_symmetric();
            if c.require_nonsymmetric && symmetric {
                continue;
            }
            classes.push(ClassRecord {
                order: idx + 1,
                maximal: maximal[idx][&key],
                symmetric,
                charged: rep.is_charged(),
                family: families.get(&key).copied(),
                representative: rep,
                key,
            });
        }
    }
    Ok(ClassificationReport { constraints: *c, classes })
}
