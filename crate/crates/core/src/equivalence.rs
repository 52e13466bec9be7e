//! Equivalence under signed permutations and global negation.
//!
//! `B` is equivalent to `A` when `P^T A P = ±B` for a signed permutation
//! matrix `P`. Transposition is not part of the group; see
//! [`equivalent_to_transpose`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Digraph;

/// A signed permutation together with a global sign.
///
/// Acting on `g` it produces `b[perm[i]][perm[j]] = negate * signs[i] * signs[j] * a[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
    negate: i8,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>, negate: i8) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::arg(format!("{} signs for {n} vertices", signs.len())));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::arg(format!("{perm:?} is not a permutation")));
            }
        }
        if signs.iter().chain(std::iter::once(&negate)).any(|s| s.abs() != 1) {
            return Err(Error::arg("signs must be +1 or -1"));
        }
        Ok(SignedPermutation { perm, signs, negate })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n], negate: 1 }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn negate(&self) -> i8 {
        self.negate
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `self ∘ first`: acting with the result equals acting with `first`, then `self`.
    pub fn compose(&self, first: &SignedPermutation) -> Result<SignedPermutation> {
        if self.len() != first.len() {
            return Err(Error::arg("composing signed permutations of different sizes"));
        }
        let perm = first.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = (0..self.len()).map(|i| first.signs[i] * self.signs[first.perm[i]]).collect();
        Ok(SignedPermutation { perm, signs, negate: self.negate * first.negate })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs, negate: self.negate }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .enumerate()
            .map(|(i, (p, s))| format!("{}->{}{}", i + 1, if *s < 0 { "-" } else { "+" }, p + 1))
            .collect();
        write!(f, "[{}]", images.join(" "))?;
        if self.negate < 0 {
            write!(f, " negated")?;
        }
        Ok(())
    }
}

pub fn apply(g: &Digraph, p: &SignedPermutation) -> Result<Digraph> {
    let n = g.order();
    if p.len() != n {
        return Err(Error::arg(format!("permutation of size {} on {n} vertices", p.len())));
    }
    let mut out = g.clone();
    for i in 0..n {
        for j in 0..n {
            let s = i64::from(p.negate * p.signs[i] * p.signs[j]);
            out.set(p.perm[i], p.perm[j], s * g.get(i, j));
        }
    }
    Ok(out)
}

pub fn sign_switch(g: &Digraph, signs: &[i8]) -> Result<Digraph> {
    let p = SignedPermutation::new((0..signs.len()).collect(), signs.to_vec(), 1)?;
    apply(g, &p)
}

/// Least representative of an equivalence class. Two digraphs have equal
/// keys exactly when they are equivalent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(Digraph);

impl CanonicalKey {
    pub fn matrix(&self) -> &Digraph {
        &self.0
    }

    pub fn into_matrix(self) -> Digraph {
        self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({:?})", self.0.rows())
    }
}

fn adjacent(g: &Digraph, i: usize, j: usize) -> bool {
    g.get(i, j) != 0 || g.get(j, i) != 0
}

/// Components of the underlying undirected graph, ordered by smallest vertex.
fn weak_components(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let u = comp[k];
            k += 1;
            for v in 0..n {
                if !seen[v] && v != u && adjacent(g, u, v) {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Vertex colours stable under signed permutations, from iterated
/// refinement. Colours are ranks of sorted signatures, so relabelling the
/// input permutes them accordingly.
fn refine_colours(g: &Digraph) -> Vec<u32> {
    let n = g.order();
    let rank = |sigs: &[Vec<i64>]| -> Vec<u32> {
        let distinct: BTreeSet<&Vec<i64>> = sigs.iter().collect();
        let index: BTreeMap<&Vec<i64>, u32> =
            distinct.into_iter().enumerate().map(|(k, s)| (s, k as u32)).collect();
        sigs.iter().map(|s| index[s]).collect()
    };
    let initial: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut prods = Vec::new();
            let mut mods = Vec::new();
            for j in (0..n).filter(|&j| j != i && adjacent(g, i, j)) {
                prods.push(g.get(i, j) * g.get(j, i));
                mods.push((g.get(i, j).abs(), g.get(j, i).abs()));
            }
            prods.sort_unstable();
            mods.sort_unstable();
            let mut sig = vec![g.charge(i), prods.len() as i64];
            sig.extend(prods);
            sig.extend(mods.into_iter().flat_map(|(x, y)| [x, y]));
            sig
        })
        .collect();
    let mut colours = rank(&initial);
    let mut classes = colours.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sigs: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut nb: Vec<[i64; 4]> = (0..n)
                    .filter(|&j| j != i && adjacent(g, i, j))
                    .map(|j| {
                        [
                            i64::from(colours[j]),
                            g.get(i, j) * g.get(j, i),
                            g.get(i, j).abs(),
                            g.get(j, i).abs(),
                        ]
                    })
                    .collect();
                nb.sort_unstable();
                let mut sig = vec![i64::from(colours[i])];
                sig.extend(nb.into_iter().flatten());
                sig
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = next.iter().collect::<BTreeSet<_>>().len();
        colours = next;
        if next_classes == classes {
            return colours;
        }
        classes = next_classes;
    }
}

struct Best {
    levels: Vec<Vec<i64>>,
    order: Vec<usize>,
    signs: Vec<i8>,
}

/// Backtracking search for the least level sequence of a connected digraph.
///
/// Level `k` of an ordering is `(colour, charge, b[0][k], b[k][0], ..., b[k-1][k], b[k][k-1])`.
/// Only connected orderings are considered: every vertex after the first is
/// adjacent to an earlier one. Its sign only flips its own block, which is
/// nonzero, so the sign making the first nonzero block entry negative is the
/// only one that can be minimal. The first vertex takes `+1`, since flipping
/// every sign changes nothing.
struct Canon<'a> {
    g: &'a Digraph,
    vertices: &'a [usize],
    colours: Vec<u32>,
    best: Option<Best>,
}

impl Canon<'_> {
    fn level(&self, order: &[usize], signs: &[i8], v: usize) -> (Vec<i64>, i8) {
        let mut t = Vec::with_capacity(2 + 2 * order.len());
        t.push(i64::from(self.colours[v]));
        t.push(self.g.charge(v));
        let mut sign = 0i8;
        for (&u, &su) in order.iter().zip(signs) {
            let (x, y) = (self.g.get(u, v), self.g.get(v, u));
            if sign == 0 && (x != 0 || y != 0) {
                let first = if x != 0 { x } else { y };
                sign = if i64::from(su) * first > 0 { -1 } else { 1 };
            }
            t.push(x);
            t.push(y);
        }
        if sign == 0 {
            sign = 1;
        }
        for (k, &su) in signs.iter().enumerate() {
            let s = i64::from(su * sign);
            t[2 + 2 * k] *= s;
            t[3 + 2 * k] *= s;
        }
        (t, sign)
    }

    fn compare_prefix(&self, levels: &[Vec<i64>], next: &[i64]) -> Ordering {
        let Some(best) = &self.best else {
            return Ordering::Less;
        };
        let k = levels.len();
        levels
            .iter()
            .map(|l| l.as_slice())
            .chain(std::iter::once(next))
            .cmp(best.levels[..=k].iter().map(|l| l.as_slice()))
    }

    fn search(&mut self, order: &mut Vec<usize>, signs: &mut Vec<i8>, levels: &mut Vec<Vec<i64>>) {
        if order.len() == self.vertices.len() {
            if self.best.as_ref().is_none_or(|b| *levels < b.levels) {
                self.best = Some(Best { levels: levels.clone(), order: order.clone(), signs: signs.clone() });
            }
            return;
        }
        let mut cands: Vec<(usize, i8)> = Vec::new();
        let mut min: Option<Vec<i64>> = None;
        for &v in self.vertices {
            if order.contains(&v) {
                continue;
            }
            if !order.is_empty() && !order.iter().any(|&u| adjacent(self.g, u, v)) {
                continue;
            }
            let (t, s) = self.level(order, signs, v);
            match min.as_ref().map(|m| t.cmp(m)) {
                Some(Ordering::Greater) => {}
                Some(Ordering::Equal) => cands.push((v, s)),
                _ => {
                    min = Some(t);
                    cands.clear();
                    cands.push((v, s));
                }
            }
        }
        let min = min.expect("unplaced vertex");
        for (v, s) in cands {
            if self.compare_prefix(levels, &min) == Ordering::Greater {
                return;
            }
            order.push(v);
            signs.push(s);
            levels.push(min.clone());
            self.search(order, signs, levels);
            levels.pop();
            signs.pop();
            order.pop();
        }
    }
}

/// Canonical ordering and signs of one connected piece: least level sequence,
/// chosen vertex order and signs.
fn canon_component(g: &Digraph, colours: &[u32], vertices: &[usize]) -> Best {
    let mut c = Canon { g, vertices, colours: colours.to_vec(), best: None };
    c.search(&mut Vec::new(), &mut Vec::new(), &mut Vec::new());
    c.best.expect("nonempty component")
}

/// Canonical ordering of `g` under signed permutations only (no negation):
/// the least matrix, with `order[k]` the source vertex at position `k`.
fn canon_unnegated(g: &Digraph) -> (Digraph, Vec<usize>, Vec<i8>) {
    let colours = refine_colours(g);
    let mut pieces: Vec<(Digraph, Best)> = weak_components(g)
        .into_iter()
        .map(|comp| {
            let best = canon_component(g, &colours, &comp);
            let b = place(g, &best.order, &best.signs);
            (b, best)
        })
        .collect();
    pieces.sort_by(|x, y| (x.0.order(), &x.0).cmp(&(y.0.order(), &y.0)));
    let mut order = Vec::with_capacity(g.order());
    let mut signs = Vec::with_capacity(g.order());
    for (_, best) in pieces {
        order.extend(best.order);
        signs.extend(best.signs);
    }
    (place(g, &order, &signs), order, signs)
}

fn place(g: &Digraph, order: &[usize], signs: &[i8]) -> Digraph {
    let k = order.len();
    let mut b = Digraph::zero(k);
    for x in 0..k {
        for y in 0..k {
            b.set(x, y, i64::from(signs[x] * signs[y]) * g.get(order[x], order[y]));
        }
    }
    b
}

/// Canonical key and a signed permutation taking `g` to it.
pub fn canonical_form_with_witness(g: &Digraph) -> (CanonicalKey, SignedPermutation) {
    let n = g.order();
    let mut best: Option<(Digraph, Vec<usize>, Vec<i8>, i8)> = None;
    for negate in [1i8, -1] {
        let h = if negate == 1 { g.clone() } else { g.negated() };
        let (b, order, signs) = canon_unnegated(&h);
        if best.as_ref().is_none_or(|x| b < x.0) {
            best = Some((b, order, signs, negate));
        }
    }
    let (b, order, signs, negate) = best.expect("two candidates");
    let mut perm = vec![0; n];
    let mut vsigns = vec![1i8; n];
    for (k, (&v, &s)) in order.iter().zip(&signs).enumerate() {
        perm[v] = k;
        vsigns[v] = s;
    }
    (CanonicalKey(b), SignedPermutation { perm, signs: vsigns, negate })
}

pub fn canonical_form(g: &Digraph) -> CanonicalKey {
    canonical_form_with_witness(g).0
}

/// `Some(p)` with `apply(a, p) = b` when the two are equivalent.
pub fn equivalence_witness(a: &Digraph, b: &Digraph) -> Option<SignedPermutation> {
    if a.order() != b.order() {
        return None;
    }
    let (ka, pa) = canonical_form_with_witness(a);
    let (kb, pb) = canonical_form_with_witness(b);
    if ka != kb {
        return None;
    }
    Some(pb.inverse().compose(&pa).expect("same size"))
}

pub fn are_equivalent(a: &Digraph, b: &Digraph) -> bool {
    a.order() == b.order() && canonical_form(a) == canonical_form(b)
}

pub fn equivalent_to_transpose(g: &Digraph) -> bool {
    are_equivalent(g, &g.transpose())
}

fn induced_paths(g: &Digraph, max_edges: usize, mut visit: impl FnMut(&[usize])) {
    let n = g.order();
    fn extend(
        g: &Digraph,
        path: &mut Vec<usize>,
        max_edges: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if path.len() >= 2 {
            visit(path);
        }
        if path.len() > max_edges {
            return;
        }
        let last = *path.last().unwrap();
        for v in 0..g.order() {
            if path.contains(&v) || !adjacent(g, last, v) {
                continue;
            }
            // induced: v may only touch the current end
            if path[..path.len() - 1].iter().any(|&u| adjacent(g, u, v)) {
                continue;
            }
            path.push(v);
            extend(g, path, max_edges, visit);
            path.pop();
        }
    }
    for s in 0..n {
        extend(g, &mut vec![s], max_edges, &mut visit);
    }
}

/// Moduli of the arc weights met walking each induced path with at most
/// `max_edges` edges, in both directions.
pub fn weight_modulus_sequences(g: &Digraph, max_edges: usize) -> Result<BTreeSet<Vec<u64>>> {
    if max_edges == 0 {
        return Err(Error::arg("paths need at least one edge"));
    }
    let mut out = BTreeSet::new();
    induced_paths(g, max_edges, |p| {
        out.insert(p.windows(2).map(|w| g.get(w[0], w[1]).unsigned_abs()).collect());
    });
    Ok(out)
}

/// Like [`weight_modulus_sequences`], with the modulus of each charge
/// interleaved: `|c_1|, |a_12|, |c_2|, |a_23|, ...`. Also an invariant, and
/// able to separate charged digraphs from their transposes.
pub fn decorated_weight_modulus_sequences(
    g: &Digraph,
    max_edges: usize,
) -> Result<BTreeSet<Vec<u64>>> {
    if max_edges == 0 {
        return Err(Error::arg("paths need at least one edge"));
    }
    let mut out = BTreeSet::new();
    induced_paths(g, max_edges, |p| {
        let mut seq = vec![g.charge(p[0]).unsigned_abs()];
        for w in p.windows(2) {
            seq.push(g.get(w[0], w[1]).unsigned_abs());
            seq.push(g.charge(w[1]).unsigned_abs());
        }
        out.insert(seq);
    });
    Ok(out)
}
