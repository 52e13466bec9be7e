//! Square integer matrices read as charged, weighted digraphs.
//!
//! Row `i` is vertex `i`; `a[i][i]` is the charge of the vertex and `a[i][j]`
//! the weight of the arc `i -> j`. Nothing here assumes symmetry: symmetry and
//! sign symmetry are predicates, not invariants.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A square integer matrix viewed as a digraph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    a: Vec<i64>,
}

/// A strictly increasing list of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Sorts and deduplicates `vertices`; range checks happen at use sites.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn all(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl Digraph {
    /// Builds an `n x n` digraph from row-major entries.
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("a digraph needs at least one vertex"));
        }
        if entries.len() != n * n {
            return Err(Error::arg(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(Digraph { n, a: entries })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::arg(format!(
                    "row {i} has {} entries, matrix is not square ({n} rows)",
                    row.len()
                )));
            }
            a.extend_from_slice(row);
        }
        Digraph::new(n, a)
    }

    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "a digraph needs at least one vertex");
        Digraph { n, a: vec![0; n * n] }
    }

    pub(crate) fn from_raw(n: usize, a: Vec<i64>) -> Self {
        debug_assert_eq!(a.len(), n * n);
        Digraph { n, a }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.a
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn charge(&self, i: usize) -> i64 {
        self.get(i, i)
    }

    pub fn is_charged(&self) -> bool {
        (0..self.n).any(|i| self.charge(i) != 0)
    }

    pub fn has_negative_entry(&self) -> bool {
        self.a.iter().any(|&x| x < 0)
    }

    /// `sgn(a_ij) = sgn(a_ji)` for every pair.
    pub fn is_sign_symmetric(&self) -> bool {
        self.first_sign_asymmetry().is_none()
    }

    pub(crate) fn first_sign_asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j).signum() != self.get(j, i).signum() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Digraph {
        let n = self.n;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.get(i, j);
            }
        }
        Digraph { n, a }
    }

    pub fn negated(&self) -> Digraph {
        Digraph {
            n: self.n,
            a: self.a.iter().map(|x| -x).collect(),
        }
    }

    /// Exact matrix square; `None` on `i64` overflow.
    pub fn square(&self) -> Option<Digraph> {
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s: i64 = 0;
                for k in 0..n {
                    s = s.checked_add(self.get(i, k).checked_mul(self.get(k, j))?)?;
                }
                a[i * n + j] = s;
            }
        }
        Some(Digraph { n, a })
    }

    /// Principal submatrix on `keep`, in the order of `keep`.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Digraph> {
        if keep.is_empty() {
            return Err(Error::arg("induced subgraph of the empty vertex set"));
        }
        if let Some(&v) = keep.as_slice().iter().find(|&&v| v >= self.n) {
            return Err(Error::arg(format!(
                "vertex {v} out of range for a digraph on {} vertices",
                self.n
            )));
        }
        Ok(self.principal(keep.as_slice()))
    }

    /// Principal submatrix on an arbitrary index list (no validation).
    pub(crate) fn principal(&self, idx: &[usize]) -> Digraph {
        let m = idx.len();
        let mut a = Vec::with_capacity(m * m);
        for &i in idx {
            for &j in idx {
                a.push(self.get(i, j));
            }
        }
        Digraph { n: m, a }
    }

    /// Deletes one vertex.
    pub fn delete_vertex(&self, v: usize) -> Option<Digraph> {
        if self.n < 2 || v >= self.n {
            return None;
        }
        let idx: Vec<usize> = (0..self.n).filter(|&i| i != v).collect();
        Some(self.principal(&idx))
    }

    fn reach(&self, start: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                let w = if forward { self.get(u, v) } else { self.get(v, u) };
                if v != u && w != 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Strong connectivity along nonzero arcs.
    pub fn is_connected(&self) -> bool {
        self.reach(0, true).iter().all(|&b| b) && self.reach(0, false).iter().all(|&b| b)
    }

    /// Strongly connected components, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let fwd = self.reach(s, true);
            let bwd = self.reach(s, false);
            let members: Vec<usize> = (0..self.n).filter(|&v| fwd[v] && bwd[v]).collect();
            for &v in &members {
                comp[v] = out.len();
            }
            out.push(VertexSet(members));
        }
        out
    }

    /// Components of the matrix obtained by zeroing every pair with `a_ij != a_ji`.
    pub fn symmetric_components(&self) -> Vec<VertexSet> {
        let n = self.n;
        let mut star = self.clone();
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) != self.get(j, i) {
                    star.set(i, j, 0);
                }
            }
        }
        star.connected_components()
    }

    /// Diagonal of `A^2`: `sum_j a_ij a_ji`, the norm of each row.
    pub fn row_norms(&self) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * self.get(j, i)).sum())
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Digraph) -> Digraph {
        let n = self.n + other.n;
        let mut g = Digraph::zero(n);
        for i in 0..self.n {
            for j in 0..self.n {
                g.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                g.set(self.n + i, self.n + j, other.get(i, j));
            }
        }
        g
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph{:?}", self.rows())
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.a.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for (r, row) in self.a.chunks(self.n).enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A symmetric matrix over `sqrt(N0) ∪ -sqrt(N0)`.
///
/// Entry `t` stands for `sgn(t) * sqrt(|t|)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurdMatrix {
    n: usize,
    t: Vec<i64>,
}

/// An exact finite sum `sum_f c_f sqrt(f)` over squarefree radicands `f`.
pub type SurdSum = BTreeMap<u64, i64>;

impl SurdMatrix {
    pub fn new(n: usize, t: Vec<i64>) -> Result<Self> {
        if n == 0 || t.len() != n * n {
            return Err(Error::arg("surd matrix must be square and nonempty"));
        }
        for i in 0..n {
            for j in i + 1..n {
                if t[i * n + j] != t[j * n + i] {
                    return Err(Error::arg(format!(
                        "surd matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SurdMatrix { n, t })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut t = Vec::with_capacity(n * n);
        for row in rows {
            if row.as_ref().len() != n {
                return Err(Error::arg("surd matrix must be square"));
            }
            t.extend_from_slice(row.as_ref());
        }
        SurdMatrix::new(n, t)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The encoded value `t_ij` (a signed square).
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.t[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.t.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.t
            .chunks(self.n)
            .map(|r| r.iter().map(|&x| surd_value(x)).collect())
            .collect()
    }

    /// The `t` values as an integer matrix. Signed permutations act on this
    /// encoding exactly as on the surd matrix, so equivalence of surd
    /// matrices reduces to equivalence of encodings.
    pub fn encoding(&self) -> Digraph {
        Digraph::from_raw(self.n, self.t.clone())
    }

    /// Exact `S^2`, each entry a sum of surds.
    pub fn square(&self) -> Vec<Vec<SurdSum>> {
        let n = self.n;
        let mut out = vec![vec![SurdSum::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let acc = &mut out[i][j];
                for k in 0..n {
                    let (x, y) = (self.get(i, k), self.get(k, j));
                    if x == 0 || y == 0 {
                        continue;
                    }
                    let sign = x.signum() * y.signum();
                    let (c, f) = split_square((x.unsigned_abs()) * (y.unsigned_abs()));
                    *acc.entry(f).or_insert(0) += sign * c as i64;
                }
                acc.retain(|_, c| *c != 0);
            }
        }
        out
    }

    /// `S^2 = c I` exactly.
    pub fn square_is_scalar(&self, c: i64) -> bool {
        let sq = self.square();
        for (i, row) in sq.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let want = if i == j { c } else { 0 };
                let mut expected = SurdSum::new();
                if want != 0 {
                    expected.insert(1, want);
                }
                if *e != expected {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for SurdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SurdMatrix{:?}", self.rows())
    }
}

impl fmt::Display for SurdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.t.iter().map(|&x| surd_label(x)).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for (r, row) in cells.chunks(self.n).enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row
                .iter()
                .map(|c| format!("{}{c}", " ".repeat(width - c.chars().count())))
                .collect();
            write!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

/// Human-readable `sgn(t) sqrt|t|`, simplified when `|t|` is a perfect square.
pub fn surd_label(t: i64) -> String {
    if t == 0 {
        return "0".into();
    }
    let sign = if t < 0 { "-" } else { "" };
    let (c, f) = split_square(t.unsigned_abs());
    match (c, f) {
        (c, 1) => format!("{sign}{c}"),
        (1, f) => format!("{sign}√{f}"),
        (c, f) => format!("{sign}{c}√{f}"),
    }
}

pub(crate) fn surd_value(t: i64) -> f64 {
    (t.signum() as f64) * (t.unsigned_abs() as f64).sqrt()
}

/// Writes `m = c^2 f` with `f` squarefree.
fn split_square(mut m: u64) -> (u64, u64) {
    if m == 0 {
        return (0, 1);
    }
    let mut c = 1;
    let mut f = 1;
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            c *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (c, f * m)
}
