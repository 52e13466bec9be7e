//! Symmetrizability: the cycle condition, integer symmetrizers and the exact
//! symmetrization `S = D^-1 A D`.
//!
//! The decision procedure labels each component breadth-first with
//! `d_i^2`, starting from `1` at the smallest vertex and crossing an arc
//! `u -> v` by multiplying with `a_vu / a_uv`. A vertex that would receive two
//! different labels witnesses a cycle whose forward and backward weight
//! products differ.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Digraph, SurdMatrix};

/// Positive integers `d_i^2` satisfying `a_ij d_j^2 = a_ji d_i^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetrizer {
    pub dsq: Vec<BigInt>,
}

impl Symmetrizer {
    pub fn new(dsq: Vec<BigInt>) -> Result<Self> {
        if dsq.iter().any(|d| !d.is_positive()) {
            return Err(Error::arg("symmetrizer entries must be positive"));
        }
        Ok(Symmetrizer { dsq })
    }

    pub fn from_u64(dsq: &[u64]) -> Result<Self> {
        Symmetrizer::new(dsq.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn len(&self) -> usize {
        self.dsq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dsq.is_empty()
    }
}

/// A closed walk `cycle[0] -> cycle[1] -> ... -> cycle[0]` along nonzero arcs
/// whose forward and backward weight products differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleViolation {
    pub cycle: Vec<usize>,
    pub forward_product: BigInt,
    pub backward_product: BigInt,
}

impl fmt::Display for CycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.cycle.iter().map(|v| (v + 1).to_string()).collect();
        write!(
            f,
            "cycle {} has forward product {} but backward product {}",
            labels.join(" -> "),
            self.forward_product,
            self.backward_product
        )
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn cycle_products(g: &Digraph, cycle: &[usize]) -> (BigInt, BigInt) {
    let mut fwd = BigInt::one();
    let mut bwd = BigInt::one();
    for k in 0..cycle.len() {
        let (u, v) = (cycle[k], cycle[(k + 1) % cycle.len()]);
        fwd *= g.get(u, v);
        bwd *= g.get(v, u);
    }
    (fwd, bwd)
}

/// Rational `d_i^2` labels (root of each component labelled 1), or the first
/// conflict found. Requires sign symmetry.
fn label(g: &Digraph) -> std::result::Result<Vec<BigRational>, CycleViolation> {
    let n = g.order();
    let mut labels: Vec<Option<BigRational>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if labels[root].is_some() {
            continue;
        }
        labels[root] = Some(BigRational::one());
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = labels[u].clone().expect("queued vertices are labelled");
            for v in 0..n {
                if v == u || g.get(u, v) == 0 {
                    continue;
                }
                let want = &du * ratio(g.get(v, u), g.get(u, v));
                match &labels[v] {
                    None => {
                        labels[v] = Some(want);
                        parent[v] = u;
                        queue.push_back(v);
                    }
                    Some(have) if *have != want => {
                        let cycle = tree_cycle(&parent, u, v);
                        let (forward_product, backward_product) = cycle_products(g, &cycle);
                        debug_assert_ne!(forward_product, backward_product);
                        return Err(CycleViolation {
                            cycle,
                            forward_product,
                            backward_product,
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(labels.into_iter().map(|l| l.expect("all labelled")).collect())
}

/// Tree path from the common ancestor down to `u`, then the non-tree arc
/// `u -> v`, then back up from `v`.
fn tree_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let up = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = up(u);
    let pv = up(v);
    let lca = *pu
        .iter()
        .find(|x| pv.contains(x))
        .expect("same BFS tree");
    let mut cycle: Vec<usize> = pu.iter().take_while(|&&x| x != lca).copied().collect();
    cycle.push(lca);
    cycle.reverse();
    cycle.extend(pv.iter().take_while(|&&x| x != lca));
    cycle
}

fn require_sign_symmetric(g: &Digraph) -> Result<()> {
    match g.first_sign_asymmetry() {
        None => Ok(()),
        Some((i, j)) => Err(Error::NotSignSymmetric {
            i,
            j,
            aij: g.get(i, j),
            aji: g.get(j, i),
        }),
    }
}

/// Checks the cycle condition on a sign-symmetric digraph.
///
/// Fails with [`Error::CycleCondition`] carrying a violating cycle, or with
/// [`Error::NotSignSymmetric`] when the labelling is undefined.
pub fn check_cycle_condition(g: &Digraph) -> Result<()> {
    require_sign_symmetric(g)?;
    label(g).map(|_| ()).map_err(Error::CycleCondition)
}

pub fn is_symmetrizable(g: &Digraph) -> bool {
    check_cycle_condition(g).is_ok()
}

/// The canonical integer symmetrizer: `d_i^2` with gcd 1 on every connected
/// component.
pub fn compute_symmetrizer(g: &Digraph) -> Result<Symmetrizer> {
    require_sign_symmetric(g)?;
    let labels = label(g).map_err(Error::CycleCondition)?;
    let mut dsq = vec![BigInt::zero(); g.order()];
    for comp in g.connected_components() {
        let vs = comp.as_slice();
        let lcm = vs
            .iter()
            .fold(BigInt::one(), |acc, &v| acc.lcm(labels[v].denom()));
        let ints: Vec<BigInt> = vs
            .iter()
            .map(|&v| (&labels[v] * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&v, x) in vs.iter().zip(ints) {
            dsq[v] = x / &gcd;
        }
    }
    Symmetrizer::new(dsq)
}

/// `a_ij dsq_j = a_ji dsq_i` for all `i, j`.
pub fn balancing_holds(g: &Digraph, d: &Symmetrizer) -> Result<bool> {
    if d.len() != g.order() {
        return Err(Error::arg(format!(
            "symmetrizer has {} entries for a digraph on {} vertices",
            d.len(),
            g.order()
        )));
    }
    let n = g.order();
    Ok((0..n).all(|i| {
        (0..n).all(|j| BigInt::from(g.get(i, j)) * &d.dsq[j] == BigInt::from(g.get(j, i)) * &d.dsq[i])
    }))
}

/// The exact symmetrization, `t_ij = sgn(a_ij) a_ij a_ji`.
pub fn symmetrization(g: &Digraph) -> Result<SurdMatrix> {
    check_cycle_condition(g)?;
    let n = g.order();
    let mut t = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (g.get(i, j), g.get(j, i));
            let prod = x
                .checked_mul(y)
                .ok_or_else(|| Error::arg("entry product overflows 64 bits"))?;
            t.push(x.signum() * prod);
        }
    }
    SurdMatrix::new(n, t)
}
