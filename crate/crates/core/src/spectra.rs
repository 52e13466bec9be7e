//! Characteristic polynomials and certified eigenvalue location.
//!
//! All certification happens on the integer polynomial `det(xI - A)`. The
//! floating-point eigensolver is only used as a cross-check.

use std::ops::Bound;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Digraph;
use crate::poly::{self, IntPolynomial, RootCount};
use crate::symmetrize::{is_symmetrizable, symmetrization};

/// Ring operations for the division-free determinant expansion. Machine
/// integers report overflow instead of wrapping.
pub(crate) trait Coef: Clone + Zero + One {
    fn from_i64(v: i64) -> Self;
    fn c_add(&self, o: &Self) -> Option<Self>;
    fn c_mul(&self, o: &Self) -> Option<Self>;
    fn c_neg(&self) -> Option<Self>;
}

impl Coef for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn c_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn c_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn c_neg(&self) -> Option<Self> {
        Some(-self)
    }
}

impl Coef for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn c_add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn c_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn c_neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

/// Berkowitz's algorithm. Returns `det(xI - A)` with ascending coefficients.
pub(crate) fn berkowitz<T: Coef>(g: &Digraph) -> Option<Vec<T>> {
    let n = g.order();
    let a = |i: usize, j: usize| T::from_i64(g.get(i, j));
    // descending coefficients of the char poly of the leading r x r block
    let mut p: Vec<T> = vec![T::one()];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^(r-1) C
        let mut t = Vec::with_capacity(r + 2);
        t.push(T::one());
        t.push(a(r, r).c_neg()?);
        let mut v: Vec<T> = (0..r).map(|i| a(i, r)).collect();
        for k in 0..r {
            let mut rc = T::zero();
            for j in 0..r {
                rc = rc.c_add(&a(r, j).c_mul(&v[j])?)?;
            }
            t.push(rc.c_neg()?);
            if k + 1 < r {
                let mut w = vec![T::zero(); r];
                for (i, wi) in w.iter_mut().enumerate() {
                    for (j, vj) in v.iter().enumerate() {
                        *wi = wi.c_add(&a(i, j).c_mul(vj)?)?;
                    }
                }
                v = w;
            }
        }
        let mut q = vec![T::zero(); r + 2];
        for (i, qi) in q.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                *qi = qi.c_add(&t[i - j].c_mul(pj)?)?;
            }
        }
        p = q;
    }
    p.reverse();
    Some(p)
}

/// `det(xI - A)`, exact.
pub fn char_poly(g: &Digraph) -> IntPolynomial {
    IntPolynomial::new(berkowitz::<BigInt>(g).expect("bigint arithmetic cannot overflow"))
}

/// Exact count of real roots of `p` in the interval, with multiplicity.
pub fn count_roots(
    p: &IntPolynomial,
    lo: Bound<BigRational>,
    hi: Bound<BigRational>,
) -> Result<RootCount> {
    poly::count_roots(p, lo, hi)
}

fn all_roots_within_two(g: &Digraph, open: bool) -> bool {
    if !is_symmetrizable(g) {
        return false;
    }
    let p = char_poly(g);
    let n = g.order();
    poly::count_roots_between(&p, -2, 2, open, open).map(|c| c == n).unwrap_or(false)
}

/// Symmetrizable with every eigenvalue in `[-2, 2]`.
pub fn is_cyclotomic(g: &Digraph) -> bool {
    all_roots_within_two(g, false)
}

/// Symmetrizable with every eigenvalue in `(-2, 2)`.
pub fn all_eigs_in_open(g: &Digraph) -> bool {
    all_roots_within_two(g, true)
}

/// `A^2 = 4I` exactly.
pub fn is_plus_minus_two_only(g: &Digraph) -> bool {
    let n = g.order();
    match g.square() {
        Some(sq) => (0..n).all(|i| (0..n).all(|j| sq.get(i, j) == if i == j { 4 } else { 0 })),
        None => false,
    }
}

/// `lambda_1 <= mu_1 <= ... <= mu_{n-1} <= lambda_n`, certified exactly.
pub fn interlaces(parent: &IntPolynomial, child: &IntPolynomial) -> Result<bool> {
    poly::interlaces(parent, child)
}

/// Approximate eigenvalues, ascending, from the symmetrization.
pub fn eigenvalues_float(g: &Digraph) -> Result<Vec<f64>> {
    let s = symmetrization(g)?;
    let n = s.order();
    if n == 0 {
        return Ok(vec![]);
    }
    let rows = s.to_f64();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev)
}

/// Where the spectrum of a symmetrizable matrix sits relative to `[-2, 2]`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SpectrumSummary {
    pub char_poly: String,
    pub degree: usize,
    pub real_roots: usize,
    pub in_closed: usize,
    pub in_open: usize,
    pub at_plus_two: usize,
    pub at_minus_two: usize,
    pub cyclotomic: bool,
    pub open_interval: bool,
    pub squares_to_four: bool,
}

pub fn spectrum_summary(g: &Digraph) -> Result<SpectrumSummary> {
    crate::symmetrize::check_cycle_condition(g)?;
    let p = char_poly(g);
    let n = g.order();
    if n == 0 {
        return Err(Error::arg("empty matrix"));
    }
    let in_closed = poly::count_roots_between(&p, -2, 2, false, false)?;
    let in_open = poly::count_roots_between(&p, -2, 2, true, true)?;
    let at_plus_two = poly::count_roots_between(&p, 2, 2, false, false)?;
    let at_minus_two = poly::count_roots_between(&p, -2, -2, false, false)?;
    Ok(SpectrumSummary {
        char_poly: p.to_string(),
        degree: n,
        real_roots: poly::count_real_roots(&p)?,
        in_closed,
        in_open,
        at_plus_two,
        at_minus_two,
        cyclotomic: in_closed == n,
        open_interval: in_open == n,
        squares_to_four: is_plus_minus_two_only(g),
    })
}

/// Spectral test used inside the classification search. The input must be
/// symmetrizable, so its char poly is real-rooted and Descartes' rule is exact.
/// Falls back to Sturm counting on machine overflow.
pub(crate) fn symmetrizable_within_two(g: &Digraph, open: bool) -> bool {
    if let Some(c) = berkowitz::<i128>(g) {
        if let Some(ok) = poly::real_rooted_within_two(&c, open) {
            return ok;
        }
    }
    let p = char_poly(g);
    poly::count_roots_between(&p, -2, 2, open, open)
        .map(|c| c == g.order())
        .unwrap_or(false)
}
