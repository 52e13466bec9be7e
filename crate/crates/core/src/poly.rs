//! Integer polynomials and exact real-root counting.
//!
//! Root counts use Sturm chains built from primitive pseudo-remainders, so
//! every coefficient stays in `Z`. Chains are only ever built on square-free
//! parts; multiplicities are restored through Yun's decomposition.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Bound;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer-coefficient polynomial, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial::from_i64(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as `i64`, when they all fit.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPolynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// gcd of the coefficients, taken positive.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides by the content, keeping the sign of the leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        IntPolynomial::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive with a positive leading coefficient.
    fn normalized(&self) -> Self {
        let p = self.primitive();
        if p.leading().is_some_and(|l| l.is_negative()) {
            p.neg()
        } else {
            p
        }
    }

    /// A positive multiple of the remainder of `self` by `divisor`.
    fn positive_prem(&self, divisor: &IntPolynomial) -> Self {
        let db = divisor.deg();
        let lb = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut scalings = 0u32;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (k, b) in divisor.coeffs.iter().enumerate() {
                r[dr - db + k] -= &lr * b;
            }
            scalings += 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        let mut rem = IntPolynomial::new(r);
        if lb.is_negative() && scalings % 2 == 1 {
            rem = rem.neg();
        }
        rem.primitive()
    }

    /// Exact quotient by `divisor`; `None` if the division is not exact over `Z`.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let db = divisor.deg();
        let lb = divisor.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let (quot, rem) = r[dr].div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (k, b) in divisor.coeffs.iter().enumerate() {
                r[dr - db + k] -= &quot * b;
            }
            q[dr - db] = quot;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        if r.is_empty() {
            Some(IntPolynomial::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> Self {
        let (mut a, mut b) = (self.normalized(), other.normalized());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_prem(&b);
            a = b;
            b = r;
        }
        a.normalized()
    }

    /// Yun's square-free decomposition: `(i, f_i)` with `p = c * prod f_i^i`.
    /// Factors are primitive, square-free, pairwise coprime, of positive
    /// degree.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, IntPolynomial)> {
        let p = self.normalized();
        if p.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.exact_div(&a).expect("gcd divides p");
        let mut c = dp.exact_div(&a).expect("gcd divides p'");
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let d = c.sub(&b.derivative());
            if b.degree() == Some(0) {
                break;
            }
            let f = b.gcd(&d);
            if f.degree().unwrap_or(0) > 0 {
                out.push((i, f.clone()));
            }
            b = b.exact_div(&f).expect("yun step");
            c = d.exact_div(&f).expect("yun step");
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        self.squarefree_decomposition()
            .into_iter()
            .fold(IntPolynomial::one(), |acc, (_, f)| acc.mul(&f))
    }

    pub fn sub(&self, other: &IntPolynomial) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new(
            (0..len)
                .map(|k| {
                    self.coeffs.get(k).cloned().unwrap_or_default()
                        - other.coeffs.get(k).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    /// Sign of `p(x)` at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        // p(u/v) v^d = sum c_k u^k v^(d-k), v > 0
        let (u, v) = (x.numer(), x.denom());
        let d = self.deg();
        let mut acc = self.coeffs[d].clone();
        let mut vpow = BigInt::one();
        for k in (0..d).rev() {
            vpow *= v;
            acc = acc * u + &self.coeffs[k] * &vpow;
        }
        acc.sign_ord()
    }

    pub fn is_root(&self, x: &BigRational) -> bool {
        self.sign_at(x) == Ordering::Equal
    }

    fn sign_at_infinity(&self, positive: bool) -> Ordering {
        let lc = self.leading().expect("nonzero").sign_ord();
        if positive || self.deg().is_multiple_of(2) {
            lc
        } else {
            lc.reverse()
        }
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    fn root_bound(&self) -> BigInt {
        let lc = self.leading().unwrap().abs();
        let m = self.coeffs.iter().map(|c| c.abs()).max().unwrap();
        m.div_ceil(&lc) + BigInt::one()
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Sturm chain of a square-free polynomial, each member a positive multiple
/// of the classical chain element.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut chain = vec![p.primitive(), p.derivative().primitive()];
        while !chain.last().unwrap().is_zero() {
            let k = chain.len();
            let r = chain[k - 2].positive_prem(&chain[k - 1]).neg();
            chain.push(r);
        }
        chain.pop();
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct roots in `(-inf, x]`.
    pub fn count_le(&self, x: &BigRational) -> usize {
        self.variations_at_infinity(false) - self.variations_at(x)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Number of real roots, with multiplicity, in an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCount {
    pub lo: Bound<BigRational>,
    pub hi: Bound<BigRational>,
    pub count: usize,
}

impl fmt::Display for RootCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = match &self.lo {
            Bound::Unbounded => "(-inf".to_string(),
            Bound::Included(a) => format!("[{a}"),
            Bound::Excluded(a) => format!("({a}"),
        };
        let hi = match &self.hi {
            Bound::Unbounded => "inf)".to_string(),
            Bound::Included(b) => format!("{b}]"),
            Bound::Excluded(b) => format!("{b})"),
        };
        write!(f, "{lo}, {hi}: {}", self.count)
    }
}

fn distinct_in(
    chain: &SturmChain,
    f: &IntPolynomial,
    lo: &Bound<BigRational>,
    hi: &Bound<BigRational>,
) -> usize {
    let upper = match hi {
        Bound::Unbounded => chain.count_all(),
        Bound::Included(b) => chain.count_le(b),
        Bound::Excluded(b) => chain.count_le(b) - usize::from(f.is_root(b)),
    };
    let lower = match lo {
        Bound::Unbounded => 0,
        Bound::Included(a) => chain.count_le(a) - usize::from(f.is_root(a)),
        Bound::Excluded(a) => chain.count_le(a),
    };
    upper.saturating_sub(lower)
}

fn check_bounds(lo: &Bound<BigRational>, hi: &Bound<BigRational>) -> Result<()> {
    let endpoint = |b: &Bound<BigRational>| match b {
        Bound::Included(x) | Bound::Excluded(x) => Some(x.clone()),
        Bound::Unbounded => None,
    };
    if let (Some(a), Some(b)) = (endpoint(lo), endpoint(hi)) {
        if a > b {
            return Err(Error::arg(format!("empty interval: {a} > {b}")));
        }
    }
    Ok(())
}

/// Real roots of `p` in the interval, counted with multiplicity.
pub fn count_roots(
    p: &IntPolynomial,
    lo: Bound<BigRational>,
    hi: Bound<BigRational>,
) -> Result<RootCount> {
    if p.is_zero() {
        return Err(Error::arg("root count of the zero polynomial"));
    }
    check_bounds(&lo, &hi)?;
    let mut count = 0;
    for (mult, f) in p.squarefree_decomposition() {
        let chain = SturmChain::new(&f);
        count += mult * distinct_in(&chain, &f, &lo, &hi);
    }
    Ok(RootCount { lo, hi, count })
}

/// Convenience wrapper for integer endpoints with open/closed flags.
pub fn count_roots_between(
    p: &IntPolynomial,
    lo: i64,
    hi: i64,
    open_lo: bool,
    open_hi: bool,
) -> Result<usize> {
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let lo = if open_lo { Bound::Excluded(q(lo)) } else { Bound::Included(q(lo)) };
    let hi = if open_hi { Bound::Excluded(q(hi)) } else { Bound::Included(q(hi)) };
    Ok(count_roots(p, lo, hi)?.count)
}

/// Real roots of `p` counted with multiplicity.
pub fn count_real_roots(p: &IntPolynomial) -> Result<usize> {
    Ok(count_roots(p, Bound::Unbounded, Bound::Unbounded)?.count)
}

/// Roots `<= x`, with multiplicity.
fn count_le(p: &[(usize, IntPolynomial, SturmChain)], x: &BigRational) -> usize {
    p.iter().map(|(m, _, c)| m * c.count_le(x)).sum()
}

/// Disjoint intervals `(a, b]`, one per distinct real root of `p`, in
/// increasing order. Each interval contains exactly one root.
pub fn isolate_roots(p: &IntPolynomial) -> Result<Vec<(BigRational, BigRational)>> {
    if p.is_zero() {
        return Err(Error::arg("root isolation of the zero polynomial"));
    }
    let sf = p.squarefree_part();
    if sf.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    let chain = SturmChain::new(&sf);
    let b = BigRational::from_integer(sf.root_bound());
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        let k = chain.count_le(&hi) - chain.count_le(&lo);
        match k {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `lambda_1 <= mu_1 <= lambda_2 <= ... <= mu_{n-1} <= lambda_n`, certified
/// exactly. Returns `false` when either polynomial is not real-rooted.
pub fn interlaces(parent: &IntPolynomial, child: &IntPolynomial) -> Result<bool> {
    let (Some(dp), Some(dc)) = (parent.degree(), child.degree()) else {
        return Err(Error::arg("interlacing of the zero polynomial"));
    };
    if dc + 1 != dp {
        return Err(Error::arg(format!(
            "child degree {dc} must be one less than parent degree {dp}"
        )));
    }
    if count_real_roots(parent)? != dp || count_real_roots(child)? != dc {
        return Ok(false);
    }
    let prep = |p: &IntPolynomial| -> Vec<(usize, IntPolynomial, SturmChain)> {
        p.squarefree_decomposition()
            .into_iter()
            .map(|(m, f)| {
                let c = SturmChain::new(&f);
                (m, f, c)
            })
            .collect()
    };
    let (pp, pc) = (prep(parent), prep(child));
    // N_parent(t) - N_child(t) only changes at roots of parent*child and is
    // right-continuous, so checking the right end of every isolating interval
    // covers every value it takes.
    for (_, right) in isolate_roots(&parent.mul(child))? {
        let np = count_le(&pp, &right);
        let nc = count_le(&pc, &right);
        if np < nc || np > nc + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Taylor shift `p(x + s)` on machine integers; `None` on overflow.
fn shift_i128(coeffs: &[i128], s: i128) -> Option<Vec<i128>> {
    let mut c = coeffs.to_vec();
    let d = c.len();
    for i in 0..d {
        for j in (i..d.saturating_sub(1)).rev() {
            c[j] = c[j].checked_add(c[j + 1].checked_mul(s)?)?;
        }
    }
    Some(c)
}

fn sign_changes(coeffs: &[i128]) -> usize {
    let mut last = 0i128;
    let mut v = 0;
    for &c in coeffs.iter().filter(|c| **c != 0) {
        if last != 0 && (c > 0) != (last > 0) {
            v += 1;
        }
        last = c.signum();
    }
    v
}

/// For a polynomial known to have only real roots: are they all in
/// `[-2, 2]` (or `(-2, 2)` when `open`)? Uses Descartes' rule, which is
/// exact for real-rooted polynomials. `None` on machine overflow.
pub fn real_rooted_within_two(coeffs: &[i128], open: bool) -> Option<bool> {
    // y = x - 2: no positive roots means every root <= 2
    let right = shift_i128(coeffs, 2)?;
    if sign_changes(&right) != 0 || (open && right[0] == 0) {
        return Some(false);
    }
    // y = -x - 2: no positive roots means every root >= -2
    let reflected: Vec<i128> = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
        .collect();
    let left = shift_i128(&reflected, 2)?;
    if sign_changes(&left) != 0 || (open && left[0] == 0) {
        return Some(false);
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-4, 0, 1]).to_string(), "x^2 - 4");
        assert_eq!(p(&[0, -4, 0, 1]).to_string(), "x^3 - 4x");
        assert_eq!(p(&[1, -1]).to_string(), "-x + 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn root_count_examples() {
        assert_eq!(count_roots_between(&p(&[-4, 0, 1]), -2, 2, false, false).unwrap(), 2);
        assert_eq!(count_roots_between(&p(&[-4, 0, 1]), -2, 2, true, true).unwrap(), 0);
        assert_eq!(count_roots_between(&p(&[-3, 0, 1]), -2, 2, true, true).unwrap(), 2);
        assert_eq!(count_roots_between(&p(&[0, -4, 0, 1]), -2, 2, false, false).unwrap(), 3);
        assert_eq!(count_roots_between(&p(&[0, -4, 0, 1]), -2, 2, true, false).unwrap(), 2);
        assert!(count_roots_between(&IntPolynomial::zero(), -2, 2, false, false).is_err());
        assert!(count_roots_between(&p(&[1, 1]), 3, 2, false, false).is_err());
    }

    #[test]
    fn multiplicities_survive() {
        // (x - 2)^3 (x + 1)^2 x
        let f = p(&[0, 1])
            .mul(&p(&[1, 1]))
            .mul(&p(&[1, 1]))
            .mul(&p(&[-2, 1]))
            .mul(&p(&[-2, 1]))
            .mul(&p(&[-2, 1]));
        assert_eq!(count_real_roots(&f).unwrap(), 6);
        assert_eq!(count_roots_between(&f, -2, 2, false, true).unwrap(), 3);
        assert_eq!(count_roots_between(&f, 2, 2, false, false).unwrap(), 3);
        let dec = f.squarefree_decomposition();
        let mults: Vec<usize> = dec.iter().map(|(m, _)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn complex_roots_are_not_counted() {
        assert_eq!(count_real_roots(&p(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(count_real_roots(&p(&[0, 1, 0, 1])).unwrap(), 1);
    }

    #[test]
    fn gcd_and_division() {
        let a = p(&[-1, 0, 1]); // (x-1)(x+1)
        let b = p(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.exact_div(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.exact_div(&p(&[2, 1])), None);
    }

    #[test]
    fn isolation_separates_close_roots() {
        // roots 1/3 and 1/2
        let f = p(&[1, -5, 6]);
        let iv = isolate_roots(&f).unwrap();
        assert_eq!(iv.len(), 2);
        let third = BigRational::new(1.into(), 3.into());
        assert!(iv[0].0 < third && third <= iv[0].1);
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[-4, 0, 1]), &p(&[0, 1])).unwrap());
        assert!(interlaces(&p(&[0, -4, 0, 1]), &p(&[-4, 0, 1])).unwrap());
        assert!(!interlaces(&p(&[-4, 0, 1]), &p(&[-3, 1])).unwrap());
        assert!(interlaces(&p(&[-4, 0, 1]), &p(&[-3, 0, 1])).is_err());
        // x^2 + 1 has no real roots
        assert!(!interlaces(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap());
        // double root in parent forces child root onto it
        assert!(interlaces(&p(&[1, -2, 1]), &p(&[-1, 1])).unwrap());
        assert!(!interlaces(&p(&[1, -2, 1]), &p(&[0, 1])).unwrap());
    }

    #[test]
    fn descartes_window() {
        let c = |v: &[i128]| v.to_vec();
        assert_eq!(real_rooted_within_two(&c(&[-4, 0, 1]), false), Some(true));
        assert_eq!(real_rooted_within_two(&c(&[-4, 0, 1]), true), Some(false));
        assert_eq!(real_rooted_within_two(&c(&[-3, 0, 1]), true), Some(true));
        assert_eq!(real_rooted_within_two(&c(&[-5, 0, 1]), false), Some(false));
        assert_eq!(real_rooted_within_two(&c(&[-3, 1]), false), Some(false));
        assert_eq!(real_rooted_within_two(&c(&[2, 1]), false), Some(true));
    }
}
