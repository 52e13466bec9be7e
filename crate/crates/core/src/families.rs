//! Generators for the named digraphs and surd graphs.
//!
//! Subscripts follow the usual convention: an untilded family with subscript
//! `n` has `n` vertices, a tilded one has `n + 1`.
//!
//! Vertex numbering:
//!
//! * paths, `B_n`, `C_n`, `F_4`, `J_n`, `M_n`, `P_n^+`, `F~4`, `G~2`, `C~n`,
//!   `C~n'`: left to right, `0` at the end carrying the first listed weight
//!   pair or charge;
//! * `A~n`: around the cycle;
//! * `D_n`, `B~n`: the two fork leaves first, then the path; `D~n` adds the
//!   second fork's leaves last; `I_n`: the charged end first, fork leaves last;
//! * `E` types: centre, then each arm outward;
//! * `L_n`, `L_n'`: left end, top row left to right, bottom row left to
//!   right, right end; `L_n^+`: left end, top row, bottom row, the last pair
//!   being the two charged vertices;
//! * `O4'`, `O4''`, `O4pm`: the 4-cycle `0 1 3 2`; `S8-`: a cube, vertex
//!   `i` adjacent to `i ^ 1`, `i ^ 2` and `i ^ 4`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::equivalence::equivalent_to_transpose;
use crate::error::{Error, Result};
use crate::matrix::{Digraph, SurdMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    A,
    ATilde,
    D,
    DTilde,
    E6,
    E7,
    E8,
    E6Tilde,
    E7Tilde,
    E8Tilde,
    A1Tilde,
    A1TildePrime,
    O4Prime,
    S8Minus,
    L,
    LPrime,
    LPlus,
    A2Pm,
    O4Pm,
    BTilde,
    CTilde,
    CTildePrime,
    F4Tilde,
    G2Tilde,
    B,
    C,
    F4,
    G2,
    I,
    J,
    M,
    PPlus,
    O4DoublePrime,
    B2Pm,
    /// The `1 x 1` matrix `(2)`.
    Charge2,
    A2GPm,
    O4GPrime,
    O4GPm,
    S8GMinus,
    LG,
    LGPlus,
}

use FamilyKind::*;

impl FamilyKind {
    pub const ALL: [FamilyKind; 41] = [
        A, ATilde, D, DTilde, E6, E7, E8, E6Tilde, E7Tilde, E8Tilde, A1Tilde, A1TildePrime,
        O4Prime, S8Minus, L, LPrime, LPlus, A2Pm, O4Pm, BTilde, CTilde, CTildePrime, F4Tilde,
        G2Tilde, B, C, F4, G2, I, J, M, PPlus, O4DoublePrime, B2Pm, Charge2, A2GPm, O4GPrime,
        O4GPm, S8GMinus, LG, LGPlus,
    ];

    /// Surd families have no integer generator.
    pub fn is_surd(self) -> bool {
        matches!(self, A2GPm | O4GPrime | O4GPm | S8GMinus | LG | LGPlus)
    }

    pub fn is_tilded(self) -> bool {
        matches!(
            self,
            ATilde
                | DTilde
                | E6Tilde
                | E7Tilde
                | E8Tilde
                | A1Tilde
                | A1TildePrime
                | BTilde
                | CTilde
                | CTildePrime
                | F4Tilde
                | G2Tilde
        )
    }

    /// Subscript for families of one size.
    fn fixed(self) -> Option<usize> {
        Some(match self {
            E6 | E6Tilde => 6,
            E7 | E7Tilde => 7,
            E8 | E8Tilde => 8,
            A1Tilde | A1TildePrime | Charge2 => 1,
            O4Prime | O4Pm | O4DoublePrime | F4 | F4Tilde | O4GPrime | O4GPm => 4,
            S8Minus | S8GMinus => 8,
            A2Pm | G2Tilde | G2 | B2Pm | A2GPm => 2,
            _ => return None,
        })
    }

    fn valid(self, n: usize) -> bool {
        if let Some(f) = self.fixed() {
            return n == f;
        }
        match self {
            A | PPlus => n >= 1,
            ATilde | CTilde | CTildePrime | B | J | M => n >= 2,
            BTilde | C | I => n >= 3,
            D | DTilde => n >= 4,
            L | LPrime | LG => n >= 4 && n.is_multiple_of(2),
            LPlus | LGPlus => n >= 3 && n % 2 == 1,
            _ => unreachable!("fixed families handled above"),
        }
    }

    fn range_hint(self) -> &'static str {
        match self {
            A | PPlus => "n >= 1",
            ATilde | CTilde | CTildePrime | B | J | M => "n >= 2",
            BTilde | C | I => "n >= 3",
            D | DTilde => "n >= 4",
            L | LPrime | LG => "even n >= 4",
            LPlus | LGPlus => "odd n >= 3",
            _ => "a fixed size",
        }
    }

    /// `(prefix, suffix)` of the printed name around the subscript.
    pub fn affixes(self) -> (&'static str, &'static str) {
        match self {
            A => ("A", ""),
            ATilde | A1Tilde => ("A~", ""),
            D => ("D", ""),
            DTilde => ("D~", ""),
            E6 | E7 | E8 => ("E", ""),
            E6Tilde | E7Tilde | E8Tilde => ("E~", ""),
            A1TildePrime => ("A~", "'"),
            O4Prime => ("O", "'"),
            S8Minus => ("S", "-"),
            L => ("L", ""),
            LPrime => ("L", "'"),
            LPlus => ("L", "+"),
            A2Pm => ("A", "pm"),
            O4Pm => ("O", "pm"),
            BTilde => ("B~", ""),
            CTilde => ("C~", ""),
            CTildePrime => ("C~", "'"),
            F4Tilde => ("F~", ""),
            G2Tilde => ("G~", ""),
            B => ("B", ""),
            C => ("C", ""),
            F4 => ("F", ""),
            G2 => ("G", ""),
            I => ("I", ""),
            J => ("J", ""),
            M => ("M", ""),
            PPlus => ("P", "+"),
            O4DoublePrime => ("O", "''"),
            B2Pm => ("B", "pm"),
            Charge2 => ("(", ")"),
            A2GPm => ("A", "Gpm"),
            O4GPrime => ("O", "G'"),
            O4GPm => ("O", "Gpm"),
            S8GMinus => ("S", "G-"),
            LG => ("L", "G"),
            LGPlus => ("L", "G+"),
        }
    }
}

/// A family member: kind, subscript and whether it is transposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilyId {
    pub kind: FamilyKind,
    pub n: usize,
    pub transposed: bool,
}

impl FamilyId {
    pub fn new(kind: FamilyKind, n: usize) -> Result<Self> {
        Self::with_transpose(kind, n, false)
    }

    pub fn with_transpose(kind: FamilyKind, n: usize, transposed: bool) -> Result<Self> {
        if !kind.valid(n) {
            let (pre, suf) = kind.affixes();
            return Err(Error::arg(format!(
                "{pre}n{suf} requires {}, got n = {n}",
                kind.range_hint()
            )));
        }
        Ok(FamilyId { kind, n, transposed })
    }

    /// Instance of a family with only one member.
    pub fn fixed(kind: FamilyKind) -> Self {
        let n = kind.fixed().expect("family has a fixed size");
        FamilyId { kind, n, transposed: false }
    }

    pub fn transpose(self) -> Self {
        FamilyId { transposed: !self.transposed, ..self }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        if self.kind.is_tilded() {
            self.n + 1
        } else {
            self.n
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pre, suf) = self.kind.affixes();
        if self.kind == Charge2 {
            write!(f, "(2)")?;
        } else {
            write!(f, "{pre}{}{suf}", self.n)?;
        }
        if self.transposed {
            write!(f, "^T")?;
        }
        Ok(())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::arg(format!("unknown family name {s:?}"));
        let mut name = s.trim().replace('±', "pm").replace('\u{2032}', "'").to_lowercase();
        let mut transposed = false;
        if let Some(stripped) = name.strip_suffix("^t") {
            transposed = true;
            name = stripped.to_string();
        }
        if name == "(2)" {
            return FamilyId::with_transpose(Charge2, 1, transposed);
        }
        let digits_at = name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (prefix, rest) = name.split_at(digits_at);
        let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let (digits, suffix) = rest.split_at(digits_end);
        let n: usize = digits.parse().map_err(|_| bad())?;
        let kind = FamilyKind::ALL
            .iter()
            .copied()
            .filter(|k| *k != Charge2)
            .find(|k| {
                let (p, q) = k.affixes();
                p.eq_ignore_ascii_case(prefix)
                    && q.eq_ignore_ascii_case(suffix)
                    && k.fixed().is_none_or(|f| f == n)
                    && !(*k == ATilde && n == 1)
            })
            .ok_or_else(bad)?;
        FamilyId::with_transpose(kind, n, transposed)
    }
}

struct Builder(Digraph);

impl Builder {
    fn new(n: usize) -> Self {
        Builder(Digraph::zero(n))
    }

    fn edge(&mut self, i: usize, j: usize, aij: i64, aji: i64) -> &mut Self {
        self.0.set(i, j, aij);
        self.0.set(j, i, aji);
        self
    }

    fn unit(&mut self, i: usize, j: usize) -> &mut Self {
        self.edge(i, j, 1, 1)
    }

    fn path(&mut self, vertices: impl IntoIterator<Item = usize>) -> &mut Self {
        let v: Vec<usize> = vertices.into_iter().collect();
        for w in v.windows(2) {
            self.unit(w[0], w[1]);
        }
        self
    }

    fn charge(&mut self, i: usize, c: i64) -> &mut Self {
        self.0.set(i, i, c);
        self
    }

    fn done(&mut self) -> Digraph {
        self.0.clone()
    }
}

/// Star with arms of the given lengths, centre `0`.
fn star(arms: &[usize]) -> Digraph {
    let n = 1 + arms.iter().sum::<usize>();
    let mut b = Builder::new(n);
    let mut next = 1;
    for &len in arms {
        b.path(std::iter::once(0).chain(next..next + len));
        next += len;
    }
    b.done()
}

/// Edge weights of the ladder families. `left` is the pair on both edges
/// leaving the left end; the right-end pairs apply to the last top and
/// bottom vertices.
struct Ladder {
    r: usize,
    left: (i64, i64),
}

impl Ladder {
    fn top(&self, k: usize) -> usize {
        1 + k
    }

    fn bottom(&self, k: usize) -> usize {
        1 + self.r + k
    }

    fn body(&self, b: &mut Builder) {
        let (x, y) = self.left;
        b.edge(0, self.top(0), x, y).edge(0, self.bottom(0), x, y);
        for k in 0..self.r - 1 {
            b.unit(self.top(k), self.top(k + 1))
                .edge(self.bottom(k), self.bottom(k + 1), -1, -1)
                .edge(self.bottom(k), self.top(k + 1), -1, -1)
                .unit(self.top(k), self.bottom(k + 1));
        }
    }
}

fn ladder_l(n: usize, prime: bool) -> Digraph {
    let r = (n - 2) / 2;
    let lad = Ladder { r, left: (2, 1) };
    let mut b = Builder::new(n);
    lad.body(&mut b);
    let end = n - 1;
    let (q, p) = (lad.top(r - 1), lad.bottom(r - 1));
    if prime {
        b.edge(q, end, 2, 1).edge(p, end, -2, -1);
    } else {
        b.edge(q, end, 1, 2).edge(p, end, -1, -2);
    }
    b.done()
}

fn ladder_l_plus(n: usize) -> Digraph {
    let r = (n - 1) / 2;
    let lad = Ladder { r, left: (1, 2) };
    let mut b = Builder::new(n);
    lad.body(&mut b);
    let (s, rr) = (lad.top(r - 1), lad.bottom(r - 1));
    b.charge(s, 1).charge(rr, 1).edge(s, rr, -1, -1);
    b.done()
}

fn o4_prime() -> Digraph {
    Digraph::from_rows(&[[0, -1, 1, 0], [-1, 0, 0, 1], [3, 0, 0, 1], [0, 3, 1, 0]]).unwrap()
}

fn o4_pm() -> Digraph {
    Builder::new(4)
        .charge(0, -1)
        .charge(1, 1)
        .charge(2, 1)
        .charge(3, -1)
        .unit(0, 1)
        .edge(0, 2, 2, 1)
        .edge(1, 3, 2, 1)
        .edge(2, 3, -1, -1)
        .done()
}

fn s8_minus() -> Digraph {
    let mut b = Builder::new(8);
    b.edge(0, 1, 2, 1).edge(2, 3, 2, 1).edge(4, 5, -2, -1).edge(6, 7, 2, 1);
    for (i, j) in [(0, 2), (0, 4), (1, 5), (3, 7), (4, 6), (5, 7)] {
        b.unit(i, j);
    }
    b.edge(1, 3, -1, -1).edge(2, 6, -1, -1);
    b.done()
}

fn base(id: &FamilyId) -> Result<Digraph> {
    let n = id.n;
    let order = id.order();
    let g = match id.kind {
        A => Builder::new(n).path(0..n).done(),
        ATilde => Builder::new(order).path(0..order).unit(order - 1, 0).done(),
        D => Builder::new(n).unit(0, 2).path(1..n).done(),
        DTilde => Builder::new(order).unit(0, 2).path(1..n).unit(n - 2, n).done(),
        E6 => star(&[2, 2, 1]),
        E7 => star(&[3, 2, 1]),
        E8 => star(&[1, 2, 4]),
        E6Tilde => star(&[2, 2, 2]),
        E7Tilde => star(&[3, 3, 1]),
        E8Tilde => star(&[1, 2, 5]),
        A1Tilde => Builder::new(2).edge(0, 1, 2, 2).done(),
        A1TildePrime => Builder::new(2).edge(0, 1, 1, 4).done(),
        O4Prime => o4_prime(),
        S8Minus => s8_minus(),
        L => ladder_l(n, false),
        LPrime => ladder_l(n, true),
        LPlus => ladder_l_plus(n),
        A2Pm => Builder::new(2).charge(0, 1).charge(1, -1).edge(0, 1, 3, 1).done(),
        O4Pm => o4_pm(),
        BTilde => Builder::new(order).unit(0, 2).path(1..n).edge(n - 1, n, 2, 1).done(),
        CTilde => Builder::new(order).path(1..n).edge(0, 1, 1, 2).edge(n - 1, n, 2, 1).done(),
        CTildePrime => {
            Builder::new(order).path(1..n).edge(0, 1, 1, 2).edge(n - 1, n, 1, 2).done()
        }
        F4Tilde => Builder::new(5).path(0..3).edge(2, 3, 1, 2).unit(3, 4).done(),
        G2Tilde => Builder::new(3).unit(0, 1).edge(1, 2, 1, 3).done(),
        B => Builder::new(n).path(1..n).edge(0, 1, 1, 2).done(),
        C => Builder::new(n).path(1..n).edge(0, 1, 2, 1).done(),
        F4 => Builder::new(4).unit(0, 1).edge(1, 2, 1, 2).unit(2, 3).done(),
        G2 => Builder::new(2).edge(0, 1, 1, 3).done(),
        I => Builder::new(n).charge(0, 1).path(0..n - 1).unit(n - 3, n - 1).done(),
        J => Builder::new(n).charge(0, 1).charge(n - 1, 1).path(0..n).done(),
        M => Builder::new(n).path(1..n).edge(0, 1, 1, 2).charge(n - 1, 1).done(),
        PPlus => Builder::new(n).charge(0, 1).path(0..n).done(),
        O4DoublePrime => Builder::new(4)
            .edge(0, 1, -1, -1)
            .edge(0, 2, 1, 2)
            .edge(1, 3, 1, 2)
            .unit(2, 3)
            .done(),
        B2Pm => Builder::new(2).charge(0, 1).charge(1, -1).edge(0, 1, 1, 2).done(),
        Charge2 => Builder::new(1).charge(0, 2).done(),
        A2GPm | O4GPrime | O4GPm | S8GMinus | LG | LGPlus => {
            return Err(Error::arg(format!("{id} is a surd family; use generate_surd")))
        }
    };
    debug_assert_eq!(g.order(), order, "{id}");
    Ok(g)
}

/// Integer matrix of a family member.
pub fn generate(id: &FamilyId) -> Result<Digraph> {
    FamilyId::with_transpose(id.kind, id.n, id.transposed)?;
    let g = base(id)?;
    Ok(if id.transposed { g.transpose() } else { g })
}

/// Surd edge list `(i, j, t)` for `t = ±1, ±2, ±3` meaning `sgn(t) sqrt|t|`.
fn surd(n: usize, charges: &[(usize, i64)], edges: &[(usize, usize, i64)]) -> SurdMatrix {
    let mut t = vec![0; n * n];
    for &(i, c) in charges {
        t[i * n + i] = c;
    }
    for &(i, j, w) in edges {
        t[i * n + j] = w;
        t[j * n + i] = w;
    }
    SurdMatrix::new(n, t).expect("symmetric by construction")
}

fn ladder_surd(n: usize, plus: bool) -> SurdMatrix {
    let r = if plus { (n - 1) / 2 } else { (n - 2) / 2 };
    let top = |k: usize| 1 + k;
    let bottom = |k: usize| 1 + r + k;
    let mut edges = vec![(0, top(0), 2), (0, bottom(0), 2)];
    for k in 0..r - 1 {
        edges.push((top(k), top(k + 1), 1));
        edges.push((bottom(k), bottom(k + 1), -1));
        edges.push((bottom(k), top(k + 1), -1));
        edges.push((top(k), bottom(k + 1), 1));
    }
    let mut charges = vec![];
    if plus {
        charges.push((top(r - 1), 1));
        charges.push((bottom(r - 1), 1));
        edges.push((top(r - 1), bottom(r - 1), -1));
    } else {
        edges.push((top(r - 1), n - 1, 2));
        edges.push((bottom(r - 1), n - 1, -2));
    }
    surd(n, &charges, &edges)
}

/// Symmetric surd matrix of a surd family member.
pub fn generate_surd(id: &FamilyId) -> Result<SurdMatrix> {
    FamilyId::with_transpose(id.kind, id.n, id.transposed)?;
    Ok(match id.kind {
        A2GPm => surd(2, &[(0, 1), (1, -1)], &[(0, 1, 3)]),
        O4GPrime => surd(4, &[], &[(0, 1, -1), (0, 2, 3), (1, 3, 3), (2, 3, 1)]),
        O4GPm => surd(
            4,
            &[(0, -1), (1, 1), (2, 1), (3, -1)],
            &[(0, 1, 1), (0, 2, 2), (1, 3, 2), (2, 3, -1)],
        ),
        S8GMinus => surd(
            8,
            &[],
            &[
                (0, 1, 2),
                (2, 3, 2),
                (4, 5, -2),
                (6, 7, 2),
                (0, 2, 1),
                (0, 4, 1),
                (1, 5, 1),
                (3, 7, 1),
                (4, 6, 1),
                (5, 7, 1),
                (1, 3, -1),
                (2, 6, -1),
            ],
        ),
        LG => ladder_surd(id.n, false),
        LGPlus => ladder_surd(id.n, true),
        _ => return Err(Error::arg(format!("{id} is not a surd family"))),
    })
}

/// Integer family whose symmetrization is the given surd family.
pub fn surd_source(kind: FamilyKind) -> Option<FamilyKind> {
    Some(match kind {
        A2GPm => A2Pm,
        O4GPrime => O4Prime,
        O4GPm => O4Pm,
        S8GMinus => S8Minus,
        LG => L,
        LGPlus => LPlus,
        _ => return None,
    })
}

/// Every integer family member with at most `max_order` vertices, plus the
/// transpose of each member not equivalent to its own transpose. `C_n` is
/// listed under its own name rather than as `B_n^T`.
pub fn catalog(max_order: usize) -> Vec<(FamilyId, Digraph)> {
    let mut out = Vec::new();
    for kind in FamilyKind::ALL.iter().copied().filter(|k| !k.is_surd()) {
        for n in 1..=max_order {
            let Ok(id) = FamilyId::new(kind, n) else {
                continue;
            };
            if id.order() > max_order {
                continue;
            }
            let g = generate(&id).expect("valid id");
            let own_transpose_is_named = matches!(kind, B | C) && n >= 3;
            let add_transpose = !own_transpose_is_named && !equivalent_to_transpose(&g);
            let gt = g.transpose();
            out.push((id, g));
            if add_transpose {
                out.push((id.transpose(), gt));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{all_eigs_in_open, is_cyclotomic, is_plus_minus_two_only};
    use crate::symmetrize::is_symmetrizable;

    fn id(s: &str) -> FamilyId {
        s.parse().unwrap()
    }

    #[test]
    fn literal_examples() {
        assert_eq!(generate(&id("A~1'")).unwrap().rows(), vec![vec![0, 1], vec![4, 0]]);
        assert_eq!(generate(&id("B2pm")).unwrap().rows(), vec![vec![1, 1], vec![2, -1]]);
        assert_eq!(generate(&id("O4'")).unwrap(), o4_prime());
        assert_eq!(
            generate(&id("L3+")).unwrap().rows(),
            vec![vec![0, 1, 1], vec![2, 1, -1], vec![2, -1, 1]]
        );
        assert_eq!(generate_surd(&id("A2Gpm")).unwrap().rows(), vec![vec![1, 3], vec![3, -1]]);
    }

    #[test]
    fn names_round_trip() {
        for s in [
            "A5", "A~5", "D5", "D~5", "E6", "E~8", "A~1", "A~1'", "O4'", "S8-", "L6", "L6'",
            "L7+", "A2pm", "O4pm", "B~3", "C~2", "C~2'", "F~4", "G~2", "B3", "C3", "F4", "G2",
            "I3", "J2", "M2", "P1+", "O4''", "B2pm", "(2)", "A2Gpm", "O4G'", "O4Gpm", "S8G-",
            "L6G", "L7G+", "B3^T",
        ] {
            assert_eq!(id(s).to_string(), s);
        }
        assert_eq!(id("c~4'"), id("C~4'"));
        assert_eq!(id("B2±"), id("B2pm"));
        assert!("L5".parse::<FamilyId>().is_err());
        assert!("E9".parse::<FamilyId>().is_err());
        assert!("X3".parse::<FamilyId>().is_err());
        assert!("B~2".parse::<FamilyId>().is_err());
    }

    #[test]
    fn orders_follow_subscripts() {
        assert_eq!(generate(&id("A~5")).unwrap().order(), 6);
        assert_eq!(generate(&id("D~4")).unwrap().order(), 5);
        assert_eq!(generate(&id("E~8")).unwrap().order(), 9);
        assert_eq!(generate(&id("B~3")).unwrap().order(), 4);
        assert_eq!(generate(&id("L8")).unwrap().order(), 8);
        assert_eq!(generate(&id("L9+")).unwrap().order(), 9);
    }

    #[test]
    fn surd_ids_are_rejected_by_the_integer_generator() {
        assert!(generate(&id("L6G")).is_err());
        assert!(generate_surd(&id("L6")).is_err());
    }

    #[test]
    fn catalog_small() {
        assert!(catalog(0).is_empty());
        let names: Vec<String> = catalog(2).iter().map(|(i, _)| i.to_string()).collect();
        for want in ["A~1", "A~1'", "A2pm", "B2", "B2pm", "G2", "M2", "M2^T", "J2", "P2+"] {
            assert!(names.contains(&want.to_string()), "{want} missing from {names:?}");
        }
        assert!(catalog(10).iter().all(|(_, g)| is_symmetrizable(g)));
    }

    #[test]
    fn spectral_classes() {
        for (i, g) in catalog(9) {
            match i.kind {
                O4Prime | S8Minus | L | LPrime | LPlus | A2Pm | O4Pm => {
                    assert!(is_plus_minus_two_only(&g), "{i}")
                }
                B | C | F4 | G2 | A | D | E6 | E7 | E8 => assert!(all_eigs_in_open(&g), "{i}"),
                _ => assert!(is_cyclotomic(&g), "{i}"),
            }
        }
    }
}
