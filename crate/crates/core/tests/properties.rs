use cyclomat::document::{self, DigraphDocument};
use cyclomat::equivalence::{self, SignedPermutation};
use cyclomat::poly;
use cyclomat::spectra;
use cyclomat::symmetrize;
use cyclomat::Digraph;
use proptest::prelude::*;

/// Symmetrizable by construction: pick `d_i^2` and scale a base weight so
/// that `a_ij d_j^2 = a_ji d_i^2`.
fn symmetrizable(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(1i64..=4, n),
            prop::collection::vec(-2i64..=2, n * n),
            prop::collection::vec(-2i64..=2, n),
        )
            .prop_map(move |(dsq, base, charges)| {
                let mut g = Digraph::zero(n);
                for i in 0..n {
                    g.set(i, i, charges[i]);
                    for j in i + 1..n {
                        let b = base[i * n + j];
                        let k = num_integer::gcd(dsq[i], dsq[j]);
                        let (aij, aji) = (b * dsq[i] / k, b * dsq[j] / k);
                        if aij.abs() <= 4 && aji.abs() <= 4 {
                            g.set(i, j, aij);
                            g.set(j, i, aji);
                        }
                    }
                }
                g
            })
    })
}

/// Any sign-symmetric matrix with small entries.
fn sign_symmetric(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-2i64..=2, 1i64..=3, 1i64..=3), n * n).prop_map(move |cells| {
            let mut g = Digraph::zero(n);
            for i in 0..n {
                g.set(i, i, cells[i * n + i].0);
                for j in i + 1..n {
                    let (s, x, y) = cells[i * n + j];
                    let s = s.signum();
                    g.set(i, j, s * x);
                    g.set(j, i, s * y);
                }
            }
            g
        })
    })
}

fn signed_perm(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(prop::bool::ANY, n),
        prop::bool::ANY,
    )
        .prop_map(|(perm, signs, neg)| {
            let signs = signs.into_iter().map(|b| if b { 1 } else { -1 }).collect();
            SignedPermutation::new(perm, signs, if neg { -1 } else { 1 }).unwrap()
        })
}

fn with_perm<S: Strategy<Value = Digraph>>(s: S) -> impl Strategy<Value = (Digraph, SignedPermutation)> {
    s.prop_flat_map(|g| {
        let n = g.order();
        (Just(g), signed_perm(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_invariant((g, p) in with_perm(sign_symmetric(6))) {
        let h = equivalence::apply(&g, &p).unwrap();
        prop_assert_eq!(equivalence::canonical_form(&g), equivalence::canonical_form(&h));
        let w = equivalence::equivalence_witness(&g, &h).unwrap();
        prop_assert_eq!(equivalence::apply(&g, &w).unwrap(), h);
    }

    #[test]
    fn canonical_witness_reaches_key(g in sign_symmetric(6)) {
        let (key, w) = equivalence::canonical_form_with_witness(&g);
        prop_assert_eq!(&equivalence::apply(&g, &w).unwrap(), key.matrix());
    }

    #[test]
    fn group_action_laws((g, p, q) in sign_symmetric(5).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), signed_perm(n), signed_perm(n))
    })) {
        let n = g.order();
        let twice = equivalence::apply(&equivalence::apply(&g, &p).unwrap(), &q).unwrap();
        prop_assert_eq!(twice, equivalence::apply(&g, &q.compose(&p).unwrap()).unwrap());
        let back = equivalence::apply(&equivalence::apply(&g, &p).unwrap(), &p.inverse()).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(equivalence::apply(&g, &SignedPermutation::identity(n)).unwrap(), g);
    }

    #[test]
    fn char_poly_preserved_or_reflected((g, p) in with_perm(sign_symmetric(6))) {
        let h = equivalence::apply(&g, &p).unwrap();
        let pg = spectra::char_poly(&g);
        let expected = if p.negate() == 1 {
            pg
        } else if g.order() % 2 == 0 {
            pg.reflect()
        } else {
            pg.reflect().neg()
        };
        prop_assert_eq!(spectra::char_poly(&h), expected);
    }

    #[test]
    fn symmetrizability_is_an_invariant((g, p) in with_perm(sign_symmetric(5))) {
        let h = equivalence::apply(&g, &p).unwrap();
        let s = symmetrize::is_symmetrizable(&g);
        prop_assert_eq!(s, symmetrize::is_symmetrizable(&h));
        prop_assert_eq!(s, symmetrize::is_symmetrizable(&g.transpose()));
    }

    #[test]
    fn symmetrizer_balances(g in symmetrizable(7)) {
        let d = symmetrize::compute_symmetrizer(&g).unwrap();
        prop_assert!(symmetrize::balancing_holds(&g, &d).unwrap());
        let t = symmetrize::symmetrization(&g).unwrap();
        for i in 0..g.order() {
            for j in 0..g.order() {
                let v = g.get(i, j) * g.get(j, i);
                let want = if i == j { g.get(i, i) * g.get(i, i).abs() } else { v * g.get(i, j).signum() };
                prop_assert_eq!(t.get(i, j), want);
            }
        }
    }

    #[test]
    fn deletions_interlace(g in symmetrizable(7)) {
        let parent = spectra::char_poly(&g);
        let n = if g.order() > 1 { g.order() } else { 0 };
        for v in 0..n {
            let child = spectra::char_poly(&g.delete_vertex(v).unwrap());
            prop_assert!(spectra::interlaces(&parent, &child).unwrap());
        }
    }

    #[test]
    fn documents_round_trip(g in sign_symmetric(6)) {
        let doc = DigraphDocument::from_digraph(&g);
        let text = doc.to_string();
        prop_assert_eq!(&document::parse(&text).unwrap(), &doc);
        prop_assert_eq!(doc.to_digraph(), g);
    }

    #[test]
    fn root_count_partition(g in symmetrizable(6)) {
        let p = spectra::char_poly(&g);
        let total = poly::count_real_roots(&p).unwrap();
        let closed = poly::count_roots_between(&p, -2, 2, false, false).unwrap();
        let open = poly::count_roots_between(&p, -2, 2, true, true).unwrap();
        let ends = poly::count_roots_between(&p, -2, -2, false, false).unwrap()
            + poly::count_roots_between(&p, 2, 2, false, false).unwrap();
        prop_assert_eq!(total, g.order());
        prop_assert_eq!(closed, open + ends);
    }
}
