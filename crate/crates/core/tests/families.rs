use cyclomat::equivalence::are_equivalent;
use cyclomat::families::{self, FamilyId, FamilyKind::*};
use cyclomat::spectra::{all_eigs_in_open, char_poly, is_cyclotomic, is_plus_minus_two_only};
use cyclomat::symmetrize::{is_symmetrizable, symmetrization};
use cyclomat::{poly, Digraph, FamilyKind, SurdMatrix};

fn has_eigenvalue_at_two(g: &Digraph) -> bool {
    let p = char_poly(g);
    poly::count_roots_between(&p, 2, 2, false, false).unwrap() > 0
        || poly::count_roots_between(&p, -2, -2, false, false).unwrap() > 0
}

#[test]
fn generators_up_to_twelve() {
    let catalog = families::catalog(13);
    assert!(catalog.len() > 200);
    for (id, g) in &catalog {
        assert_eq!(g.order(), id.order(), "{id}");
        assert!(is_symmetrizable(g), "{id}");
        assert!(g.is_connected(), "{id}");
        assert!(is_cyclotomic(g), "{id}");
        match id.kind {
            A1TildePrime | A2Pm | LPlus | O4Prime | L | LPrime | O4Pm | S8Minus => {
                assert!(is_plus_minus_two_only(g), "{id}")
            }
            A | D | E6 | E7 | E8 | B | C | F4 | G2 | O4DoublePrime | B2Pm | PPlus => {
                assert!(all_eigs_in_open(g), "{id}")
            }
            _ => {
                assert!(has_eigenvalue_at_two(g), "{id}");
                assert!(!all_eigs_in_open(g), "{id}");
            }
        }
    }
}

#[test]
fn paths_nest() {
    for n in 2..=11 {
        let a = families::generate(&FamilyId::new(A, n).unwrap()).unwrap();
        let b = families::generate(&FamilyId::new(A, n + 1).unwrap()).unwrap();
        assert!(are_equivalent(&a, &b.delete_vertex(n).unwrap()));
    }
}

fn surd_as_digraph(s: &SurdMatrix) -> Digraph {
    Digraph::from_rows(&s.rows()).unwrap()
}

fn surd_kinds() -> Vec<FamilyKind> {
    FamilyKind::ALL.iter().copied().filter(|k| k.is_surd()).collect()
}

#[test]
fn symmetrizations_match_surd_generators() {
    let mut checked = 0;
    for kind in surd_kinds() {
        let source = families::surd_source(kind).unwrap();
        for n in 1..=12 {
            let (Ok(id), Ok(src)) = (FamilyId::new(kind, n), FamilyId::new(source, n)) else {
                continue;
            };
            let sym = symmetrization(&families::generate(&src).unwrap()).unwrap();
            let drawn = families::generate_surd(&id).unwrap();
            assert!(are_equivalent(&surd_as_digraph(&sym), &surd_as_digraph(&drawn)), "{id}");
            assert!(drawn.square_is_scalar(4), "{id}");
            assert!(sym.square_is_scalar(4), "{id}");
            checked += 1;
        }
    }
    assert!(checked >= 12, "{checked}");
}

#[test]
fn surd_generators_are_irrational() {
    for kind in surd_kinds() {
        let n = (1..=8).find(|&n| FamilyId::new(kind, n).is_ok()).unwrap();
        let s = families::generate_surd(&FamilyId::new(kind, n).unwrap()).unwrap();
        let rows = s.rows();
        let irrational = rows.iter().flatten().any(|&t| {
            let r = (t.unsigned_abs() as f64).sqrt().round() as u64;
            r * r != t.unsigned_abs()
        });
        assert!(irrational, "{kind:?}");
    }
}

#[test]
fn transposes_of_families() {
    for (id, g) in families::catalog(10) {
        let t = FamilyId::with_transpose(id.kind, id.n, !id.transposed).unwrap();
        assert_eq!(families::generate(&t).unwrap(), g.transpose(), "{id}");
    }
}
