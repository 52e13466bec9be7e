//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cyclomat::classify::{enumerate, SearchConstraints};
use cyclomat::equivalence::{
    are_equivalent, canonical_form, decorated_weight_modulus_sequences, equivalent_to_transpose,
    weight_modulus_sequences,
};
use cyclomat::families::{self, FamilyId, FamilyKind, FamilyKind::*};
use cyclomat::spectra::{all_eigs_in_open, char_poly, eigenvalues_float, interlaces, is_plus_minus_two_only};
use cyclomat::symmetrize::symmetrization;
use cyclomat::verify;
use cyclomat::{poly, CanonicalKey, Digraph, IntPolynomial, VertexSet};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn names(v: &[String]) -> BTreeSet<String> {
    v.iter().cloned().collect()
}

fn set(list: &[&str]) -> BTreeSet<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn diff(found: &BTreeSet<String>, want: &BTreeSet<String>) -> String {
    format!(
        "missing {:?}, extra {:?}",
        want.difference(found).collect::<Vec<_>>(),
        found.difference(want).collect::<Vec<_>>()
    )
}

fn theorem_1() -> Outcome {
    let v = verify::verify_theorem_1(8).map_err(|e| e.to_string())?;
    let want = set(&[
        "A~1'", "A2pm", "L3+", "L3+^T", "O4'", "L4", "L4'", "O4pm", "L5+", "L5+^T", "L6", "L6^T", "L6'", "L7+",
        "L7+^T", "S8-", "L8", "L8^T", "L8'",
    ]);
    let found = names(&v.sections[0].found);
    if found != want {
        return Err(diff(&found, &want));
    }
    if !v.passed {
        return Err(v.to_text());
    }
    let reps = enumerate(&SearchConstraints::cyclotomic(8).nonsymmetric()).map_err(|e| e.to_string())?;
    let squares = reps.maximal().all(|r| is_plus_minus_two_only(&r.representative));
    if !squares {
        return Err("a maximal class has A^2 != 4I".into());
    }
    Ok(format!("{} maximal classes, all with A^2 = 4I; {}", found.len(), v.notes.join("; ")))
}

fn theorem_2() -> Outcome {
    let v = verify::verify_theorem_2(6).map_err(|e| e.to_string())?;
    let want = set(&[
        "B2", "B3", "B4", "B5", "B6", "C3", "C4", "C5", "C6", "G2", "F4", "O4''", "B2pm",
    ]);
    let found = names(&v.sections[0].found);
    if found != want || !v.passed {
        return Err(format!("{}; {}", diff(&found, &want), v.to_text()));
    }
    Ok(format!(
        "{} classes; without a one-vertex extension: {}",
        found.len(),
        v.sections[1].found.join(", ")
    ))
}

fn corollary_1() -> Outcome {
    let v = verify::verify_corollary_1(6).map_err(|e| e.to_string())?;
    if !v.passed {
        return Err(v.to_text());
    }
    let nonsym = names(&v.sections[1].found);
    for must in ["B~3", "B~3^T", "B~4", "B~4^T", "C~3'", "C~4'"] {
        if !nonsym.contains(must) {
            return Err(format!("{must} not found"));
        }
    }
    if nonsym.iter().any(|n| n.starts_with("C~") && n.ends_with("'^T")) {
        return Err("C~n' listed twice".into());
    }
    let counts: Vec<String> = v.sections.iter().map(|s| format!("{} {}", s.label, s.found.len())).collect();
    Ok(counts.join(", "))
}

fn corollary_5() -> Outcome {
    let c = SearchConstraints::cyclotomic(8).nonnegative().open().nonsymmetric();
    let rep = enumerate(&c).map_err(|e| e.to_string())?;
    let charged: Vec<String> =
        rep.classes.iter().filter(|r| r.representative.is_charged()).map(|r| format!("{:?}", r.representative)).collect();
    if !charged.is_empty() {
        return Err(format!("charged classes: {charged:?}"));
    }
    let v = verify::verify_corollary_5(8).map_err(|e| e.to_string())?;
    if !v.passed {
        return Err(v.to_text());
    }
    Ok(format!("0 charged among {} nonsymmetric classes up to order 8", rep.classes.len()))
}

fn generate(kind: FamilyKind, n: usize) -> Option<(FamilyId, Digraph)> {
    let id = FamilyId::new(kind, n).ok()?;
    (id.order() <= 10).then(|| (id, families::generate(&id).unwrap()))
}

fn separated(g: &Digraph, h: &Digraph, decorated: bool) -> bool {
    let edges = g.order().max(h.order());
    let seqs = |x: &Digraph| {
        if decorated {
            decorated_weight_modulus_sequences(x, edges).unwrap()
        } else {
            weight_modulus_sequences(x, edges).unwrap()
        }
    };
    seqs(g) != seqs(h)
}

fn transpose_ledger() -> Outcome {
    let positive: &[(FamilyKind, usize)] = &[
        (A1TildePrime, 1),
        (O4Prime, 4),
        (S8Minus, 8),
        (L, 4),
        (A2Pm, 2),
        (O4Pm, 4),
        (B, 2),
        (F4, 4),
        (G2, 2),
        (O4DoublePrime, 4),
        (B2Pm, 2),
    ];
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut positives: Vec<(FamilyId, Digraph)> = positive.iter().filter_map(|&(k, n)| generate(k, n)).collect();
    positives.extend((4..=10).step_by(2).filter_map(|n| generate(LPrime, n)));
    positives.extend((3..=9).filter_map(|n| generate(CTildePrime, n)));
    for (id, g) in &positives {
        checked += 1;
        if !equivalent_to_transpose(g) {
            failures.push(format!("{id} should equal its transpose"));
        }
    }
    let mut negatives: Vec<(FamilyId, Digraph)> = Vec::new();
    for (kind, from) in [(M, 2), (B, 3), (BTilde, 3), (CTilde, 2), (L, 6), (LPlus, 3)] {
        negatives.extend((from..=10).filter_map(|n| generate(kind, n)));
    }
    negatives.extend([generate(F4Tilde, 4).unwrap(), generate(G2Tilde, 2).unwrap()]);
    for (id, g) in &negatives {
        checked += 1;
        let special = matches!((id.kind, id.n), (M, 2) | (LPlus, 3) | (LPlus, 5));
        if equivalent_to_transpose(g) {
            failures.push(format!("{id} should differ from its transpose"));
        } else if !separated(g, &g.transpose(), special) {
            failures.push(format!("{id}: no weight modulus separator"));
        }
    }
    for n in (4..=10).step_by(2) {
        let (_, l) = generate(L, n).unwrap();
        let (_, lp) = generate(LPrime, n).unwrap();
        checked += 1;
        if are_equivalent(&l, &lp) || !separated(&l, &lp, false) {
            failures.push(format!("L{n} and L{n}' not separated"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} verdicts, every negative one confirmed by a separator"))
    } else {
        Err(failures.join("; "))
    }
}

/// `det(xI - A)` by cofactor expansion, for orders up to 3.
fn char_poly_small(g: &Digraph) -> IntPolynomial {
    let a = |i: usize, j: usize| g.get(i, j);
    match g.order() {
        1 => IntPolynomial::from_i64(&[-a(0, 0), 1]),
        2 => IntPolynomial::from_i64(&[a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0), -(a(0, 0) + a(1, 1)), 1]),
        3 => {
            let minor = |i: usize, j: usize| a(i, i) * a(j, j) - a(i, j) * a(j, i);
            let det = a(0, 0) * minor(1, 2) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
            let trace = a(0, 0) + a(1, 1) + a(2, 2);
            IntPolynomial::from_i64(&[-det, minor(0, 1) + minor(0, 2) + minor(1, 2), -trace, 1])
        }
        _ => unreachable!(),
    }
}

/// All sign-symmetric connected symmetrizable matrices of order `n` with
/// entries in `[-4, 4]` and spectrum in `[-2, 2]`, up to equivalence.
fn brute_force(n: usize) -> BTreeSet<CanonicalKey> {
    use rayon::prelude::*;
    let pairs: Vec<(i64, i64)> = std::iter::once((0, 0))
        .chain((1..=4).flat_map(|x| (1..=4).flat_map(move |y| [(x, y), (-x, -y)])))
        .collect();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let charges: Vec<Vec<i64>> = (0..9i64.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let c = code % 9 - 4;
                    code /= 9;
                    c
                })
                .collect()
        })
        .collect();
    charges
        .par_iter()
        .flat_map_iter(|cs| {
            let total = pairs.len().pow(slots.len() as u32);
            let (pairs, slots) = (&pairs, &slots);
            (0..total).filter_map(move |mut code| {
                let mut g = Digraph::zero(n);
                for (i, &c) in cs.iter().enumerate() {
                    g.set(i, i, c);
                }
                let mut edges = 0;
                for &(i, j) in slots {
                    let (x, y) = pairs[code % pairs.len()];
                    code /= pairs.len();
                    g.set(i, j, x);
                    g.set(j, i, y);
                    edges += usize::from(x != 0);
                }
                if edges + 1 < n {
                    return None;
                }
                // a real spectrum in [-2, 2] forces trace(A^2) <= 4n
                let trace_sq: i64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| g.get(i, j) * g.get(j, i)).sum();
                if trace_sq > 4 * n as i64 {
                    return None;
                }
                if n == 3 && edges == 3 && g.get(0, 1) * g.get(1, 2) * g.get(2, 0) != g.get(0, 2) * g.get(2, 1) * g.get(1, 0) {
                    return None;
                }
                let p = char_poly_small(&g);
                let inside = poly::count_roots_between(&p, -2, 2, false, false).unwrap();
                (inside == n).then(|| canonical_form(&g))
            })
        })
        .collect()
}

fn oracle() -> Outcome {
    let start = Instant::now();
    let mut brute = BTreeSet::new();
    for n in 1..=3 {
        brute.extend(brute_force(n));
    }
    let found: BTreeSet<CanonicalKey> = enumerate(&SearchConstraints::cyclotomic(3))
        .map_err(|e| e.to_string())?
        .classes
        .into_iter()
        .map(|r| r.key)
        .collect();
    let elapsed = start.elapsed();
    if brute != found {
        return Err(format!(
            "{} only in brute force, {} only in search",
            brute.difference(&found).count(),
            found.difference(&brute).count()
        ));
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} classes agree", found.len()))
}

fn random_symmetrizable(rng: &mut StdRng) -> Digraph {
    let n = rng.gen_range(1..=7);
    let dsq: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    let mut g = Digraph::zero(n);
    for i in 0..n {
        g.set(i, i, rng.gen_range(-4..=4));
        for j in i + 1..n {
            let b: i64 = rng.gen_range(-2..=2);
            let k = num_integer::gcd(dsq[i], dsq[j]);
            let (x, y) = (b * dsq[i] / k, b * dsq[j] / k);
            if x.abs() <= 4 && y.abs() <= 4 {
                g.set(i, j, x);
                g.set(j, i, y);
            }
        }
    }
    g
}

fn float_spectrum(g: &Digraph) -> Vec<f64> {
    let n = g.order();
    let s = DMatrix::from_fn(n, n, |i, j| {
        let (x, y) = (g.get(i, j), g.get(j, i));
        if i == j {
            x as f64
        } else {
            (x.signum() as f64) * ((x * y) as f64).sqrt()
        }
    });
    let mut ev: Vec<f64> = s.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn buckets_exact(p: &IntPolynomial) -> [usize; 5] {
    use std::ops::Bound::*;
    let r = |v: i64| num_rational::BigRational::from_integer(BigInt::from(v));
    let c = |lo, hi| poly::count_roots(p, lo, hi).unwrap().count;
    [
        c(Unbounded, Excluded(r(-2))),
        c(Included(r(-2)), Included(r(-2))),
        c(Excluded(r(-2)), Excluded(r(2))),
        c(Included(r(2)), Included(r(2))),
        c(Excluded(r(2)), Unbounded),
    ]
}

fn buckets_float(ev: &[f64], tol: f64) -> [usize; 5] {
    let mut out = [0; 5];
    for &x in ev {
        let b = if (x + 2.0).abs() <= tol {
            1
        } else if (x - 2.0).abs() <= tol {
            3
        } else if x < -2.0 {
            0
        } else if x > 2.0 {
            4
        } else {
            2
        };
        out[b] += 1;
    }
    out
}

fn interlacing_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut deletions = 0;
    for trial in 0..1000 {
        let g = random_symmetrizable(&mut rng);
        let p = char_poly(&g);
        if g.order() > 1 {
            for v in 0..g.order() {
                let child = char_poly(&g.delete_vertex(v).unwrap());
                if !interlaces(&p, &child).map_err(|e| e.to_string())? {
                    return Err(format!("trial {trial}: deletion of {v} does not interlace in {g:?}"));
                }
                deletions += 1;
            }
        }
        let ev = float_spectrum(&g);
        let lib = eigenvalues_float(&g).map_err(|e| e.to_string())?;
        if ev.iter().zip(&lib).any(|(a, b)| (a - b).abs() > 1e-6) {
            return Err(format!("trial {trial}: eigensolvers disagree on {g:?}"));
        }
        let exact = buckets_exact(&p);
        if exact != buckets_float(&ev, 1e-6) {
            return Err(format!("trial {trial}: {exact:?} vs {ev:?} for {g:?}"));
        }
    }
    Ok(format!("1000 matrices, {deletions} deletions"))
}

fn symmetrization_suite() -> Outcome {
    let mut checked = Vec::new();
    for kind in FamilyKind::ALL.iter().copied().filter(|k| k.is_surd()) {
        let source = families::surd_source(kind).unwrap();
        for n in 1..=12 {
            let (Ok(id), Ok(src)) = (FamilyId::new(kind, n), FamilyId::new(source, n)) else {
                continue;
            };
            let sym = symmetrization(&families::generate(&src).unwrap()).map_err(|e| e.to_string())?;
            let drawn = families::generate_surd(&id).map_err(|e| e.to_string())?;
            let as_int = |s: &cyclomat::SurdMatrix| Digraph::from_rows(&s.rows()).unwrap();
            if !are_equivalent(&as_int(&sym), &as_int(&drawn)) {
                return Err(format!("{src} does not symmetrize to {id}"));
            }
            if !sym.square_is_scalar(4) {
                return Err(format!("S^2 != 4I for {src}"));
            }
            checked.push(id.to_string());
        }
    }
    Ok(format!("{} generators: {}", checked.len(), checked.join(", ")))
}

fn removal() -> Outcome {
    let mut report = Vec::new();
    for (name, bound) in [("S8-", 4), ("O4'", 2)] {
        let g = families::generate(&name.parse::<FamilyId>().unwrap()).unwrap();
        let n = g.order();
        let mut largest = 0;
        for mask in 1u32..1 << n {
            let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let size = keep.len();
            let h = g.induced_subgraph(&VertexSet::new(keep)).unwrap();
            if all_eigs_in_open(&h) {
                largest = largest.max(size);
            }
        }
        if largest > bound {
            return Err(format!("{name}: open-spectrum subgraph on {largest} vertices"));
        }
        report.push(format!("{name}: {} subsets, largest open {largest}", (1u32 << n) - 1));
    }
    Ok(report.join("; "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("maximal nonsymmetric cyclotomic classes, order <= 8", theorem_1),
        ("nonsymmetric classes in (-2, 2), order <= 6", theorem_2),
        ("nonnegative maximal cyclotomic classes, order <= 6", corollary_1),
        ("no charged nonsymmetric nonnegative class in (-2, 2), order <= 8", corollary_5),
        ("transpose equivalence verdicts, order <= 10", transpose_ledger),
        ("search equals brute force, order <= 3", oracle),
        ("interlacing and float agreement on random matrices", interlacing_suite),
        ("symmetrizations match surd generators", symmetrization_suite),
        ("open-spectrum induced subgraphs of S8- and O4'", removal),
    ];
    let mut failed = 0;
    for (k, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {label} [{secs:.1}s] {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {label} [{secs:.1}s] {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
