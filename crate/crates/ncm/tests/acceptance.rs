//! Acceptance suite: one test per acceptance criterion, each printing a
//! `PASS criterion N` line on success.  All checks are exact — integer
//! equalities and exact rational identities, never approximate.

use ncm::algebra::{relations_check, shift_action, OmegaFamily, WordPolynomial};
use ncm::bubbletree::{bt, from_schroder, to_schroder};
use ncm::clique::enumerate_noncrossing;
use ncm::constructions::{generator_tree_images, named_construction};
use ncm::freeop::{all_triangles, enumerate_syntax_trees, SyntaxTree};
use ncm::koszul::{
    dual_relation_space, enumerate_dual_cliques, koszul_certificate, pairing_lincomb,
};
use ncm::rewrite::{confluence_report, relation_space, RewriteEngine};
use ncm::series::{dim_ncm, dim_ncm_dual, koszul_series_check};
use ncm::{MClique, Magma};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeSet;

#[test]
fn criterion_1_dimension_tables() {
    let n2 = Magma::builtin_n(2);
    let want2 = [1usize, 8, 48, 352, 2880, 25216];
    for (n, &w) in (1..=6).zip(&want2) {
        assert_eq!(enumerate_noncrossing(&n2, n).unwrap().len(), w, "m=2 n={n}");
        assert_eq!(dim_ncm(2, n as u64), BigUint::from(w), "formula m=2 n={n}");
    }
    let n3 = Magma::builtin_n(3);
    let want3 = [1usize, 27, 405, 7533];
    for (n, &w) in (1..=4).zip(&want3) {
        assert_eq!(enumerate_noncrossing(&n3, n).unwrap().len(), w, "m=3 n={n}");
        assert_eq!(dim_ncm(3, n as u64), BigUint::from(w), "formula m=3 n={n}");
    }
    // beyond desk scale: formula-level acceptance only
    assert_eq!(
        dim_ncm(4, 8),
        BigUint::from(201_889_939_456u64),
        "formula m=4 n=8"
    );
    println!("PASS criterion 1: enumeration counts match the dimension formula");
}

#[test]
fn criterion_2_relation_space_ranks() {
    for (l, want_r, want_dual) in [(1usize, 1usize, 1usize), (2, 80, 48), (3, 1053, 405)] {
        let m = Magma::builtin_n(l);
        let cert = koszul_certificate(&m).unwrap();
        assert_eq!(cert.dim_r, want_r, "dim R for m={l}");
        assert_eq!(
            cert.dim_r,
            2 * l.pow(6) - 2 * l.pow(5) + l.pow(4),
            "closed form for m={l}"
        );
        assert_eq!(cert.dim_r_dual, want_dual, "dim R! for m={l}");
        assert_eq!(cert.dim_r_dual, 2 * l.pow(5) - l.pow(4));
        assert_eq!(cert.sum, cert.expected, "Koszul sum 2m^6 for m={l}");
        assert!(cert.passed());
    }
    println!("PASS criterion 2: relation-space and dual ranks match the closed forms");
}

#[test]
fn criterion_3_orthogonality() {
    for l in 1..=2usize {
        let m = Magma::builtin_n(l);
        let rs = relation_space(&m).unwrap();
        let ds = dual_relation_space(&m).unwrap();
        for r in &rs {
            for d in &ds {
                assert!(
                    pairing_lincomb(r, d).unwrap().is_zero(),
                    "nonzero Koszul pairing at m={l}"
                );
            }
        }
    }
    println!("PASS criterion 3: relation and dual generators pair to zero exhaustively");
}

#[test]
fn criterion_4_convergence_certificate() {
    for l in 1..=2usize {
        let m = Magma::builtin_n(l);
        let report = confluence_report(&m, 4).unwrap();
        assert!(report.passed(), "violations at m={l}: {:?}", report.violations);
        let dims: Vec<usize> = (1..=4)
            .map(|n| dim_ncm(l as u64, n).to_usize().unwrap())
            .collect();
        assert_eq!(report.normal_form_counts, dims, "NF counts at m={l}");
        // every single rewrite step strictly decreases φ and preserves ev
        let engine = RewriteEngine::new(&m);
        let gens = all_triangles(&m);
        for n in 1..=4 {
            for t in enumerate_syntax_trees(&gens, n) {
                let phi = engine.phi_measure(&t);
                for r in engine.redexes(&t) {
                    assert!(engine.phi_measure(&r.result) < phi, "φ not decreased");
                    assert_eq!(r.result.ev(&m), t.ev(&m), "ev not preserved");
                }
            }
        }
    }
    println!("PASS criterion 4: unique normal forms, counts = dims, φ decreases, ev preserved");
}

#[test]
fn criterion_5_pbw_bijection() {
    let m = Magma::builtin_n(2);
    let engine = RewriteEngine::new(&m);
    let gens = all_triangles(&m);
    for n in 1..=4 {
        let mut nfs: BTreeSet<SyntaxTree> = BTreeSet::new();
        for t in enumerate_syntax_trees(&gens, n) {
            nfs.insert(engine.normal_form(&t));
        }
        let images: BTreeSet<MClique> = nfs.iter().map(|t| t.ev(&m)).collect();
        assert_eq!(images.len(), nfs.len(), "ev injective on normal forms, n={n}");
        let all: BTreeSet<MClique> = enumerate_noncrossing(&m, n).unwrap().into_iter().collect();
        assert_eq!(images, all, "ev surjective onto cliques, n={n}");
    }
    println!("PASS criterion 5: evaluation bijects normal forms onto noncrossing cliques");
}

#[test]
fn criterion_6_koszul_series_identity() {
    for m in 2..=3u64 {
        let cert = koszul_series_check(m, 8).unwrap();
        assert!(cert.identity_holds, "H(-H!(-t)) != t for m={m}");
        assert!(cert.dims_match && cert.dual_dims_match, "series dims for m={m}");
    }
    for l in 2..=3usize {
        let magma = Magma::builtin_n(l);
        for n in 1..=4 {
            assert_eq!(
                BigUint::from(enumerate_dual_cliques(&magma, n).unwrap().len()),
                dim_ncm_dual(l as u64, n as u64),
                "dual count m={l} n={n}"
            );
        }
    }
    println!("PASS criterion 6: Koszul series identity holds and dual counts match");
}

#[test]
fn criterion_7_named_constructions() {
    for (name, nmax, dims) in [
        ("NCT", 5, vec![1usize, 2, 7, 30, 143]),
        ("FF4", 4, vec![1, 4, 24, 176]),
        ("BNC", 3, vec![1, 8, 80]),
        ("MOTZKIN", 6, vec![1, 1, 2, 4, 9, 21]),
        ("CUBIC_E2", 5, vec![1, 2, 8, 36, 180]),
    ] {
        let c = named_construction(name).unwrap();
        let report = c.certify(nmax).unwrap();
        assert!(report.passed(), "{name}: {report:?}");
        assert_eq!(report.dims, dims, "{name} dims");
    }
    // cubic E₂ quadratic scan: no relation at arity 3
    let c = named_construction("CUBIC_E2").unwrap();
    let deg2 = generator_tree_images(&c.magma, &c.generators, 3).unwrap();
    let distinct: BTreeSet<_> = deg2.iter().collect();
    assert_eq!(deg2.len(), distinct.len(), "E2 quadratic rank must be 0");
    println!("PASS criterion 7: construction dimensions and relations verified");
}

#[test]
fn criterion_8_algebra_actions() {
    // the N₄ word identity
    let n4 = Magma::builtin_n(4);
    let family = OmegaFamily::monoid_words(&n4).unwrap();
    let got = family.triangle_op(
        (1, 2, 0),
        &WordPolynomial::monomial(vec![0, 2, 1, 1], 1),
        &WordPolynomial::monomial(vec![3, 1, 2], 1),
    );
    assert_eq!(got, WordPolynomial::monomial(vec![3, 1, 0, 0, 0, 2, 3], 1));
    assert_eq!(shift_action(&n4, 2, &[0, 2, 1, 1]), vec![2, 0, 3, 3]);
    // the arity-8 S₃ clique action
    let s3 = Magma::builtin_s(3);
    let sel = OmegaFamily::selected_concatenation(&s3, 3).unwrap();
    let s = |xs: &[i64]| -> i64 { xs.iter().map(|j| 1 << (j - 1)).sum() };
    let p = MClique::new(
        &s3,
        8,
        [
            ((1, 7), s(&[1])),
            ((2, 3), s(&[1])),
            ((2, 4), s(&[1])),
            ((3, 4), s(&[2])),
            ((4, 5), s(&[2])),
            ((4, 6), s(&[1, 2])),
            ((6, 7), s(&[3])),
            ((7, 9), s(&[1, 2])),
        ],
    )
    .unwrap();
    let mut f = WordPolynomial::zero();
    for letter in [1, 2, 3] {
        f.add_word(vec![letter], BigRational::one());
    }
    let got = sel.clique_action(&p, &vec![f; 8]).unwrap();
    let mut want = WordPolynomial::zero();
    for x in [1i64, 2, 3] {
        for tail in [[1i64, 2], [2, 1]] {
            let mut w = vec![x, 1, 2, 2, 1, 3];
            w.extend(tail);
            want.add_word(w, BigRational::one());
        }
    }
    assert_eq!(got, want, "S3 clique action fixture");
    // 100 seeded relation samples on both shipped carriers
    let report = relations_check(&family, 100, 2024);
    assert!(report.passed(), "N4 carrier: {:?}", report.violations);
    let d0 = Magma::builtin_d0();
    let ct = OmegaFamily::constant_term(&d0).unwrap();
    let report = relations_check(&ct, 100, 2024);
    assert!(report.passed(), "D0 carrier: {:?}", report.violations);
    println!("PASS criterion 8: algebra fixtures and 100 seeded relation samples");
}

#[test]
fn criterion_9_structural_properties() {
    let m = Magma::builtin_n(2);
    let mut by_arity: Vec<Vec<MClique>> = Vec::new();
    for n in 1..=4 {
        by_arity.push(enumerate_noncrossing(&m, n).unwrap());
    }
    // operad axioms at combined arity ≤ 6
    for p_set in &by_arity {
        for q_set in &by_arity {
            for r_set in &by_arity {
                let (a, b, c) = (
                    p_set[0].arity,
                    q_set[0].arity,
                    r_set[0].arity,
                );
                if a + b + c - 2 > 6 {
                    continue;
                }
                for p in p_set {
                    for q in q_set {
                        for r in r_set {
                            // sequential: p ∘ᵢ (q ∘ⱼ r) = (p ∘ᵢ q) ∘_{i+j−1} r
                            for i in 1..=a {
                                for j in 1..=b {
                                    assert_eq!(
                                        p.compose(&m, i, &q.compose(&m, j, r)),
                                        p.compose(&m, i, q).compose(&m, i + j - 1, r)
                                    );
                                }
                            }
                            // parallel: (p∘ᵢq)∘_{j+b−1}r = (p∘ⱼr)∘ᵢq, i<j
                            for i in 1..=a {
                                for j in i + 1..=a {
                                    assert_eq!(
                                        p.compose(&m, i, q).compose(&m, j + b - 1, r),
                                        p.compose(&m, j, r).compose(&m, i, q)
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // unit axioms and noncrossing closure
    let unit = MClique::unit();
    for set in &by_arity {
        for p in set {
            assert_eq!(unit.compose(&m, 1, p), *p);
            for i in 1..=p.arity {
                assert_eq!(p.compose(&m, i, &unit), *p);
            }
        }
    }
    for p in &by_arity[1] {
        for q in &by_arity[2] {
            for i in 1..=p.arity {
                assert!(p.compose(&m, i, q).crossing_free());
            }
        }
    }
    // bt and Schröder round-trips at arity ≤ 5
    for n in 1..=5 {
        for p in enumerate_noncrossing(&m, n).unwrap() {
            assert_eq!(bt(&m, &p).unwrap().ev(&m), p, "bt round trip n={n}");
            let sch = to_schroder(&m, &p).unwrap();
            assert_eq!(from_schroder(&m, &sch).unwrap(), p, "Schröder round trip n={n}");
        }
    }
    println!("PASS criterion 9: operad axioms, closure, and tree round-trips");
}
