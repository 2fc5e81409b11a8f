//! Suboperad closures of the clique operad and the named constructions:
//! noncrossing trees (NCT), the four-generator forest operad FF₄, the
//! unit-free BNC suboperad, the Motzkin-path suboperad, and the cubic
//! suboperad over E₂, each packaged with dimension and relation fixtures.

use crate::clique::MClique;
use crate::magma::{Label, Magma};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

/// Guard on the total number of elements a closure may accumulate before
/// the computation is cut short and flagged as partial.
const CLOSURE_ELEMENT_CAP: usize = 2_000_000;

/// The per-arity element sets of a suboperad closure up to an arity bound.
#[derive(Debug, Clone)]
pub struct SuboperadClosure {
    pub nmax: usize,
    /// `by_arity[n - 1]` holds the elements of arity `n`.
    pub by_arity: Vec<BTreeSet<MClique>>,
    /// False when the element cap interrupted the closure.
    pub complete: bool,
}

impl SuboperadClosure {
    /// Per-arity dimensions `1 ..= nmax`.
    pub fn dims(&self) -> Vec<usize> {
        self.by_arity.iter().map(BTreeSet::len).collect()
    }

    /// True when `p` was generated.
    pub fn contains(&self, p: &MClique) -> bool {
        p.arity <= self.nmax && self.by_arity[p.arity - 1].contains(p)
    }

    /// Re-verifies closure: every composite of stored elements with result
    /// arity within the bound is itself stored.
    pub fn is_closed(&self, magma: &Magma) -> bool {
        let all: Vec<&MClique> = self.by_arity.iter().flatten().collect();
        for a in &all {
            for b in &all {
                if a.arity + b.arity - 1 > self.nmax {
                    continue;
                }
                for i in 1..=a.arity {
                    if !self.contains(&a.compose(magma, i, b)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The least subset of the clique operad containing the unit clique and the
/// generators, closed under partial composition restricted to arities
/// `≤ nmax`.
pub fn suboperad_closure(
    magma: &Magma,
    generators: &[MClique],
    nmax: usize,
) -> Result<SuboperadClosure, String> {
    assert!(nmax >= 1);
    for g in generators {
        if !g.crossing_free() {
            return Err("generators must be noncrossing".into());
        }
        if g.arity > nmax {
            return Err("generator arity exceeds the bound".into());
        }
    }
    let mut by_arity: Vec<BTreeSet<MClique>> = vec![BTreeSet::new(); nmax];
    let mut queue: Vec<MClique> = Vec::new();
    let mut total = 0usize;
    let push = |p: MClique,
                    by_arity: &mut Vec<BTreeSet<MClique>>,
                    queue: &mut Vec<MClique>,
                    total: &mut usize| {
        if by_arity[p.arity - 1].insert(p.clone()) {
            *total += 1;
            queue.push(p);
        }
    };
    push(MClique::unit(), &mut by_arity, &mut queue, &mut total);
    for g in generators {
        push(g.clone(), &mut by_arity, &mut queue, &mut total);
    }
    let mut complete = true;
    while let Some(a) = queue.pop() {
        if total > CLOSURE_ELEMENT_CAP {
            complete = false;
            break;
        }
        // compose the new element against everything found so far, both ways
        let snapshot: Vec<MClique> = by_arity.iter().flatten().cloned().collect();
        for b in &snapshot {
            if a.arity + b.arity - 1 <= nmax {
                for i in 1..=a.arity {
                    push(a.compose(magma, i, b), &mut by_arity, &mut queue, &mut total);
                }
                for i in 1..=b.arity {
                    push(b.compose(magma, i, &a), &mut by_arity, &mut queue, &mut total);
                }
            }
        }
    }
    Ok(SuboperadClosure {
        nmax,
        by_arity,
        complete,
    })
}

/// A composition expression over named cliques, for stating relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueExpr {
    Clique(MClique),
    Comp(Box<CliqueExpr>, usize, Box<CliqueExpr>),
}

impl CliqueExpr {
    pub fn comp(lhs: CliqueExpr, i: usize, rhs: CliqueExpr) -> CliqueExpr {
        CliqueExpr::Comp(Box::new(lhs), i, Box::new(rhs))
    }

    pub fn ev(&self, magma: &Magma) -> MClique {
        match self {
            CliqueExpr::Clique(p) => p.clone(),
            CliqueExpr::Comp(a, i, b) => a.ev(magma).compose(magma, *i, &b.ev(magma)),
        }
    }
}

/// Verifies a relation: both sides evaluate to the same clique.
pub fn relation_verify(
    magma: &Magma,
    lhs: &CliqueExpr,
    rhs: &CliqueExpr,
) -> Result<bool, String> {
    let l = lhs.ev(magma);
    let r = rhs.ev(magma);
    if l.arity != r.arity {
        return Err(format!(
            "relation sides have arities {} and {}",
            l.arity, r.arity
        ));
    }
    Ok(l == r)
}

/// A named relation `a ∘ᵢ b = c ∘ⱼ d` over the generator package.
#[derive(Debug, Clone)]
pub struct Relation {
    pub display: String,
    pub lhs: CliqueExpr,
    pub rhs: CliqueExpr,
}

/// A packaged construction: magma, generators, expected dimensions, and
/// its defining relations.
#[derive(Debug, Clone)]
pub struct NamedConstruction {
    pub name: String,
    pub magma: Magma,
    pub generator_names: Vec<String>,
    pub generators: Vec<MClique>,
    pub expected_dims: Vec<usize>,
    pub relations: Vec<Relation>,
}

impl NamedConstruction {
    /// Runs the closure up to `nmax` and checks dimensions and relations.
    pub fn certify(&self, nmax: usize) -> Result<ConstructionReport, String> {
        let closure = suboperad_closure(&self.magma, &self.generators, nmax)?;
        let dims = closure.dims();
        let expected: Vec<usize> = self
            .expected_dims
            .iter()
            .copied()
            .take(nmax)
            .collect();
        let dims_match = dims[..expected.len()] == expected[..];
        let mut failed_relations = Vec::new();
        for r in &self.relations {
            if !relation_verify(&self.magma, &r.lhs, &r.rhs)? {
                failed_relations.push(r.display.clone());
            }
        }
        Ok(ConstructionReport {
            name: self.name.clone(),
            dims,
            expected_dims: expected,
            dims_match,
            failed_relations,
            complete: closure.complete,
        })
    }
}

/// Certification outcome of a named construction.
#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub name: String,
    pub dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
    pub dims_match: bool,
    pub failed_relations: Vec<String>,
    pub complete: bool,
}

impl ConstructionReport {
    pub fn passed(&self) -> bool {
        self.dims_match && self.failed_relations.is_empty() && self.complete
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "dims": self.dims,
            "expected_dims": self.expected_dims,
            "dims_match": self.dims_match,
            "failed_relations": self.failed_relations,
            "complete": self.complete,
            "passed": self.passed(),
        })
    }
}

fn ztri(b: Label, e1: Label, e2: Label) -> MClique {
    MClique::triangle(&Magma::Z, b, e1, e2)
}

/// Builds the generator package of a named construction.  Valid names:
/// `NCT`, `FF4`, `BNC`, `MOTZKIN`, `CUBIC_E2`.
pub fn named_construction(name: &str) -> Result<NamedConstruction, String> {
    let gen = |g: &MClique| CliqueExpr::Clique(g.clone());
    match name {
        "NCT" => {
            // two Z-triangles with a single −1 edge
            let g1 = ztri(0, -1, 0);
            let g2 = ztri(0, 0, -1);
            Ok(NamedConstruction {
                name: name.into(),
                magma: Magma::Z,
                generator_names: vec!["g1".into(), "g2".into()],
                relations: vec![Relation {
                    display: "g2 o1 g1 = g1 o2 g2".into(),
                    lhs: CliqueExpr::comp(gen(&g2), 1, gen(&g1)),
                    rhs: CliqueExpr::comp(gen(&g1), 2, gen(&g2)),
                }],
                generators: vec![g1, g2],
                expected_dims: vec![1, 2, 7, 30, 143],
            })
        }
        "FF4" => {
            let a = ztri(-1, -1, 1);
            let b = ztri(-1, 1, -1);
            let c = ztri(-1, 1, 1);
            let d = ztri(1, -1, -1);
            let rels = [
                ("B o1 A = A o2 B", &b, 1, &a, &a, 2, &b),
                ("C o1 C = C o2 C", &c, 1, &c, &c, 2, &c),
                ("C o1 A = A o2 C", &c, 1, &a, &a, 2, &c),
                ("C o1 B = C o2 A", &c, 1, &b, &c, 2, &a),
                ("B o1 C = C o2 B", &b, 1, &c, &c, 2, &b),
                ("D o1 D = D o2 D", &d, 1, &d, &d, 2, &d),
                ("B o1 B = B o2 D", &b, 1, &b, &b, 2, &d),
                ("A o1 D = A o2 A", &a, 1, &d, &a, 2, &a),
            ];
            Ok(NamedConstruction {
                name: name.into(),
                magma: Magma::Z,
                generator_names: vec!["A".into(), "B".into(), "C".into(), "D".into()],
                relations: rels
                    .iter()
                    .map(|&(s, x, i, y, u, j, v)| Relation {
                        display: s.into(),
                        lhs: CliqueExpr::comp(gen(x), i, gen(y)),
                        rhs: CliqueExpr::comp(gen(u), j, gen(v)),
                    })
                    .collect(),
                generators: vec![a, b, c, d],
                expected_dims: vec![1, 4, 24, 176, 1440],
            })
        }
        "BNC" => {
            let m = Magma::builtin_bnc();
            let solid = m.non_unit_elements();
            let mut generators = Vec::new();
            let mut names = Vec::new();
            for &b in &solid {
                for &x in &solid {
                    for &y in &solid {
                        generators.push(MClique::triangle(&m, b, x, y));
                        names.push(format!("({},{},{})", m.name(b), m.name(x), m.name(y)));
                    }
                }
            }
            Ok(NamedConstruction {
                name: name.into(),
                magma: m,
                generator_names: names,
                generators,
                expected_dims: vec![1, 8, 80, 992],
                relations: Vec::new(),
            })
        }
        "MOTZKIN" => {
            let m = Magma::builtin_d0();
            let zero = m.label_of("0").unwrap();
            let one = m.unit();
            let t = MClique::triangle(&m, one, one, one);
            let q = MClique::bubble(&m, one, &[one, zero, one]);
            let rels = vec![
                Relation {
                    display: "T o1 T = T o2 T".into(),
                    lhs: CliqueExpr::comp(gen(&t), 1, gen(&t)),
                    rhs: CliqueExpr::comp(gen(&t), 2, gen(&t)),
                },
                Relation {
                    display: "Q o1 T = T o2 Q".into(),
                    lhs: CliqueExpr::comp(gen(&q), 1, gen(&t)),
                    rhs: CliqueExpr::comp(gen(&t), 2, gen(&q)),
                },
                Relation {
                    display: "T o1 Q = Q o3 T".into(),
                    lhs: CliqueExpr::comp(gen(&t), 1, gen(&q)),
                    rhs: CliqueExpr::comp(gen(&q), 3, gen(&t)),
                },
                Relation {
                    display: "Q o1 Q = Q o3 Q".into(),
                    lhs: CliqueExpr::comp(gen(&q), 1, gen(&q)),
                    rhs: CliqueExpr::comp(gen(&q), 3, gen(&q)),
                },
            ];
            Ok(NamedConstruction {
                name: name.into(),
                magma: m,
                generator_names: vec!["T".into(), "Q".into()],
                generators: vec![t, q],
                expected_dims: vec![1, 1, 2, 4, 9, 21, 51],
                relations: rels,
            })
        }
        "CUBIC_E2" => {
            let m = Magma::builtin_e(2);
            let e1 = m.label_of("e1").unwrap();
            let e2 = m.label_of("e2").unwrap();
            let one = m.unit();
            let g1 = MClique::triangle(&m, e1, one, e1);
            let g2 = MClique::triangle(&m, e2, one, e2);
            // the four cubic relations: g_i o2 (g_j o2 g_k) does not depend
            // on the middle generator
            let mut rels = Vec::new();
            for (ni, gi) in [("g1", &g1), ("g2", &g2)] {
                for (nk, gk) in [("g1", &g1), ("g2", &g2)] {
                    rels.push(Relation {
                        display: format!("{ni} o2 (g1 o2 {nk}) = {ni} o2 (g2 o2 {nk})"),
                        lhs: CliqueExpr::comp(
                            gen(gi),
                            2,
                            CliqueExpr::comp(gen(&g1), 2, gen(gk)),
                        ),
                        rhs: CliqueExpr::comp(
                            gen(gi),
                            2,
                            CliqueExpr::comp(gen(&g2), 2, gen(gk)),
                        ),
                    });
                }
            }
            Ok(NamedConstruction {
                name: name.into(),
                magma: m,
                generator_names: vec!["g1".into(), "g2".into()],
                generators: vec![g1, g2],
                expected_dims: vec![1, 2, 8, 36, 180],
                relations: rels,
            })
        }
        _ => Err(format!(
            "unknown construction {name:?}; valid: NCT, FF4, BNC, MOTZKIN, CUBIC_E2"
        )),
    }
}

/// True when `p` belongs to the BNC suboperad: noncrossing, and either the
/// unit clique or with every base and edge label solid.
pub fn bnc_membership(magma: &Magma, p: &MClique) -> Result<bool, String> {
    if *magma != Magma::builtin_bnc() {
        return Err("BNC membership is defined over the magma BNC".into());
    }
    if !p.crossing_free() {
        return Ok(false);
    }
    if p.arity == 1 {
        return Ok(*p == MClique::unit());
    }
    let unit = magma.unit();
    Ok(p.base(magma) != unit && (1..=p.arity).all(|i| p.edge(magma, i) != unit))
}

/// The complement automorphism of BNC: swaps the labels `a` and `b`
/// everywhere.  An involution and an operad automorphism on members.
pub fn bnc_complement(magma: &Magma, p: &MClique) -> Result<MClique, String> {
    if *magma != Magma::builtin_bnc() {
        return Err("the complement is defined over the magma BNC".into());
    }
    let a = magma.label_of("a")?;
    let b = magma.label_of("b")?;
    p.map_labels(magma, |x| {
        if x == a {
            b
        } else if x == b {
            a
        } else {
            x
        }
    })
}

/// Groups the single compositions `a ∘ᵢ b` of named generators by their
/// image and returns the coincidence classes of size at least two, sorted.
/// This certifies a relation list as exhaustive in degree 2.
pub fn quadratic_coincidences(
    magma: &Magma,
    generators: &[(String, MClique)],
) -> Vec<Vec<(String, usize, String)>> {
    let mut by_image: BTreeMap<MClique, Vec<(String, usize, String)>> = BTreeMap::new();
    for (an, a) in generators {
        for (bn, b) in generators {
            for i in 1..=a.arity {
                by_image
                    .entry(a.compose(magma, i, b))
                    .or_default()
                    .push((an.clone(), i, bn.clone()));
            }
        }
    }
    let mut out: Vec<Vec<(String, usize, String)>> = by_image
        .into_values()
        .filter(|v| v.len() > 1)
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

/// Evaluates every planar binary tree of arity `n` with nodes labeled by
/// the given arity-2 generators, returning all images with multiplicity.
/// The rank of the degree-`(n−1)` relation space is the multiset size minus
/// the number of distinct images.
pub fn generator_tree_images(
    magma: &Magma,
    generators: &[MClique],
    n: usize,
) -> Result<Vec<MClique>, String> {
    if generators.iter().any(|g| g.arity != 2) {
        return Err("binary-tree evaluation needs arity-2 generators".into());
    }
    fn rec(magma: &Magma, gens: &[MClique], n: usize) -> Vec<MClique> {
        if n == 1 {
            return vec![MClique::unit()];
        }
        let mut out = Vec::new();
        for k in 1..n {
            let lefts = rec(magma, gens, k);
            let rights = rec(magma, gens, n - k);
            for l in &lefts {
                for r in &rights {
                    for g in gens {
                        out.push(g.compose(magma, 1, l).compose(magma, 1 + k, r));
                    }
                }
            }
        }
        out
    }
    Ok(rec(magma, generators, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::enumerate_noncrossing;
    use crate::freeop::all_triangles;

    fn certify(name: &str, nmax: usize) -> ConstructionReport {
        let c = named_construction(name).unwrap();
        c.certify(nmax).unwrap()
    }

    #[test]
    fn nct_dims_and_relation() {
        let r = certify("NCT", 5);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.dims, vec![1, 2, 7, 30, 143]);
    }

    #[test]
    fn ff4_dims_and_relations() {
        let r = certify("FF4", 5);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.dims, vec![1, 4, 24, 176, 1440]);
    }

    #[test]
    fn bnc_dims() {
        let r = certify("BNC", 4);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.dims, vec![1, 8, 80, 992]);
    }

    #[test]
    fn motzkin_dims_and_relations() {
        let r = certify("MOTZKIN", 7);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.dims, vec![1, 1, 2, 4, 9, 21, 51]);
    }

    #[test]
    fn motzkin_relations_are_exhaustive() {
        let c = named_construction("MOTZKIN").unwrap();
        let gens: Vec<(String, MClique)> = c
            .generator_names
            .iter()
            .cloned()
            .zip(c.generators.iter().cloned())
            .collect();
        let got = quadratic_coincidences(&c.magma, &gens);
        let pair = |a: &str, i: usize, b: &str, c: &str, j: usize, d: &str| {
            let mut v = vec![
                (a.to_string(), i, b.to_string()),
                (c.to_string(), j, d.to_string()),
            ];
            v.sort();
            v
        };
        let mut want = vec![
            pair("T", 1, "T", "T", 2, "T"),
            pair("Q", 1, "T", "T", 2, "Q"),
            pair("T", 1, "Q", "Q", 3, "T"),
            pair("Q", 1, "Q", "Q", 3, "Q"),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn cubic_e2_dims_and_scan() {
        let r = certify("CUBIC_E2", 5);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.dims, vec![1, 2, 8, 36, 180]);
        let c = named_construction("CUBIC_E2").unwrap();
        // no quadratic relation: all 8 degree-2 trees have distinct images
        let deg2 = generator_tree_images(&c.magma, &c.generators, 3).unwrap();
        assert_eq!(deg2.len(), 8);
        let distinct2: BTreeSet<_> = deg2.iter().collect();
        assert_eq!(distinct2.len(), 8);
        // exactly four cubic relations among the 40 degree-3 trees
        let deg3 = generator_tree_images(&c.magma, &c.generators, 4).unwrap();
        assert_eq!(deg3.len(), 40);
        let distinct3: BTreeSet<_> = deg3.iter().collect();
        assert_eq!(deg3.len() - distinct3.len(), 4);
    }

    #[test]
    fn full_triangle_closure_recovers_the_operad() {
        let m = Magma::builtin_n(2);
        let gens: Vec<MClique> = all_triangles(&m)
            .into_iter()
            .map(|(a, b, c)| MClique::triangle(&m, a, b, c))
            .collect();
        let closure = suboperad_closure(&m, &gens, 4).unwrap();
        assert_eq!(closure.dims(), vec![1, 8, 48, 352]);
        for n in 1..=4 {
            let all: BTreeSet<MClique> =
                enumerate_noncrossing(&m, n).unwrap().into_iter().collect();
            assert_eq!(closure.by_arity[n - 1], all);
        }
    }

    #[test]
    fn closure_is_closed() {
        let c = named_construction("MOTZKIN").unwrap();
        let closure = suboperad_closure(&c.magma, &c.generators, 5).unwrap();
        assert!(closure.is_closed(&c.magma));
    }

    #[test]
    fn closure_rejects_crossing_generators() {
        let m = Magma::builtin_n(2);
        let crossing = MClique::new(&m, 3, [((1, 3), 1), ((2, 4), 1)]).unwrap();
        assert!(suboperad_closure(&m, &[crossing], 3).is_err());
    }

    #[test]
    fn bnc_membership_and_complement() {
        let m = Magma::builtin_bnc();
        assert!(bnc_membership(&m, &MClique::unit()).unwrap());
        let a = m.label_of("a").unwrap();
        let with_unit_edge = MClique::triangle(&m, a, m.unit(), a);
        assert!(!bnc_membership(&m, &with_unit_edge).unwrap());
        // complement is an involution on all members of arity <= 3
        for n in 1..=3 {
            for p in enumerate_noncrossing(&m, n).unwrap() {
                if bnc_membership(&m, &p).unwrap() {
                    let c = bnc_complement(&m, &p).unwrap();
                    assert!(bnc_membership(&m, &c).unwrap());
                    assert_eq!(bnc_complement(&m, &c).unwrap(), p);
                }
            }
        }
        assert!(bnc_membership(&Magma::builtin_n(2), &MClique::unit()).is_err());
    }

    #[test]
    fn bnc_membership_closed_under_composition() {
        let m = Magma::builtin_bnc();
        let mut members = Vec::new();
        for n in 1..=3 {
            for p in enumerate_noncrossing(&m, n).unwrap() {
                if bnc_membership(&m, &p).unwrap() {
                    members.push(p);
                }
            }
        }
        for a in &members {
            for b in &members {
                if a.arity + b.arity - 1 > 4 {
                    continue;
                }
                for i in 1..=a.arity {
                    assert!(bnc_membership(&m, &a.compose(&m, i, b)).unwrap());
                }
            }
        }
    }

    #[test]
    fn unknown_name_is_rejected() {
        assert!(named_construction("NOPE").is_err());
    }
}
