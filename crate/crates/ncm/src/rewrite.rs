//! The quadratic relation space, the rewrite rule on syntax trees, normal
//! forms, the termination measure, and bounded-arity convergence
//! certification.
//!
//! The relation space is spanned by three families of differences of
//! degree-2 trees (writing `(p₀,p₁,p₂) ∘ᵢ (q₀,q₁,q₂)` for the tree with the
//! second triangle grafted on leaf `i` of the first):
//!
//! 1. `p ∘₁ q − (p₀,r₁,p₂) ∘₁ (r₀,q₁,q₂)` when `p₁⋆q₀ = r₁⋆r₀ ≠ 1_M`,
//! 2. `p ∘₁ q − (p₀,q₁,r₂) ∘₂ (r₀,q₂,p₂)` when `p₁⋆q₀ = r₂⋆r₀ = 1_M`,
//! 3. `p ∘₂ q − (p₀,p₁,r₂) ∘₂ (r₀,q₁,q₂)` when `p₂⋆q₀ = r₂⋆r₀ ≠ 1_M`,
//!
//! and has dimension `2m⁶ − 2m⁵ + m⁴`.  Orienting these relations gives the
//! rewrite rule with the three families
//!
//! 1. `p ∘₁ q → (p₀,δ,p₂) ∘₁ (1,q₁,q₂)` when `q₀ ≠ 1_M`, `δ := p₁⋆q₀`,
//! 2. `p ∘₁ q → (p₀,q₁,1) ∘₂ (1,q₂,p₂)` when `p₁⋆q₀ = 1_M`,
//! 3. `p ∘₂ q → (p₀,p₁,δ) ∘₂ (1,q₁,q₂)` when `q₀ ≠ 1_M`, `δ := p₂⋆q₀`,
//!
//! applied at any internal node.  Every step preserves the evaluation map
//! and strictly decreases the lexicographic measure `φ = (α, β)` where `α`
//! sums, over internal nodes, the internal-node count of the left subtree,
//! and `β` counts internal nodes with non-unit base.  Normal forms are the
//! trees in which every internal child of an internal node has unit base,
//! and every *left* internal child additionally forces the parent's first
//! edge to be non-unit; they form a Poincaré–Birkhoff–Witt basis: the
//! evaluation map restricts to a bijection from normal forms of arity `n`
//! onto noncrossing cliques of arity `n`.

use crate::clique::{enumerate_noncrossing, MClique};
use crate::freeop::{all_triangles, enumerate_syntax_trees, LinComb, SyntaxTree, Triangle};
use crate::linalg::{RankEngine, SparseRow};
use crate::magma::Magma;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

/// Indexing of the degree-2 arity-3 tree basis:
/// `(shape ∈ {∘₁, ∘₂}) × triangle × triangle` in lexicographic order.
pub struct TreeBasis3 {
    triangles: Vec<Triangle>,
    index: BTreeMap<SyntaxTree, usize>,
}

impl TreeBasis3 {
    pub fn new(magma: &Magma) -> TreeBasis3 {
        let triangles = all_triangles(magma);
        let mut index = BTreeMap::new();
        for shape in 0..2 {
            for &a in &triangles {
                for &b in &triangles {
                    let t = circ(a, shape + 1, b);
                    let k = index.len();
                    index.insert(t, k);
                }
            }
        }
        TreeBasis3 { triangles, index }
    }

    /// Dimension `2m⁶` of the degree-2 component.
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// Basis index of a degree-2 tree.
    pub fn index_of(&self, t: &SyntaxTree) -> usize {
        self.index[t]
    }

    /// The tree at a basis index.
    pub fn tree_at(&self, k: usize) -> SyntaxTree {
        let m3 = self.triangles.len();
        let shape = k / (m3 * m3);
        let a = self.triangles[(k / m3) % m3];
        let b = self.triangles[k % m3];
        circ(a, shape + 1, b)
    }

    /// The Koszul sign of basis index `k`: `+1` for `∘₁` shapes, `−1` for
    /// `∘₂` shapes.
    pub fn sign(&self, k: usize) -> i64 {
        if k < self.dim() / 2 {
            1
        } else {
            -1
        }
    }
}

/// The degree-2 tree `x ∘ᵢ y` (`i ∈ {1, 2}`).
pub fn circ(x: Triangle, i: usize, y: Triangle) -> SyntaxTree {
    SyntaxTree::corolla(x).graft(i, &SyntaxTree::corolla(y))
}

/// Spanning set of the quadratic relation space, as linear combinations.
pub fn relation_space(magma: &Magma) -> Result<Vec<LinComb>, String> {
    if !magma.is_finite() {
        return Err("the relation space requires a finite magma".into());
    }
    let unit = magma.unit();
    let elems = magma.elements();
    let triangles = all_triangles(magma);
    let mut out = Vec::new();
    let mut push_diff = |s: SyntaxTree, t: SyntaxTree| {
        let mut c = LinComb::zero();
        c.add_int(s, 1);
        c.add_int(t, -1);
        if !c.is_zero() {
            out.push(c);
        }
    };
    for &p in &triangles {
        let (p0, p1, p2) = p;
        for &q in &triangles {
            let (q0, q1, q2) = q;
            for &r0 in &elems {
                // family 1: both ∘₁, equal non-unit merged label
                for &r1 in &elems {
                    let d = magma.op(p1, q0);
                    if d == magma.op(r1, r0) && d != unit {
                        push_diff(circ(p, 1, q), circ((p0, r1, p2), 1, (r0, q1, q2)));
                    }
                }
                // family 2: ∘₁ against ∘₂, both merged labels equal the unit
                for &r2 in &elems {
                    if magma.op(p1, q0) == unit && magma.op(r2, r0) == unit {
                        push_diff(circ(p, 1, q), circ((p0, q1, r2), 2, (r0, q2, p2)));
                    }
                }
                // family 3: both ∘₂, equal non-unit merged label
                for &r2 in &elems {
                    let d = magma.op(p2, q0);
                    if d == magma.op(r2, r0) && d != unit {
                        push_diff(circ(p, 2, q), circ((p0, p1, r2), 2, (r0, q1, q2)));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Converts an arity-3 combination to a sparse vector in the tree basis.
pub fn to_sparse(basis: &TreeBasis3, c: &LinComb) -> SparseRow {
    let mut row = SparseRow::new();
    for (t, coeff) in &c.terms {
        row.insert(basis.index_of(t), coeff.clone());
    }
    row
}

/// Exact rank of the relation space; equals `2m⁶ − 2m⁵ + m⁴`.
pub fn relation_space_rank(magma: &Magma) -> Result<usize, String> {
    let basis = TreeBasis3::new(magma);
    let gens = relation_space(magma)?;
    let mut eng = RankEngine::new();
    for g in &gens {
        eng.insert(to_sparse(&basis, g));
    }
    Ok(eng.rank())
}

/// A node address in a syntax tree: the child choices (0 = left, 1 = right)
/// from the root.
pub type Address = Vec<u8>;

/// One applicable rewrite: rule number (1–3), the address of the redex root,
/// and the rewritten whole tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Redex {
    pub rule: u8,
    pub address: Address,
    pub result: SyntaxTree,
}

/// The rewrite engine for one magma.
pub struct RewriteEngine<'a> {
    pub magma: &'a Magma,
}

impl<'a> RewriteEngine<'a> {
    pub fn new(magma: &'a Magma) -> RewriteEngine<'a> {
        RewriteEngine { magma }
    }

    /// Rewrites the degree-2 pattern rooted at the given node by each
    /// applicable rule, returning the replacement subtrees (rule, subtree).
    fn local_rewrites(&self, t: &SyntaxTree) -> Vec<(u8, SyntaxTree)> {
        let SyntaxTree::Node { generator, left, right } = t else {
            return Vec::new();
        };
        let unit = self.magma.unit();
        let (p0, p1, p2) = *generator;
        let mut out = Vec::new();
        if let SyntaxTree::Node {
            generator: qg,
            left: a,
            right: b,
        } = &**left
        {
            let (q0, q1, q2) = *qg;
            if q0 != unit {
                // rule 1: clear the child's base into the parent's first edge
                let delta = self.magma.op(p1, q0);
                out.push((
                    1,
                    SyntaxTree::node(
                        (p0, delta, p2),
                        SyntaxTree::node((unit, q1, q2), (**a).clone(), (**b).clone()),
                        (**right).clone(),
                    ),
                ));
            }
            if self.magma.op(p1, q0) == unit {
                // rule 2: rotate the ∘₁ shape into a ∘₂ shape
                out.push((
                    2,
                    SyntaxTree::node(
                        (p0, q1, unit),
                        (**a).clone(),
                        SyntaxTree::node((unit, q2, p2), (**b).clone(), (**right).clone()),
                    ),
                ));
            }
        }
        if let SyntaxTree::Node {
            generator: qg,
            left: a,
            right: b,
        } = &**right
        {
            let (q0, q1, q2) = *qg;
            if q0 != unit {
                // rule 3: clear the child's base into the parent's second edge
                let delta = self.magma.op(p2, q0);
                out.push((
                    3,
                    SyntaxTree::node(
                        (p0, p1, delta),
                        (**left).clone(),
                        SyntaxTree::node((unit, q1, q2), (**a).clone(), (**b).clone()),
                    ),
                ));
            }
        }
        out
    }

    /// All redexes of a tree, in depth-first (innermost-first, leftmost)
    /// order.
    pub fn redexes(&self, t: &SyntaxTree) -> Vec<Redex> {
        let mut out = Vec::new();
        self.collect_redexes(t, t, &mut Vec::new(), &mut out);
        out
    }

    fn collect_redexes(
        &self,
        root: &SyntaxTree,
        t: &SyntaxTree,
        path: &mut Address,
        out: &mut Vec<Redex>,
    ) {
        let SyntaxTree::Node { left, right, .. } = t else {
            return;
        };
        path.push(0);
        self.collect_redexes(root, left, path, out);
        path.pop();
        path.push(1);
        self.collect_redexes(root, right, path, out);
        path.pop();
        for (rule, sub) in self.local_rewrites(t) {
            out.push(Redex {
                rule,
                address: path.clone(),
                result: replace_at(root, path, &sub),
            });
        }
    }

    /// Applies one rewrite at the addressed node if a rule matches there
    /// (the first matching rule in family order).
    pub fn rewrite_step(&self, t: &SyntaxTree, address: &Address) -> Option<SyntaxTree> {
        let sub = subtree_at(t, address)?;
        let mut local = self.local_rewrites(sub);
        if local.is_empty() {
            None
        } else {
            Some(replace_at(t, address, &local.remove(0).1))
        }
    }

    /// Leftmost-innermost normalization: repeatedly applies the first redex
    /// in innermost-leftmost order until none remains.  A step counter
    /// guards against non-termination (which would signal an internal
    /// error, since `φ` strictly decreases).
    pub fn normal_form(&self, t: &SyntaxTree) -> SyntaxTree {
        let mut cur = t.clone();
        let d = cur.degree();
        // φ = (α, β) with α ≤ d², β ≤ d gives a generous step bound
        let bound = (d * d + 1) * (d + 1) + 1;
        for _ in 0..bound {
            let mut redexes = self.redexes(&cur);
            if redexes.is_empty() {
                return cur;
            }
            cur = redexes.remove(0).result;
        }
        panic!("rewrite exceeded the termination bound — measure violated");
    }

    /// Normal-form characterization: every internal child of an internal
    /// node has unit base, and for a *left* internal child the parent's
    /// first edge is non-unit.
    pub fn is_normal_form(&self, t: &SyntaxTree) -> bool {
        let unit = self.magma.unit();
        let SyntaxTree::Node { generator, left, right } = t else {
            return true;
        };
        if let SyntaxTree::Node { generator: qg, .. } = &**left {
            if qg.0 != unit || generator.1 == unit {
                return false;
            }
        }
        if let SyntaxTree::Node { generator: qg, .. } = &**right {
            if qg.0 != unit {
                return false;
            }
        }
        self.is_normal_form(left) && self.is_normal_form(right)
    }

    /// The termination measure `φ(t) = (α, β)`, compared lexicographically.
    pub fn phi_measure(&self, t: &SyntaxTree) -> (usize, usize) {
        let unit = self.magma.unit();
        fn alpha(t: &SyntaxTree) -> usize {
            match t {
                SyntaxTree::Leaf => 0,
                SyntaxTree::Node { left, right, .. } => {
                    left.degree() + alpha(left) + alpha(right)
                }
            }
        }
        fn beta(t: &SyntaxTree, unit: i64) -> usize {
            match t {
                SyntaxTree::Leaf => 0,
                SyntaxTree::Node { generator, left, right } => {
                    usize::from(generator.0 != unit) + beta(left, unit) + beta(right, unit)
                }
            }
        }
        (alpha(t), beta(t, unit))
    }

    /// The set of normal forms reachable from `t` by ALL rewrite sequences,
    /// memoized across calls through `memo`.
    pub fn all_normal_forms(
        &self,
        t: &SyntaxTree,
        memo: &mut BTreeMap<SyntaxTree, BTreeSet<SyntaxTree>>,
    ) -> BTreeSet<SyntaxTree> {
        if let Some(s) = memo.get(t) {
            return s.clone();
        }
        let redexes = self.redexes(t);
        let result: BTreeSet<SyntaxTree> = if redexes.is_empty() {
            [t.clone()].into()
        } else {
            let mut acc = BTreeSet::new();
            for r in redexes {
                acc.extend(self.all_normal_forms(&r.result, memo));
            }
            acc
        };
        memo.insert(t.clone(), result.clone());
        result
    }
}

fn subtree_at<'t>(t: &'t SyntaxTree, address: &[u8]) -> Option<&'t SyntaxTree> {
    match address.split_first() {
        None => Some(t),
        Some((&step, rest)) => match t {
            SyntaxTree::Leaf => None,
            SyntaxTree::Node { left, right, .. } => {
                subtree_at(if step == 0 { left } else { right }, rest)
            }
        },
    }
}

fn replace_at(t: &SyntaxTree, address: &[u8], sub: &SyntaxTree) -> SyntaxTree {
    match address.split_first() {
        None => sub.clone(),
        Some((&step, rest)) => match t {
            SyntaxTree::Leaf => panic!("address walks through a leaf"),
            SyntaxTree::Node { generator, left, right } => {
                if step == 0 {
                    SyntaxTree::node(*generator, replace_at(left, rest, sub), (**right).clone())
                } else {
                    SyntaxTree::node(*generator, (**left).clone(), replace_at(right, rest, sub))
                }
            }
        },
    }
}

/// Outcome of the bounded-arity convergence certification.
#[derive(Debug, Clone)]
pub struct ConfluenceReport {
    pub arity: usize,
    pub trees_checked: usize,
    /// Distinct normal forms per arity `1 ..= arity`.
    pub normal_form_counts: Vec<usize>,
    /// Human-readable descriptions of any violations found.
    pub violations: Vec<String>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "arity": self.arity,
            "trees_checked": self.trees_checked,
            "normal_form_counts": self.normal_form_counts,
            "violations": self.violations,
            "passed": self.passed(),
        })
    }
}

/// Certifies convergence at bounded arity: every syntax tree of arity
/// `≤ max_arity` has a unique normal form under ALL rewrite sequences
/// (explored with memoization); the distinct normal forms per arity are
/// counted and checked against the dimension of the clique operad; and the
/// evaluation map restricted to normal forms is verified to be a bijection
/// onto noncrossing cliques.
pub fn confluence_report(magma: &Magma, max_arity: usize) -> Result<ConfluenceReport, String> {
    if !magma.is_finite() {
        return Err("confluence certification requires a finite magma".into());
    }
    let engine = RewriteEngine::new(magma);
    let generators = all_triangles(magma);
    let mut memo = BTreeMap::new();
    let mut violations = Vec::new();
    let mut counts = Vec::new();
    let mut trees_checked = 0usize;
    for n in 1..=max_arity {
        let trees = enumerate_syntax_trees(&generators, n);
        let mut normal_forms = BTreeSet::new();
        for t in &trees {
            trees_checked += 1;
            let nfs = engine.all_normal_forms(t, &mut memo);
            if nfs.len() != 1 {
                violations.push(format!(
                    "tree with {} normal forms at arity {n}: {t:?}",
                    nfs.len()
                ));
                continue;
            }
            let nf = nfs.into_iter().next().unwrap();
            if !engine.is_normal_form(&nf) {
                violations.push(format!("reachable form is not normal: {nf:?}"));
            }
            if nf.ev(magma) != t.ev(magma) {
                violations.push(format!("normalization changed the evaluation of {t:?}"));
            }
            normal_forms.insert(nf);
        }
        let dim = crate::series::dim_ncm(magma.card() as u64, n as u64);
        if num_bigint::BigUint::from(normal_forms.len()) != dim {
            violations.push(format!(
                "arity {n}: {} normal forms, dimension predicts {dim}",
                normal_forms.len()
            ));
        }
        // the evaluation map must biject normal forms onto noncrossing cliques
        let images: BTreeSet<MClique> = normal_forms.iter().map(|t| t.ev(magma)).collect();
        let all: BTreeSet<MClique> = enumerate_noncrossing(magma, n)?.into_iter().collect();
        if images.len() != normal_forms.len() {
            violations.push(format!("arity {n}: evaluation is not injective on normal forms"));
        }
        if images != all {
            violations.push(format!("arity {n}: evaluation does not cover all cliques"));
        }
        counts.push(normal_forms.len());
    }
    Ok(ConfluenceReport {
        arity: max_arity,
        trees_checked,
        normal_form_counts: counts,
        violations,
    })
}
