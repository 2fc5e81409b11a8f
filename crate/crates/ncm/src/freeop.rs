//! The free operad on the set of M-triangles: syntax trees, grafting, and
//! the evaluation map into the operad of noncrossing cliques.
//!
//! The generating set consists of all `m³` M-triangles `(p₀, p₁, p₂)`
//! (base, first edge, second edge), each of arity 2, so syntax trees are
//! planar binary trees whose internal nodes carry triangles.  The leaf `⊥`
//! is the free-operad unit.  Grafting `s ∘ᵢ t` replaces the `i`-th leaf of
//! `s` by `t`; the evaluation map `ev` is the unique operad morphism sending
//! the corolla of a triangle to that triangle, and it is surjective onto
//! noncrossing cliques because the triangles form a minimal generating set.

use crate::clique::MClique;
use crate::magma::{Label, Magma};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// An M-triangle `(base, edge₁, edge₂)`, the degree-1 generator.
pub type Triangle = (Label, Label, Label);

/// A syntax tree over the M-triangles: a planar binary tree whose internal
/// nodes are labeled by triangles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SyntaxTree {
    /// The leaf `⊥` (arity 1, degree 0).
    Leaf,
    /// An internal node with its generator and two subtrees.
    Node {
        generator: Triangle,
        left: Box<SyntaxTree>,
        right: Box<SyntaxTree>,
    },
}

impl SyntaxTree {
    /// The corolla `c(x)`: a single node over two leaves.
    pub fn corolla(generator: Triangle) -> SyntaxTree {
        SyntaxTree::Node {
            generator,
            left: Box::new(SyntaxTree::Leaf),
            right: Box::new(SyntaxTree::Leaf),
        }
    }

    /// Builds a node from parts.
    pub fn node(generator: Triangle, left: SyntaxTree, right: SyntaxTree) -> SyntaxTree {
        SyntaxTree::Node {
            generator,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Number of leaves.
    pub fn arity(&self) -> usize {
        match self {
            SyntaxTree::Leaf => 1,
            SyntaxTree::Node { left, right, .. } => left.arity() + right.arity(),
        }
    }

    /// Number of internal nodes.
    pub fn degree(&self) -> usize {
        match self {
            SyntaxTree::Leaf => 0,
            SyntaxTree::Node { left, right, .. } => 1 + left.degree() + right.degree(),
        }
    }

    /// Grafts the root of `t` onto the `i`-th leaf (1-based, left to right).
    ///
    /// # Panics
    /// Panics when `i` is out of range.
    pub fn graft(&self, i: usize, t: &SyntaxTree) -> SyntaxTree {
        assert!(1 <= i && i <= self.arity(), "leaf position out of range");
        match self {
            SyntaxTree::Leaf => t.clone(),
            SyntaxTree::Node { generator, left, right } => {
                let la = left.arity();
                if i <= la {
                    SyntaxTree::node(*generator, left.graft(i, t), (**right).clone())
                } else {
                    SyntaxTree::node(*generator, (**left).clone(), right.graft(i - la, t))
                }
            }
        }
    }

    /// Evaluates the tree in the clique operad.
    pub fn ev(&self, magma: &Magma) -> MClique {
        match self {
            SyntaxTree::Leaf => MClique::unit(),
            SyntaxTree::Node { generator, left, right } => {
                let (p0, p1, p2) = *generator;
                let tri = MClique::triangle(magma, p0, p1, p2);
                let l = left.ev(magma);
                let r = right.ev(magma);
                let la = left.arity();
                tri.compose(magma, 1, &l).compose(magma, 1 + la, &r)
            }
        }
    }

    /// Serializes as nested JSON: a leaf is `null`, a node is
    /// `{"generator": ["b", "e1", "e2"], "left": …, "right": …}`.
    pub fn to_json(&self, magma: &Magma) -> Value {
        match self {
            SyntaxTree::Leaf => Value::Null,
            SyntaxTree::Node { generator, left, right } => json!({
                "generator": [
                    magma.name(generator.0),
                    magma.name(generator.1),
                    magma.name(generator.2),
                ],
                "left": left.to_json(magma),
                "right": right.to_json(magma),
            }),
        }
    }

    /// Parses the nested JSON form.
    pub fn from_json(magma: &Magma, v: &Value) -> Result<SyntaxTree, String> {
        if v.is_null() {
            return Ok(SyntaxTree::Leaf);
        }
        let gen = v
            .get("generator")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 3)
            .ok_or("missing generator triple")?;
        let lab = |i: usize| -> Result<Label, String> {
            magma.label_of(gen[i].as_str().ok_or("generator labels must be strings")?)
        };
        Ok(SyntaxTree::node(
            (lab(0)?, lab(1)?, lab(2)?),
            SyntaxTree::from_json(magma, v.get("left").ok_or("missing left")?)?,
            SyntaxTree::from_json(magma, v.get("right").ok_or("missing right")?)?,
        ))
    }
}

/// All M-triangles of a finite magma, in lexicographic label order.
pub fn all_triangles(magma: &Magma) -> Vec<Triangle> {
    let elems = magma.elements();
    let mut out = Vec::with_capacity(elems.len().pow(3));
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// All syntax trees with `n` leaves over the given generators.
pub fn enumerate_syntax_trees(generators: &[Triangle], n: usize) -> Vec<SyntaxTree> {
    assert!(n >= 1);
    if n == 1 {
        return vec![SyntaxTree::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..n {
        let lefts = enumerate_syntax_trees(generators, k);
        let rights = enumerate_syntax_trees(generators, n - k);
        for l in &lefts {
            for r in &rights {
                for &g in generators {
                    out.push(SyntaxTree::node(g, l.clone(), r.clone()));
                }
            }
        }
    }
    out
}

/// An exact-rational linear combination of syntax trees of one arity.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinComb {
    pub terms: BTreeMap<SyntaxTree, BigRational>,
}

impl LinComb {
    /// The zero combination.
    pub fn zero() -> LinComb {
        LinComb::default()
    }

    /// Adds `coeff · tree`, dropping the term if the total cancels.
    pub fn add_term(&mut self, tree: SyntaxTree, coeff: BigRational) {
        use num_traits::Zero;
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(tree) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Convenience: adds an integer multiple of a tree.
    pub fn add_int(&mut self, tree: SyntaxTree, coeff: i64) {
        use num_bigint::BigInt;
        self.add_term(
            tree,
            BigRational::from_integer(BigInt::from(coeff)),
        );
    }

    /// True when no terms remain.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Serializes as a list of `(tree, numerator, denominator)` entries.
    pub fn to_json(&self, magma: &Magma) -> Value {
        let entries: Vec<Value> = self
            .terms
            .iter()
            .map(|(t, c)| {
                json!([
                    t.to_json(magma),
                    c.numer().to_string(),
                    c.denom().to_string()
                ])
            })
            .collect();
        Value::Array(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::enumerate_noncrossing;
    use std::collections::BTreeSet;

    #[test]
    fn leaf_is_graft_unit() {
        let t = SyntaxTree::corolla((1, 0, 1));
        assert_eq!(SyntaxTree::Leaf.graft(1, &t), t);
        assert_eq!(t.graft(1, &SyntaxTree::Leaf), t);
        assert_eq!(t.graft(2, &SyntaxTree::Leaf), t);
    }

    #[test]
    fn graft_shapes() {
        let x = SyntaxTree::corolla((0, 0, 0));
        let y = SyntaxTree::corolla((1, 1, 1));
        let left_comb = x.graft(1, &y);
        assert_eq!(
            left_comb,
            SyntaxTree::node((0, 0, 0), y.clone(), SyntaxTree::Leaf)
        );
        assert_eq!(left_comb.arity(), 3);
        assert_eq!(left_comb.degree(), 2);
    }

    #[test]
    fn tree_counts() {
        let n2 = Magma::builtin_n(2);
        let gens = all_triangles(&n2);
        assert_eq!(gens.len(), 8);
        assert_eq!(enumerate_syntax_trees(&gens, 1).len(), 1);
        assert_eq!(enumerate_syntax_trees(&gens, 2).len(), 8);
        assert_eq!(enumerate_syntax_trees(&gens, 3).len(), 128);
        let n3 = Magma::builtin_n(3);
        assert_eq!(enumerate_syntax_trees(&all_triangles(&n3), 2).len(), 27);
        assert_eq!(enumerate_syntax_trees(&all_triangles(&n3), 3).len(), 2 * 729);
    }

    #[test]
    fn ev_corolla_is_triangle() {
        let m = Magma::builtin_n(2);
        for g in all_triangles(&m) {
            assert_eq!(
                SyntaxTree::corolla(g).ev(&m),
                MClique::triangle(&m, g.0, g.1, g.2)
            );
        }
    }

    #[test]
    fn ev_is_operad_morphism() {
        let m = Magma::builtin_n(2);
        let gens = all_triangles(&m);
        let t2 = enumerate_syntax_trees(&gens, 2);
        for s in &t2 {
            for t in &t2 {
                for i in 1..=s.arity() {
                    assert_eq!(
                        s.graft(i, t).ev(&m),
                        s.ev(&m).compose(&m, i, &t.ev(&m))
                    );
                }
            }
        }
    }

    #[test]
    fn ev_image_is_all_noncrossing() {
        let m = Magma::builtin_n(2);
        let gens = all_triangles(&m);
        let images: BTreeSet<MClique> = enumerate_syntax_trees(&gens, 3)
            .iter()
            .map(|t| t.ev(&m))
            .collect();
        let all: BTreeSet<MClique> =
            enumerate_noncrossing(&m, 3).unwrap().into_iter().collect();
        assert_eq!(images, all);
    }

    #[test]
    fn lincomb_cancellation() {
        let mut c = LinComb::zero();
        let t = SyntaxTree::corolla((0, 0, 0));
        c.add_int(t.clone(), 1);
        c.add_int(t, -1);
        assert!(c.is_zero());
    }

    #[test]
    fn tree_json_round_trip() {
        let m = Magma::builtin_n(2);
        let t = SyntaxTree::node(
            (1, 0, 1),
            SyntaxTree::corolla((0, 1, 0)),
            SyntaxTree::Leaf,
        );
        let v = t.to_json(&m);
        assert_eq!(SyntaxTree::from_json(&m, &v).unwrap(), t);
    }
}
