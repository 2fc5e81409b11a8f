//! The area construction, the bubble-tree map, and the Schröder-tree
//! realization of the clique operad.
//!
//! A *bubble* is a clique with no solid diagonal.  For an arc `(x, y)` of a
//! clique `p` (its base or a diagonal), the *area adjacent to `(x, y)`* is
//! the bubble read off the maximal path `x = z₁ < … < z_k = y` where each
//! `z_{i+1}` is the greatest vertex such that `(zᵢ, z_{i+1})` is a solid
//! diagonal or an edge of `p` (the arc `(x, y)` itself being excluded); its
//! base is `p(x, y)` and its `i`-th edge is `p(zᵢ, z_{i+1})`.
//!
//! The *bubble tree* `bt(p)` decomposes a noncrossing clique as the area at
//! its base composed with the bubble trees of the sub-cliques hanging below
//! the path (their bases forced to the unit).  The map `bt` is injective but
//! is *not* an operad morphism.  Transcribing bubbles into nodes gives the
//! Schröder-tree realization: internal nodes of arity ≥ 2, every edge
//! labeled (the stem by the base, the edge to the `i`-th child by the
//! bubble's `i`-th edge), internal-internal edges labeled by non-unit
//! elements.  Composition on Schröder trees grafts a tree onto a leaf and
//! either labels the new edge by `a ⋆ b` (leaf-edge label times stem label)
//! or contracts it when that product is the unit.

use crate::clique::MClique;
use crate::magma::{Label, Magma};
use serde_json::{json, Value};

/// The area of `p` adjacent to the arc `(x, y)`, which must be the base or
/// a diagonal of the polygon.
pub fn area(magma: &Magma, p: &MClique, x: usize, y: usize) -> Result<MClique, String> {
    if p.arity < 2 {
        return Err("areas require arity >= 2".into());
    }
    if y <= x + 1 || !((x, y) == (1, p.arity + 1) || p.is_diagonal(x, y)) {
        return Err(format!("arc ({x},{y}) is neither the base nor a diagonal"));
    }
    let path = area_path(magma, p, x, y);
    let border: Vec<Label> = path
        .windows(2)
        .map(|w| p.arc_label(magma, w[0], w[1]))
        .collect();
    Ok(MClique::bubble(magma, p.arc_label(magma, x, y), &border))
}

/// The maximal path `x = z₁ < … < z_k = y` along solid diagonals and edges,
/// excluding the arc `(x, y)` itself.
pub fn area_path(magma: &Magma, p: &MClique, x: usize, y: usize) -> Vec<usize> {
    let _ = magma;
    let mut path = vec![x];
    while *path.last().unwrap() != y {
        let z = *path.last().unwrap();
        let next = (z + 1..=y)
            .rev()
            .find(|&w| {
                (z, w) != (x, y)
                    && (w == z + 1 || (p.is_diagonal(z, w) && p.arcs.contains_key(&(z, w))))
            })
            .expect("edges always continue the path");
        path.push(next);
    }
    path
}

/// A bubble tree: a planar tree whose internal nodes carry bubbles; the
/// number of children of a node equals its bubble's arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BubbleTree {
    Leaf,
    Node {
        bubble: MClique,
        children: Vec<BubbleTree>,
    },
}

impl BubbleTree {
    /// The corolla of a bubble.
    pub fn corolla(bubble: MClique) -> BubbleTree {
        let n = bubble.arity;
        BubbleTree::Node {
            bubble,
            children: vec![BubbleTree::Leaf; n],
        }
    }

    /// Number of leaves.
    pub fn arity(&self) -> usize {
        match self {
            BubbleTree::Leaf => 1,
            BubbleTree::Node { children, .. } => children.iter().map(BubbleTree::arity).sum(),
        }
    }

    /// Evaluates by complete composition in the clique operad.
    pub fn ev(&self, magma: &Magma) -> MClique {
        match self {
            BubbleTree::Leaf => MClique::unit(),
            BubbleTree::Node { bubble, children } => {
                let mut result = bubble.clone();
                // compose right-to-left so earlier positions stay valid
                for (i, c) in children.iter().enumerate().rev() {
                    result = result.compose(magma, i + 1, &c.ev(magma));
                }
                result
            }
        }
    }

    /// Checks the bubble-tree image conditions: every node carries a
    /// bubble; non-root nodes have unit base; and a node whose `i`-th child
    /// is internal has a solid `i`-th edge.
    pub fn satisfies_image_conditions(&self, magma: &Magma) -> bool {
        fn rec(t: &BubbleTree, magma: &Magma, is_root: bool) -> bool {
            match t {
                BubbleTree::Leaf => true,
                BubbleTree::Node { bubble, children } => {
                    if !bubble.is_bubble() || children.len() != bubble.arity {
                        return false;
                    }
                    if !is_root && bubble.base(magma) != magma.unit() {
                        return false;
                    }
                    for (i, c) in children.iter().enumerate() {
                        if matches!(c, BubbleTree::Node { .. })
                            && bubble.edge(magma, i + 1) == magma.unit()
                        {
                            return false;
                        }
                        if !rec(c, magma, false) {
                            return false;
                        }
                    }
                    true
                }
            }
        }
        rec(self, magma, true)
    }
}

/// The sub-clique of `p` on vertices `a ..= b`, with the base forced to the
/// unit (the label of `(a, b)`, if any, belongs to the enclosing bubble).
pub(crate) fn sub_clique(p: &MClique, a: usize, b: usize) -> MClique {
    let mut arcs = std::collections::BTreeMap::new();
    for (&(i, j), &l) in &p.arcs {
        if a <= i && j <= b && (i, j) != (a, b) {
            arcs.insert((i - a + 1, j - a + 1), l);
        }
    }
    MClique {
        arity: b - a,
        arcs,
    }
}

/// The bubble tree of a noncrossing clique.
pub fn bt(magma: &Magma, p: &MClique) -> Result<BubbleTree, String> {
    if !p.crossing_free() {
        return Err("bubble trees are defined for noncrossing cliques".into());
    }
    if p.arity == 1 {
        return Ok(BubbleTree::Leaf);
    }
    let base_arc = (1, p.arity + 1);
    let path = area_path(magma, p, base_arc.0, base_arc.1);
    let border: Vec<Label> = path
        .windows(2)
        .map(|w| p.arc_label(magma, w[0], w[1]))
        .collect();
    let bubble = MClique::bubble(magma, p.base(magma), &border);
    let mut children = Vec::new();
    for w in path.windows(2) {
        children.push(bt(magma, &sub_clique(p, w[0], w[1]))?);
    }
    Ok(BubbleTree::Node { bubble, children })
}

// ---------------------------------------------------------------------
// Schröder trees
// ---------------------------------------------------------------------

/// A labeled Schröder tree.  The bare `Leaf` is the arity-1 tree with no
/// labels; a `Node` carries the stem label (above the root) and, for each
/// child, the label of the connecting edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchroderTree {
    Leaf,
    Node {
        stem: Label,
        children: Vec<(Label, SchroderSub)>,
    },
}

/// A subtree of a Schröder tree: its incoming-edge label lives in the
/// parent's child list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchroderSub {
    Leaf,
    Node {
        children: Vec<(Label, SchroderSub)>,
    },
}

impl SchroderSub {
    fn arity(&self) -> usize {
        match self {
            SchroderSub::Leaf => 1,
            SchroderSub::Node { children } => {
                children.iter().map(|(_, c)| c.arity()).sum()
            }
        }
    }

    fn well_formed(&self, magma: &Magma) -> bool {
        match self {
            SchroderSub::Leaf => true,
            SchroderSub::Node { children } => {
                children.len() >= 2
                    && children.iter().all(|(l, c)| match c {
                        SchroderSub::Leaf => true,
                        SchroderSub::Node { .. } => {
                            *l != magma.unit() && c.well_formed(magma)
                        }
                    })
                    && children
                        .iter()
                        .all(|(_, c)| c.well_formed(magma))
            }
        }
    }
}

impl SchroderTree {
    /// Number of leaves.
    pub fn arity(&self) -> usize {
        match self {
            SchroderTree::Leaf => 1,
            SchroderTree::Node { children, .. } => {
                children.iter().map(|(_, c)| c.arity()).sum()
            }
        }
    }

    /// Structural validity: internal nodes have ≥ 2 children and
    /// internal-internal edges carry non-unit labels.
    pub fn well_formed(&self, magma: &Magma) -> bool {
        match self {
            SchroderTree::Leaf => true,
            SchroderTree::Node { children, .. } => {
                children.len() >= 2
                    && children.iter().all(|(l, c)| match c {
                        SchroderSub::Leaf => true,
                        SchroderSub::Node { .. } => {
                            *l != magma.unit() && c.well_formed(magma)
                        }
                    })
            }
        }
    }

    /// Serializes as nested JSON with the stem at the root object:
    /// `{"stem": "b", "children": [{"edge": "l", "tree": …}]}`; leaves are
    /// `null`.
    pub fn to_json(&self, magma: &Magma) -> Value {
        fn sub(magma: &Magma, s: &SchroderSub) -> Value {
            match s {
                SchroderSub::Leaf => Value::Null,
                SchroderSub::Node { children } => json!({
                    "children": children
                        .iter()
                        .map(|(l, c)| json!({"edge": magma.name(*l), "tree": sub(magma, c)}))
                        .collect::<Vec<_>>()
                }),
            }
        }
        match self {
            SchroderTree::Leaf => Value::Null,
            SchroderTree::Node { stem, children } => json!({
                "stem": magma.name(*stem),
                "children": children
                    .iter()
                    .map(|(l, c)| json!({"edge": magma.name(*l), "tree": sub(magma, c)}))
                    .collect::<Vec<_>>(),
            }),
        }
    }

    /// Parses the nested JSON form.
    pub fn from_json(magma: &Magma, v: &Value) -> Result<SchroderTree, String> {
        fn sub(magma: &Magma, v: &Value) -> Result<SchroderSub, String> {
            if v.is_null() {
                return Ok(SchroderSub::Leaf);
            }
            let children = parse_children(magma, v)?;
            Ok(SchroderSub::Node { children })
        }
        fn parse_children(
            magma: &Magma,
            v: &Value,
        ) -> Result<Vec<(Label, SchroderSub)>, String> {
            let arr = v
                .get("children")
                .and_then(Value::as_array)
                .ok_or("missing children")?;
            arr.iter()
                .map(|c| {
                    let edge = magma
                        .label_of(c.get("edge").and_then(Value::as_str).ok_or("missing edge")?)?;
                    Ok((edge, sub(magma, c.get("tree").ok_or("missing tree")?)?))
                })
                .collect()
        }
        if v.is_null() {
            return Ok(SchroderTree::Leaf);
        }
        let stem = magma
            .label_of(v.get("stem").and_then(Value::as_str).ok_or("missing stem")?)?;
        Ok(SchroderTree::Node {
            stem,
            children: parse_children(magma, v)?,
        })
    }
}

/// Encodes a noncrossing clique as a Schröder tree by transcribing its
/// bubble tree: node labels become edge labels, the root base becomes the
/// stem.
pub fn to_schroder(magma: &Magma, p: &MClique) -> Result<SchroderTree, String> {
    fn convert(magma: &Magma, t: &BubbleTree) -> SchroderSub {
        match t {
            BubbleTree::Leaf => SchroderSub::Leaf,
            BubbleTree::Node { bubble, children } => SchroderSub::Node {
                children: children
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (bubble.edge(magma, i + 1), convert(magma, c)))
                    .collect(),
            },
        }
    }
    match bt(magma, p)? {
        BubbleTree::Leaf => Ok(SchroderTree::Leaf),
        BubbleTree::Node { bubble, children } => Ok(SchroderTree::Node {
            stem: bubble.base(magma),
            children: children
                .iter()
                .enumerate()
                .map(|(i, c)| (bubble.edge(magma, i + 1), convert(magma, c)))
                .collect(),
        }),
    }
}

/// Decodes a Schröder tree back into a noncrossing clique.
pub fn from_schroder(magma: &Magma, s: &SchroderTree) -> Result<MClique, String> {
    if !s.well_formed(magma) {
        return Err("malformed Schröder tree".into());
    }
    fn convert(magma: &Magma, base: Label, children: &[(Label, SchroderSub)]) -> BubbleTree {
        let border: Vec<Label> = children.iter().map(|(l, _)| *l).collect();
        let bubble = MClique::bubble(magma, base, &border);
        BubbleTree::Node {
            bubble,
            children: children
                .iter()
                .map(|(_, c)| match c {
                    SchroderSub::Leaf => BubbleTree::Leaf,
                    SchroderSub::Node { children } => convert(magma, magma.unit(), children),
                })
                .collect(),
        }
    }
    match s {
        SchroderTree::Leaf => Ok(MClique::unit()),
        SchroderTree::Node { stem, children } => {
            Ok(convert(magma, *stem, children).ev(magma))
        }
    }
}

/// Partial composition realized on Schröder trees: grafts `t`'s root onto
/// the `i`-th leaf of `s`.  With `a` the label of the edge above that leaf
/// and `b` the stem of `t`, the connecting edge is labeled `c = a ⋆ b` when
/// `c ≠ 1_M`, and contracted (the two nodes merged) when `c = 1_M`.
pub fn schroder_compose(
    magma: &Magma,
    s: &SchroderTree,
    i: usize,
    t: &SchroderTree,
) -> Result<SchroderTree, String> {
    if i < 1 || i > s.arity() {
        return Err(format!("leaf position {i} out of range"));
    }
    match s {
        SchroderTree::Leaf => {
            // the unit tree: composition returns the other operand
            Ok(t.clone())
        }
        SchroderTree::Node { stem, children } => {
            let mut children = children.clone();
            graft_into(magma, &mut children, i, t);
            Ok(SchroderTree::Node {
                stem: *stem,
                children,
            })
        }
    }
}

/// Replaces the `i`-th leaf under `children` by the grafted tree `t`.
fn graft_into(
    magma: &Magma,
    children: &mut Vec<(Label, SchroderSub)>,
    i: usize,
    t: &SchroderTree,
) {
    let mut pos = i;
    for idx in 0..children.len() {
        let a = children[idx].1.arity();
        if pos > a {
            pos -= a;
            continue;
        }
        match &mut children[idx].1 {
            SchroderSub::Leaf => {
                let a_label = children[idx].0;
                match t {
                    SchroderTree::Leaf => {
                        // composing with the unit clique: nothing changes
                    }
                    SchroderTree::Node {
                        stem,
                        children: t_children,
                    } => {
                        let c = magma.op(a_label, *stem);
                        if c != magma.unit() {
                            children[idx] = (
                                c,
                                SchroderSub::Node {
                                    children: t_children.clone(),
                                },
                            );
                        } else {
                            // contraction: splice t's children in place
                            children.splice(idx..=idx, t_children.iter().cloned());
                        }
                    }
                }
                return;
            }
            SchroderSub::Node {
                children: sub_children,
            } => {
                graft_into(magma, sub_children, pos, t);
                return;
            }
        }
    }
    unreachable!("leaf position was validated in range");
}
