//! Noncrossing cliques over a unitary magma and their operadic composition.
//!
//! An *M-clique* of arity `n ≥ 1` is a labeling of the arcs of the polygon on
//! vertices `1 … n+1` by elements of a unitary magma `M`, where the arc
//! `(1, n+1)` is the *base*, the arcs `(i, i+1)` are the *edges*, and all
//! other arcs are *diagonals*.  Arcs labeled by the unit `1_M` are omitted
//! from storage (sparse canonical form), so clique equality is map equality.
//! An arc is *solid* when its label differs from `1_M`.  A clique is
//! *noncrossing* when no two solid diagonals `(i, j)`, `(k, l)` satisfy
//! `i < k < j < l`.
//!
//! The partial composition `p ∘ᵢ q` glues the base of `q` onto the `i`-th
//! edge of `p`: vertices of `p` above `i` shift by `arity(q) − 1`, vertices
//! `v` of `q` land on `v + i − 1`, all arcs are copied under these shifts,
//! and the merged arc `(i, i + arity(q))` receives the label `pᵢ ⋆ q₀`
//! (omitted when it is the unit).  The arity-1 clique with empty label map is
//! the two-sided unit of this composition.

use crate::magma::{Label, Magma};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// An arc of the polygon: a pair `(i, j)` with `1 ≤ i < j ≤ n+1`.
pub type Arc = (usize, usize);

/// A sparse M-clique.  The ambient magma is passed to operations explicitly;
/// the clique itself stores only arity and non-unit arc labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MClique {
    /// Arity `n`; the polygon has `n + 1` vertices.
    pub arity: usize,
    /// Arc labels; every stored label differs from the unit.
    pub arcs: BTreeMap<Arc, Label>,
}

impl MClique {
    /// The unit clique: arity 1, empty label map.
    pub fn unit() -> MClique {
        MClique {
            arity: 1,
            arcs: BTreeMap::new(),
        }
    }

    /// Builds a clique from arbitrary arc labels, dropping unit labels and
    /// validating arc ranges.
    pub fn new(
        magma: &Magma,
        arity: usize,
        labels: impl IntoIterator<Item = (Arc, Label)>,
    ) -> Result<MClique, String> {
        assert!(arity >= 1);
        let unit = magma.unit();
        let mut arcs = BTreeMap::new();
        for ((i, j), l) in labels {
            if !(1 <= i && i < j && j <= arity + 1) {
                return Err(format!("arc ({i},{j}) out of range for arity {arity}"));
            }
            if l != unit {
                arcs.insert((i, j), l);
            }
        }
        Ok(MClique { arity, arcs })
    }

    /// The M-triangle `(p₀, p₁, p₂)`: arity 2 with base `p₀` and edges
    /// `p₁`, `p₂`.
    pub fn triangle(magma: &Magma, p0: Label, p1: Label, p2: Label) -> MClique {
        MClique::new(magma, 2, [((1, 3), p0), ((1, 2), p1), ((2, 3), p2)])
            .expect("triangle arcs are in range")
    }

    /// An M-bubble: a clique whose only possibly-solid arcs are the base and
    /// the edges.  `border` lists the edge labels `p₁ … p_n`.
    pub fn bubble(magma: &Magma, base: Label, border: &[Label]) -> MClique {
        let n = border.len();
        assert!(n >= 2, "bubbles have arity >= 2");
        let mut labels = vec![((1, n + 1), base)];
        for (i, &l) in border.iter().enumerate() {
            labels.push(((i + 1, i + 2), l));
        }
        MClique::new(magma, n, labels).expect("bubble arcs are in range")
    }

    /// The label of arc `(i, j)` (the unit when the arc is absent).
    pub fn arc_label(&self, magma: &Magma, i: usize, j: usize) -> Label {
        *self.arcs.get(&(i, j)).unwrap_or(&magma.unit())
    }

    /// The base label `p₀`.
    pub fn base(&self, magma: &Magma) -> Label {
        self.arc_label(magma, 1, self.arity + 1)
    }

    /// The `i`-th edge label `pᵢ`, `1 ≤ i ≤ n`.
    pub fn edge(&self, magma: &Magma, i: usize) -> Label {
        self.arc_label(magma, i, i + 1)
    }

    /// True when `(i, j)` is a diagonal (neither the base nor an edge).
    pub fn is_diagonal(&self, i: usize, j: usize) -> bool {
        j > i + 1 && (i, j) != (1, self.arity + 1)
    }

    /// The solid diagonals of the clique.
    pub fn solid_diagonals(&self) -> Vec<Arc> {
        self.arcs
            .keys()
            .copied()
            .filter(|&(i, j)| self.is_diagonal(i, j))
            .collect()
    }

    /// True when the clique is a bubble (no solid diagonals).
    pub fn is_bubble(&self) -> bool {
        self.solid_diagonals().is_empty()
    }

    /// Noncrossing predicate: no two solid diagonals cross.
    pub fn crossing_free(&self) -> bool {
        let ds = self.solid_diagonals();
        for (a, &(i, j)) in ds.iter().enumerate() {
            for &(k, l) in &ds[a + 1..] {
                if (i < k && k < j && j < l) || (k < i && i < l && l < j) {
                    return false;
                }
            }
        }
        true
    }

    /// The border word `p₁ … p_n` (unit letters included).  The unit clique
    /// has the empty border: at arity 1 the base is the only side of the
    /// polygon, so there is no edge to read.
    pub fn border(&self, magma: &Magma) -> Vec<Label> {
        if self.arity == 1 {
            return Vec::new();
        }
        (1..=self.arity).map(|i| self.edge(magma, i)).collect()
    }

    /// Partial composition `p ∘ᵢ q`.
    ///
    /// # Panics
    /// Panics when `i` is out of range.
    pub fn compose(&self, magma: &Magma, i: usize, q: &MClique) -> MClique {
        let (n, m) = (self.arity, q.arity);
        assert!(1 <= i && i <= n, "position {i} out of range for arity {n}");
        let unit = magma.unit();
        let shift_p = |v: usize| if v > i { v + m - 1 } else { v };
        let mut arcs = BTreeMap::new();
        for (&(x, y), &l) in &self.arcs {
            arcs.insert((shift_p(x), shift_p(y)), l);
        }
        for (&(x, y), &l) in &q.arcs {
            if (x, y) == (1, m + 1) {
                continue; // the base of q is consumed by the merged arc
            }
            arcs.insert((x + i - 1, y + i - 1), l);
        }
        let merged = magma.op(self.edge(magma, i), q.base(magma));
        arcs.remove(&(i, i + m));
        if merged != unit {
            arcs.insert((i, i + m), merged);
        }
        MClique { arity: n + m - 1, arcs }
    }

    /// Relabels every arc by `θ` (given on labels).  `θ` must fix the unit;
    /// callers wanting the full morphism property should pass a magma
    /// endomorphism.
    pub fn map_labels(
        &self,
        magma: &Magma,
        theta: impl Fn(Label) -> Label,
    ) -> Result<MClique, String> {
        let unit = magma.unit();
        if theta(unit) != unit {
            return Err("label map does not fix the unit".into());
        }
        MClique::new(
            magma,
            self.arity,
            self.arcs.iter().map(|(&a, &l)| (a, theta(l))),
        )
    }

    // ------------------------------------------------------------------
    // JSON interchange
    // ------------------------------------------------------------------

    /// Serializes as `{"arity": n, "magma": name, "arcs": [[i, j, "label"]]}`
    /// with arcs sorted.
    pub fn to_json(&self, magma: &Magma, magma_name: &str) -> Value {
        let arcs: Vec<Value> = self
            .arcs
            .iter()
            .map(|(&(i, j), &l)| json!([i, j, magma.name(l)]))
            .collect();
        json!({"arity": self.arity, "magma": magma_name, "arcs": arcs})
    }

    /// Parses the JSON interchange format.
    pub fn from_json(magma: &Magma, v: &Value) -> Result<MClique, String> {
        let arity = v
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or("missing arity")? as usize;
        let arcs = v.get("arcs").and_then(Value::as_array).ok_or("missing arcs")?;
        let mut labels = Vec::new();
        for arc in arcs {
            let triple = arc.as_array().filter(|a| a.len() == 3).ok_or("bad arc")?;
            let i = triple[0].as_u64().ok_or("bad arc endpoint")? as usize;
            let j = triple[1].as_u64().ok_or("bad arc endpoint")? as usize;
            let name = triple[2].as_str().ok_or("bad arc label")?;
            labels.push(((i, j), magma.label_of(name)?));
        }
        MClique::new(magma, arity, labels)
    }
}

/// All noncrossing sets of diagonals of the `(n+1)`-gon, by backtracking
/// over diagonals in lexicographic order.
pub fn noncrossing_diagonal_sets(n: usize) -> Vec<Vec<Arc>> {
    let verts = n + 1;
    let mut diags = Vec::new();
    for i in 1..=verts {
        for j in i + 2..=verts {
            if (i, j) != (1, verts) {
                diags.push((i, j));
            }
        }
    }
    let mut out = Vec::new();
    let mut cur: Vec<Arc> = Vec::new();
    fn crosses((i, j): Arc, (k, l): Arc) -> bool {
        (i < k && k < j && j < l) || (k < i && i < l && l < j)
    }
    fn rec(diags: &[Arc], idx: usize, cur: &mut Vec<Arc>, out: &mut Vec<Vec<Arc>>) {
        if idx == diags.len() {
            out.push(cur.clone());
            return;
        }
        rec(diags, idx + 1, cur, out);
        let d = diags[idx];
        if cur.iter().all(|&c| !crosses(c, d)) {
            cur.push(d);
            rec(diags, idx + 1, cur, out);
            cur.pop();
        }
    }
    rec(&diags, 0, &mut cur, &mut out);
    out
}

/// Enumerates all noncrossing M-cliques of arity `n`, each exactly once, in
/// lexicographic order on their sorted arc lists.  Requires a finite magma.
pub fn enumerate_noncrossing(magma: &Magma, n: usize) -> Result<Vec<MClique>, String> {
    if !magma.is_finite() {
        return Err("enumeration requires a finite magma".into());
    }
    assert!(n >= 1);
    if n == 1 {
        return Ok(vec![MClique::unit()]);
    }
    let elems = magma.elements();
    let bar = magma.non_unit_elements();
    let mut base_edges: Vec<Arc> = vec![(1, n + 1)];
    base_edges.extend((1..=n).map(|i| (i, i + 1)));
    let mut out = Vec::new();
    for support in noncrossing_diagonal_sets(n) {
        // assign non-unit labels to solid diagonals, arbitrary labels to
        // base and edges
        if !support.is_empty() && bar.is_empty() {
            continue; // the trivial magma admits no solid diagonals
        }
        let k = support.len();
        let slots = k + base_edges.len();
        let mut choice = vec![0usize; slots];
        loop {
            let mut arcs = BTreeMap::new();
            for (s, &d) in support.iter().enumerate() {
                arcs.insert(d, bar[choice[s]]);
            }
            for (s, &a) in base_edges.iter().enumerate() {
                let l = elems[choice[k + s]];
                if l != magma.unit() {
                    arcs.insert(a, l);
                }
            }
            out.push(MClique { arity: n, arcs });
            // odometer over the label choices
            let mut pos = 0;
            loop {
                if pos == slots {
                    break;
                }
                let limit = if pos < k { bar.len() } else { elems.len() };
                choice[pos] += 1;
                if choice[pos] < limit {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == slots {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Magma {
        Magma::Z
    }

    #[test]
    fn composition_worked_example() {
        // arity-5 composed with arity-3 at position 2, over (Z, +, 0)
        let m = z();
        let p = MClique::new(&m, 5, [((1, 2), 1), ((2, 3), -2), ((1, 5), -2), ((3, 5), 1)])
            .unwrap();
        let q = MClique::new(&m, 3, [((1, 4), 3), ((1, 3), 1), ((3, 4), 2)]).unwrap();
        let r = p.compose(&m, 2, &q);
        let want = MClique::new(
            &m,
            7,
            [
                ((1, 2), 1),
                ((2, 4), 1),
                ((2, 5), 1),
                ((4, 5), 2),
                ((1, 7), -2),
                ((5, 7), 1),
            ],
        )
        .unwrap();
        assert_eq!(r, want);
    }

    #[test]
    fn unit_clique_is_identity() {
        let m = Magma::builtin_n(2);
        let q = MClique::triangle(&m, 1, 0, 1);
        assert_eq!(MClique::unit().compose(&m, 1, &q), q);
        for i in 1..=2 {
            assert_eq!(q.compose(&m, i, &MClique::unit()), q);
        }
    }

    #[test]
    fn merged_arc_label() {
        // two N2-triangles: p = base 1, q = first edge 1; merged label
        // p1 ⋆ q0 = 0 ⋆ 0 = 0 is the unit, so the merged arc is absent
        let m = Magma::builtin_n(2);
        let p = MClique::triangle(&m, 1, 0, 0);
        let q = MClique::triangle(&m, 0, 1, 0);
        let r = p.compose(&m, 1, &q);
        let want = MClique::new(&m, 3, [((1, 4), 1), ((1, 2), 1)]).unwrap();
        assert_eq!(r, want);
    }

    #[test]
    fn crossing_detection() {
        let m = Magma::builtin_n(2);
        assert!(MClique::unit().crossing_free());
        let crossing = MClique::new(&m, 3, [((1, 3), 1), ((2, 4), 1)]).unwrap();
        assert!(!crossing.crossing_free());
    }

    #[test]
    fn enumeration_counts() {
        let n2 = Magma::builtin_n(2);
        let want = [1usize, 8, 48, 352];
        for (n, &w) in (1..=4).zip(&want) {
            assert_eq!(enumerate_noncrossing(&n2, n).unwrap().len(), w, "n={n}");
        }
        let n3 = Magma::builtin_n(3);
        assert_eq!(enumerate_noncrossing(&n3, 3).unwrap().len(), 405);
    }

    #[test]
    fn enumeration_rejects_infinite() {
        assert!(enumerate_noncrossing(&Magma::Z, 2).is_err());
    }

    #[test]
    fn border_words() {
        let m = Magma::builtin_d0();
        assert_eq!(MClique::unit().border(&m), Vec::<Label>::new());
        let zero = m.label_of("0").unwrap();
        let one = m.unit();
        let b = MClique::bubble(&m, one, &[one, zero, one]);
        assert_eq!(b.border(&m), vec![one, zero, one]);
    }

    #[test]
    fn map_labels_complement() {
        let m = Magma::builtin_bnc();
        let a = m.label_of("a").unwrap();
        let b = m.label_of("b").unwrap();
        let swap = |x: Label| if x == a { b } else if x == b { a } else { x };
        let p = MClique::triangle(&m, a, b, a);
        let q = p.map_labels(&m, swap).unwrap();
        assert_eq!(q, MClique::triangle(&m, b, a, b));
        assert_eq!(q.map_labels(&m, swap).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let m = Magma::builtin_bnc();
        let a = m.label_of("a").unwrap();
        let p = MClique::new(&m, 3, [((1, 4), a), ((1, 3), a)]).unwrap();
        let v = p.to_json(&m, "BNC");
        let back = MClique::from_json(&m, &v).unwrap();
        assert_eq!(p, back);
        // bit-exact round trip of the serialized form
        assert_eq!(v, back.to_json(&m, "BNC"));
    }

    #[test]
    fn composition_preserves_noncrossing() {
        let m = Magma::builtin_n(2);
        let cliques2 = enumerate_noncrossing(&m, 2).unwrap();
        for p in &cliques2 {
            for q in &cliques2 {
                for i in 1..=p.arity {
                    assert!(p.compose(&m, i, q).crossing_free());
                }
            }
        }
    }
}
