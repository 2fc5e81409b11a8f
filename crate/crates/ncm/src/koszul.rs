//! The Koszul pairing on degree-2 trees, the dual relation space, the
//! annihilator computation, and dual M-cliques.
//!
//! The arity-3 component of the free operad carries the bilinear form
//! `⟨x ∘₁ y, x ∘₁ y⟩ = +1`, `⟨x ∘₂ y, x ∘₂ y⟩ = −1`, all other pairs `0`.
//! The dual relation space is spanned by three summed families: for each
//! `δ ∈ M̄` the sum of all `(p₀,p₁,p₂) ∘₁ (q₀,q₁,q₂)` with `p₁ ⋆ q₀ = δ`
//! (over `p₁, q₀`, the other four labels fixed); the mixed family summing
//! `p ∘₁ q − (p₀,q₁,p₁) ∘₂ (q₀,q₂,p₂)` over `p₁ ⋆ q₀ = 1_M`; and the
//! symmetric `∘₂` family over `p₂ ⋆ q₀ = δ`.  Its dimension is `2m⁵ − m⁴`,
//! complementing the relation space's `2m⁶ − 2m⁵ + m⁴` inside the
//! `2m⁶`-dimensional degree-2 component, and the two spaces annihilate each
//! other under the pairing.
//!
//! A *dual M-clique* is an `M²`-clique whose base and edges carry diagonal
//! pairs `(a, a)` and whose solid diagonals carry pairs `(a, b)` with
//! `a ≠ b`; the noncrossing ones count the dual dimensions.  No partial
//! composition realizing the dual operad on these cliques is known, so this
//! module is purely graded-space linear algebra.

use crate::clique::{noncrossing_diagonal_sets, MClique};
use crate::freeop::{LinComb, SyntaxTree};
use crate::linalg::{nullspace, rank, SparseRow};
use crate::magma::{Label, Magma};
use crate::rewrite::{circ, to_sparse, TreeBasis3};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// The Koszul sign of a degree-2 tree: `+1` for the `∘₁` shape, `−1` for
/// the `∘₂` shape.
fn shape_sign(t: &SyntaxTree) -> Result<i64, String> {
    let SyntaxTree::Node { left, right, .. } = t else {
        return Err("pairing requires degree-2 trees".into());
    };
    match (&**left, &**right) {
        (SyntaxTree::Node { .. }, SyntaxTree::Leaf) => Ok(1),
        (SyntaxTree::Leaf, SyntaxTree::Node { .. }) => Ok(-1),
        _ => Err("pairing requires degree-2 trees".into()),
    }
}

/// The Koszul pairing of two degree-2 trees.
pub fn pairing(s: &SyntaxTree, t: &SyntaxTree) -> Result<BigRational, String> {
    let sign = shape_sign(s)?;
    shape_sign(t)?;
    if s.degree() != 2 || t.degree() != 2 {
        return Err("pairing requires degree-2 trees".into());
    }
    if s == t {
        Ok(BigRational::from_integer(BigInt::from(sign)))
    } else {
        Ok(BigRational::zero())
    }
}

/// Bilinear extension of the pairing to combinations.
pub fn pairing_lincomb(a: &LinComb, b: &LinComb) -> Result<BigRational, String> {
    let mut total = BigRational::zero();
    for (t, ca) in &a.terms {
        if let Some(cb) = b.terms.get(t) {
            total += ca * cb * pairing(t, t)?;
        }
    }
    Ok(total)
}

/// Spanning set of the Koszul-dual relation space.
pub fn dual_relation_space(magma: &Magma) -> Result<Vec<LinComb>, String> {
    if !magma.is_finite() {
        return Err("the dual relation space requires a finite magma".into());
    }
    let unit = magma.unit();
    let elems = magma.elements();
    let bar = magma.non_unit_elements();
    let mut out = Vec::new();
    let mut push = |c: LinComb| {
        if !c.is_zero() {
            out.push(c);
        }
    };
    for &p0 in &elems {
        for &p2 in &elems {
            for &q1 in &elems {
                for &q2 in &elems {
                    // family 1: all ∘₁ trees with merged label δ, summed
                    for &d in &bar {
                        let mut c = LinComb::zero();
                        for &p1 in &elems {
                            for &q0 in &elems {
                                if magma.op(p1, q0) == d {
                                    c.add_int(circ((p0, p1, p2), 1, (q0, q1, q2)), 1);
                                }
                            }
                        }
                        push(c);
                    }
                    // family 2: unit merged label, ∘₁ minus the rotated ∘₂
                    let mut c = LinComb::zero();
                    for &p1 in &elems {
                        for &q0 in &elems {
                            if magma.op(p1, q0) == unit {
                                c.add_int(circ((p0, p1, p2), 1, (q0, q1, q2)), 1);
                                c.add_int(circ((p0, q1, p1), 2, (q0, q2, p2)), -1);
                            }
                        }
                    }
                    push(c);
                }
            }
        }
    }
    for &p0 in &elems {
        for &p1 in &elems {
            for &q1 in &elems {
                for &q2 in &elems {
                    // family 3: all ∘₂ trees with merged label δ, summed
                    for &d in &bar {
                        let mut c = LinComb::zero();
                        for &p2 in &elems {
                            for &q0 in &elems {
                                if magma.op(p2, q0) == d {
                                    c.add_int(circ((p0, p1, p2), 2, (q0, q1, q2)), 1);
                                }
                            }
                        }
                        push(c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Exact rank of the dual relation space; equals `2m⁵ − m⁴`.
pub fn dual_relation_space_rank(magma: &Magma) -> Result<usize, String> {
    let basis = TreeBasis3::new(magma);
    Ok(rank(
        dual_relation_space(magma)?
            .iter()
            .map(|c| to_sparse(&basis, c)),
    ))
}

/// Exact basis of the annihilator `{f : ⟨r, f⟩ = 0 for all r ∈ space}`
/// inside the `2m⁶`-dimensional degree-2 component.
pub fn annihilator(space: &[LinComb], magma: &Magma) -> Result<Vec<LinComb>, String> {
    let basis = TreeBasis3::new(magma);
    let dim = basis.dim();
    // ⟨r, f⟩ = Σ_k r_k · sign(k) · f_k, so fold the signs into the rows
    let rows: Vec<SparseRow> = space
        .iter()
        .map(|r| {
            let mut row = to_sparse(&basis, r);
            for (k, v) in row.iter_mut() {
                if basis.sign(*k) < 0 {
                    *v = -v.clone();
                }
            }
            row
        })
        .collect();
    for r in &rows {
        if r.keys().next_back().is_some_and(|&k| k >= dim) {
            return Err("combination is not a degree-2 element".into());
        }
    }
    let mut out = Vec::new();
    for v in nullspace(&rows, dim) {
        let mut c = LinComb::zero();
        for (k, coeff) in v.into_iter().enumerate() {
            c.add_term(basis.tree_at(k), coeff);
        }
        out.push(c);
    }
    Ok(out)
}

/// All dual M-cliques of arity `n`, as cliques over the product magma
/// `M²` (obtain it with [`Magma::product`]): base and edges carry diagonal
/// pairs `(a, a)`, solid diagonals carry off-diagonal pairs.
pub fn enumerate_dual_cliques(magma: &Magma, n: usize) -> Result<Vec<MClique>, String> {
    if !magma.is_finite() {
        return Err("enumeration requires a finite magma".into());
    }
    assert!(n >= 1);
    if n == 1 {
        return Ok(vec![MClique::unit()]);
    }
    let m = magma.card() as i64;
    let unit = magma.unit();
    // label encodings in the product magma
    let diag: Vec<Label> = (0..m).map(|a| a * m + a).collect();
    let off_diag: Vec<Label> = (0..m)
        .flat_map(|a| (0..m).filter(move |&b| b != a).map(move |b| a * m + b))
        .collect();
    let product_unit = unit * m + unit;
    let mut base_edges: Vec<(usize, usize)> = vec![(1, n + 1)];
    base_edges.extend((1..=n).map(|i| (i, i + 1)));
    let mut out = Vec::new();
    for support in noncrossing_diagonal_sets(n) {
        if !support.is_empty() && off_diag.is_empty() {
            continue; // no off-diagonal pairs, so no solid diagonals
        }
        let k = support.len();
        let slots = k + base_edges.len();
        let mut choice = vec![0usize; slots];
        loop {
            let mut arcs = BTreeMap::new();
            for (s, &d) in support.iter().enumerate() {
                arcs.insert(d, off_diag[choice[s]]);
            }
            for (s, &a) in base_edges.iter().enumerate() {
                let l = diag[choice[k + s]];
                if l != product_unit {
                    arcs.insert(a, l);
                }
            }
            out.push(MClique { arity: n, arcs });
            let mut pos = 0;
            loop {
                if pos == slots {
                    break;
                }
                let limit = if pos < k { off_diag.len() } else { diag.len() };
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

/// Koszul-duality dimension certificate for one magma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulCertificate {
    pub dim_r: usize,
    pub dim_r_dual: usize,
    pub sum: usize,
    pub expected: usize,
}

impl KoszulCertificate {
    pub fn passed(&self) -> bool {
        self.sum == self.expected && self.dim_r + self.dim_r_dual == self.sum
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimR": self.dim_r,
            "dimRdual": self.dim_r_dual,
            "sum": self.sum,
            "expected": self.expected,
        })
    }
}

/// Computes both relation-space ranks and checks that they sum to the full
/// degree-2 dimension `2m⁶`.
pub fn koszul_certificate(magma: &Magma) -> Result<KoszulCertificate, String> {
    let dim_r = crate::rewrite::relation_space_rank(magma)?;
    let dim_r_dual = dual_relation_space_rank(magma)?;
    let m = magma.card();
    Ok(KoszulCertificate {
        dim_r,
        dim_r_dual,
        sum: dim_r + dim_r_dual,
        expected: 2 * m.pow(6),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RankEngine;
    use crate::rewrite::relation_space;
    use num_traits::One;

    #[test]
    fn pairing_cases() {
        let x = (1i64, 0i64, 1i64);
        let y = (0i64, 1i64, 0i64);
        let s1 = circ(x, 1, y);
        let s2 = circ(x, 2, y);
        assert_eq!(pairing(&s1, &s1).unwrap(), BigRational::one());
        assert_eq!(pairing(&s2, &s2).unwrap(), -BigRational::one());
        assert!(pairing(&s1, &s2).unwrap().is_zero());
        let other = circ(y, 1, x);
        assert!(pairing(&s1, &other).unwrap().is_zero());
        // degree-3 trees are rejected
        let deep = s1.graft(1, &SyntaxTree::corolla(x));
        assert!(pairing(&deep, &deep).is_err());
    }

    #[test]
    fn dual_rank_and_sum() {
        for (l, want_dual, want_r) in [(1usize, 1usize, 1usize), (2, 48, 80)] {
            let m = Magma::builtin_n(l);
            let cert = koszul_certificate(&m).unwrap();
            assert_eq!(cert.dim_r, want_r);
            assert_eq!(cert.dim_r_dual, want_dual);
            assert_eq!(cert.sum, 2 * l.pow(6));
            assert!(cert.passed());
        }
    }

    #[test]
    fn orthogonality_exhaustive() {
        for l in 1..=2 {
            let m = Magma::builtin_n(l);
            let rs = relation_space(&m).unwrap();
            let ds = dual_relation_space(&m).unwrap();
            for r in &rs {
                for d in &ds {
                    assert!(
                        pairing_lincomb(r, d).unwrap().is_zero(),
                        "nonzero pairing for m = {l}"
                    );
                }
            }
        }
    }

    #[test]
    fn annihilator_of_relations_is_dual_space() {
        let m = Magma::builtin_n(2);
        let basis = TreeBasis3::new(&m);
        let rs = relation_space(&m).unwrap();
        let ann = annihilator(&rs, &m).unwrap();
        assert_eq!(ann.len(), 48);
        // two-sided span equality via rank arguments
        let ds = dual_relation_space(&m).unwrap();
        let mut eng = RankEngine::new();
        for c in &ann {
            eng.insert(to_sparse(&basis, c));
        }
        assert_eq!(eng.rank(), 48);
        for c in &ds {
            assert!(eng.contains(to_sparse(&basis, c)));
        }
    }

    #[test]
    fn annihilator_of_zero_space_is_everything() {
        let m = Magma::builtin_n(2);
        assert_eq!(annihilator(&[], &m).unwrap().len(), 128);
    }

    #[test]
    fn double_annihilator_recovers_relations() {
        let m = Magma::builtin_n(2);
        let basis = TreeBasis3::new(&m);
        let rs = relation_space(&m).unwrap();
        let double = annihilator(&annihilator(&rs, &m).unwrap(), &m).unwrap();
        assert_eq!(double.len(), 80);
        let mut eng = RankEngine::new();
        for c in &double {
            eng.insert(to_sparse(&basis, c));
        }
        for c in &rs {
            assert!(eng.contains(to_sparse(&basis, c)));
        }
    }

    #[test]
    fn dual_clique_counts() {
        use num_traits::ToPrimitive;
        let n2 = Magma::builtin_n(2);
        for n in 1..=4usize {
            assert_eq!(
                enumerate_dual_cliques(&n2, n).unwrap().len(),
                crate::series::dim_ncm_dual(2, n as u64).to_usize().unwrap(),
                "m=2 n={n}"
            );
        }
        assert_eq!(enumerate_dual_cliques(&Magma::builtin_n(1), 5).unwrap().len(), 1);
    }

    #[test]
    fn dual_cliques_satisfy_invariants() {
        let n2 = Magma::builtin_n(2);
        let prod = n2.product();
        let m = n2.card() as i64;
        for p in enumerate_dual_cliques(&n2, 3).unwrap() {
            assert!(p.crossing_free());
            for (&(i, j), &l) in &p.arcs {
                let (a, b) = (l / m, l % m);
                if p.is_diagonal(i, j) {
                    assert_ne!(a, b);
                } else {
                    assert_eq!(a, b);
                }
                assert_ne!(l, prod.unit());
            }
        }
    }
}
