//! Unitary magmas: the label algebras that decorate clique arcs.
//!
//! A *unitary magma* is a set `M` with a binary operation `⋆` and an element
//! `1_M` such that `1_M ⋆ x = x = x ⋆ 1_M` for all `x`.  No associativity is
//! assumed.  Finite magmas are stored as Cayley tables over an ordered element
//! list; the additive integers `Z` are supported as an operation-only infinite
//! magma (unit `0`).
//!
//! Labels are opaque `i64` values: for a finite magma they index the element
//! list (the unit is always index 0 after canonicalization is *not* forced —
//! the unit may sit anywhere in the user's order; we store its index), and for
//! `Z` they are the integers themselves.

use std::collections::BTreeSet;
use std::fmt;

/// An arc label: an index into a finite magma's element list, or an integer
/// of `Z` for the infinite additive magma.
pub type Label = i64;

/// A unitary magma, either a finite Cayley table or the additive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Magma {
    /// Finite magma given by an ordered element list, the index of the unit,
    /// and the full operation table (`table[x * n + y] = x ⋆ y`).
    Finite {
        /// Display names of the elements, in index order.
        names: Vec<String>,
        /// Index of the unit element.
        unit: usize,
        /// Row-major Cayley table of element indices.
        table: Vec<usize>,
    },
    /// The additive integers `(Z, +, 0)`.
    Z,
}

/// A single violated unitary-magma axiom, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    /// Human-readable description including the witness pair.
    pub message: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Magma {
    /// Builds a finite magma from names, a unit name, and an operation on
    /// indices, then validates the axioms.
    pub fn from_op(
        names: Vec<String>,
        unit_name: &str,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Magma, String> {
        let n = names.len();
        let unit = names
            .iter()
            .position(|s| s == unit_name)
            .ok_or_else(|| format!("unit {unit_name:?} is not among the elements"))?;
        let mut table = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = op(x, y);
            }
        }
        let m = Magma::Finite { names, unit, table };
        let report = m.check_unitary();
        if report.is_empty() {
            Ok(m)
        } else {
            Err(report
                .iter()
                .map(|v| v.message.clone())
                .collect::<Vec<_>>()
                .join("; "))
        }
    }

    /// True for finite magmas (enumeration is only possible for those).
    pub fn is_finite(&self) -> bool {
        matches!(self, Magma::Finite { .. })
    }

    /// Cardinality `m = #M` of a finite magma.
    ///
    /// # Panics
    /// Panics on the infinite magma `Z`.
    pub fn card(&self) -> usize {
        match self {
            Magma::Finite { names, .. } => names.len(),
            Magma::Z => panic!("the magma Z is infinite"),
        }
    }

    /// The unit label `1_M`.
    pub fn unit(&self) -> Label {
        match self {
            Magma::Finite { unit, .. } => *unit as Label,
            Magma::Z => 0,
        }
    }

    /// The operation `x ⋆ y`.
    pub fn op(&self, x: Label, y: Label) -> Label {
        match self {
            Magma::Finite { names, table, .. } => {
                let n = names.len();
                table[x as usize * n + y as usize] as Label
            }
            Magma::Z => x + y,
        }
    }

    /// All element labels of a finite magma, in index order.
    pub fn elements(&self) -> Vec<Label> {
        match self {
            Magma::Finite { names, .. } => (0..names.len() as Label).collect(),
            Magma::Z => panic!("the magma Z is infinite"),
        }
    }

    /// The non-unit elements `M̄ = M \ {1_M}` of a finite magma.
    pub fn non_unit_elements(&self) -> Vec<Label> {
        let u = self.unit();
        self.elements().into_iter().filter(|&x| x != u).collect()
    }

    /// Display name of a label.
    pub fn name(&self, x: Label) -> String {
        match self {
            Magma::Finite { names, .. } => names[x as usize].clone(),
            Magma::Z => x.to_string(),
        }
    }

    /// Parses a label from its display name.
    pub fn label_of(&self, name: &str) -> Result<Label, String> {
        match self {
            Magma::Finite { names, .. } => names
                .iter()
                .position(|s| s == name)
                .map(|i| i as Label)
                .ok_or_else(|| format!("unknown element {name:?}")),
            Magma::Z => name
                .parse::<i64>()
                .map_err(|e| format!("bad integer label {name:?}: {e}")),
        }
    }

    /// Checks the unitary-magma axioms exhaustively, returning every
    /// violation with a witness.  Empty report means the magma is valid.
    pub fn check_unitary(&self) -> Vec<AxiomViolation> {
        let mut out = Vec::new();
        let Magma::Finite { names, unit, table } = self else {
            return out;
        };
        let n = names.len();
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            out.push(AxiomViolation {
                message: "element names are not pairwise distinct".into(),
            });
        }
        if *unit >= n {
            out.push(AxiomViolation {
                message: format!("unit index {unit} out of range"),
            });
            return out;
        }
        for x in 0..n {
            for y in 0..n {
                let z = table[x * n + y];
                if z >= n {
                    out.push(AxiomViolation {
                        message: format!(
                            "closure violation: {} ⋆ {} is not an element",
                            names[x], names[y]
                        ),
                    });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in 0..n {
            if table[*unit * n + x] != x {
                out.push(AxiomViolation {
                    message: format!(
                        "unit violation at ({}, {}): 1 ⋆ {} = {}",
                        names[*unit],
                        names[x],
                        names[x],
                        names[table[*unit * n + x]]
                    ),
                });
            }
            if table[x * n + *unit] != x {
                out.push(AxiomViolation {
                    message: format!(
                        "unit violation at ({}, {}): {} ⋆ 1 = {}",
                        names[x],
                        names[*unit],
                        names[x],
                        names[table[x * n + *unit]]
                    ),
                });
            }
        }
        out
    }

    /// `(E, B)`-quasi-injectivity: for all `x, x' ∈ E` and `y, y' ∈ B`,
    /// `x ⋆ y = x' ⋆ y' ≠ 1_M` implies `x = x'` and `y = y'`.
    pub fn quasi_injective(&self, e_set: &[Label], b_set: &[Label]) -> bool {
        let u = self.unit();
        for &x in e_set {
            for &y in b_set {
                for &xp in e_set {
                    for &yp in b_set {
                        let l = self.op(x, y);
                        if l == self.op(xp, yp) && l != u && (x != xp || y != yp) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Right cancelability: `x ⋆ z = y ⋆ z` implies `x = y`, exhaustively.
    pub fn right_cancelable(&self) -> bool {
        let elems = self.elements();
        for &z in &elems {
            for &x in &elems {
                for &y in &elems {
                    if x != y && self.op(x, z) == self.op(y, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Associativity check (needed by the monoid-word algebra carrier).
    pub fn is_associative(&self) -> bool {
        let elems = self.elements();
        for &x in &elems {
            for &y in &elems {
                for &z in &elems {
                    if self.op(self.op(x, y), z) != self.op(x, self.op(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    // ------------------------------------------------------------------
    // Builtins
    // ------------------------------------------------------------------

    /// The cyclic additive monoid `N_ℓ = Z/ℓZ` with unit `0`.
    pub fn builtin_n(l: usize) -> Magma {
        assert!(l >= 1, "N requires parameter >= 1");
        let names = (0..l).map(|i| i.to_string()).collect();
        Magma::from_op(names, "0", |x, y| (x + y) % l).expect("N_l is unitary")
    }

    /// The multiplicative monoid `D₀ = {1, 0}` with unit `1`.
    pub fn builtin_d0() -> Magma {
        Magma::from_op(vec!["1".into(), "0".into()], "1", |x, y| x | y)
            .expect("D0 is unitary")
    }

    /// The monoid `S_ℓ` of subsets of `[ℓ]` under union, with unit `∅`.
    /// Element `i` encodes the subset with characteristic bits `i`;
    /// names are of the form `{}`, `{1}`, `{1,3}`, ...
    pub fn builtin_s(l: usize) -> Magma {
        assert!(l <= 16, "S parameter too large");
        let names: Vec<String> = (0usize..1 << l)
            .map(|mask| {
                let xs: Vec<String> = (0..l)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| (i + 1).to_string())
                    .collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        Magma::from_op(names, "{}", |x, y| x | y).expect("S_l is unitary")
    }

    /// The magma `E_ℓ = {1, e₁, …, e_ℓ}` with `eᵢ ⋆ eⱼ = 1` for all `i, j`.
    pub fn builtin_e(l: usize) -> Magma {
        let mut names = vec!["1".to_string()];
        names.extend((1..=l).map(|i| format!("e{i}")));
        Magma::from_op(names, "1", |x, y| if x == 0 { y } else if y == 0 { x } else { 0 })
            .expect("E_l is unitary")
    }

    /// The magma `{1, a, b}` with `a ⋆ a = a`, `b ⋆ b = b`, and
    /// `a ⋆ b = b ⋆ a = 1`.  It is commutative but not associative.
    pub fn builtin_bnc() -> Magma {
        Magma::from_op(
            vec!["1".into(), "a".into(), "b".into()],
            "1",
            |x, y| {
                if x == 0 {
                    y
                } else if y == 0 {
                    x
                } else if x == y {
                    x
                } else {
                    0
                }
            },
        )
        .expect("M_BNC is unitary")
    }

    /// The direct product `M × M`: the label algebra of dual cliques.
    /// Pair `(a, b)` is encoded as index `a·m + b`; names are `(a,b)`.
    pub fn product(&self) -> Magma {
        let m = self.card();
        let names: Vec<String> = (0..m * m)
            .map(|i| format!("({},{})", self.name((i / m) as Label), self.name((i % m) as Label)))
            .collect();
        let unit = self.unit() as usize;
        let unit_name = names[unit * m + unit].clone();
        Magma::from_op(names, &unit_name, |x, y| {
            let (a, b) = (x / m, x % m);
            let (c, d) = (y / m, y % m);
            let e = self.op(a as Label, c as Label) as usize;
            let f = self.op(b as Label, d as Label) as usize;
            e * m + f
        })
        .expect("product magma is unitary")
    }

    /// Parses a magma spec: a builtin name (`N:4`, `D0`, `S:3`, `E:2`,
    /// `BNC`, `Z`) or a path to a Cayley-table file.
    pub fn parse_spec(spec: &str) -> Result<Magma, String> {
        let (head, param) = match spec.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (spec, None),
        };
        let param_val = |default: Option<usize>| -> Result<usize, String> {
            match param {
                Some(p) => p
                    .parse::<usize>()
                    .map_err(|e| format!("bad parameter {p:?}: {e}")),
                None => default.ok_or_else(|| format!("{head} requires a parameter, e.g. {head}:2")),
            }
        };
        match head {
            "N" => Ok(Magma::builtin_n(param_val(None)?)),
            "D0" => Ok(Magma::builtin_d0()),
            "S" => Ok(Magma::builtin_s(param_val(None)?)),
            "E" => Ok(Magma::builtin_e(param_val(None)?)),
            "BNC" => Ok(Magma::builtin_bnc()),
            "Z" => Ok(Magma::Z),
            _ => {
                let text = std::fs::read_to_string(spec)
                    .map_err(|e| format!("unknown builtin and unreadable file {spec:?}: {e}"))?;
                Magma::parse_cayley_table(&text)
            }
        }
    }

    /// Parses the self-describing Cayley-table text format:
    ///
    /// ```text
    /// elements: 1 a b
    /// unit: 1
    /// 1 a b
    /// a a 1
    /// b 1 b
    /// ```
    ///
    /// Row `x` / column `y` of the grid holds `x ⋆ y`, with rows and columns
    /// in element-list order.  Blank lines and `#` comments are ignored.
    pub fn parse_cayley_table(text: &str) -> Result<Magma, String> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let elems_line = lines.next().ok_or("missing elements line")?;
        let names: Vec<String> = elems_line
            .strip_prefix("elements:")
            .ok_or("first line must start with 'elements:'")?
            .split_whitespace()
            .map(String::from)
            .collect();
        if names.is_empty() {
            return Err("empty element list".into());
        }
        let unit_line = lines.next().ok_or("missing unit line")?;
        let unit_name = unit_line
            .strip_prefix("unit:")
            .ok_or("second line must start with 'unit:'")?
            .trim()
            .to_string();
        let n = names.len();
        let mut grid = vec![0usize; n * n];
        for x in 0..n {
            let row = lines
                .next()
                .ok_or_else(|| format!("missing table row {}", x + 1))?;
            let cells: Vec<&str> = row.split_whitespace().collect();
            if cells.len() != n {
                return Err(format!(
                    "table row {} has {} entries, expected {}",
                    x + 1,
                    cells.len(),
                    n
                ));
            }
            for (y, cell) in cells.iter().enumerate() {
                let idx = names
                    .iter()
                    .position(|s| s == cell)
                    .ok_or_else(|| format!("table entry {cell:?} is not an element"))?;
                grid[x * n + y] = idx;
            }
        }
        Magma::from_op(names, &unit_name, |x, y| grid[x * n + y])
    }

    /// Renders the magma in the Cayley-table text format accepted by
    /// [`Magma::parse_cayley_table`].
    pub fn to_cayley_table(&self) -> String {
        let Magma::Finite { names, unit, table } = self else {
            return "Z".into();
        };
        let n = names.len();
        let mut out = format!("elements: {}\nunit: {}\n", names.join(" "), names[*unit]);
        for x in 0..n {
            let row: Vec<&str> = (0..n).map(|y| names[table[x * n + y]].as_str()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_unitary() {
        for m in [
            Magma::builtin_n(1),
            Magma::builtin_n(2),
            Magma::builtin_n(4),
            Magma::builtin_d0(),
            Magma::builtin_s(3),
            Magma::builtin_e(2),
            Magma::builtin_bnc(),
        ] {
            assert!(m.check_unitary().is_empty(), "{m:?}");
        }
    }

    #[test]
    fn unit_violation_is_reported() {
        // table over {1, a} with a⋆1 = a but 1⋆a = 1: not unitary
        let m = Magma::Finite {
            names: vec!["1".into(), "a".into()],
            unit: 0,
            table: vec![0, 0, 1, 1],
        };
        let report = m.check_unitary();
        assert!(!report.is_empty());
        assert!(report[0].message.contains("unit violation"));
    }

    #[test]
    fn bnc_table() {
        let m = Magma::builtin_bnc();
        let a = m.label_of("a").unwrap();
        let b = m.label_of("b").unwrap();
        assert_eq!(m.op(a, a), a);
        assert_eq!(m.op(b, b), b);
        assert_eq!(m.op(a, b), m.unit());
        assert_eq!(m.op(b, a), m.unit());
        // commutative but not associative: (b⋆a)⋆a = a while b⋆(a⋆a) = 1
        assert_eq!(m.op(m.op(b, a), a), a);
        assert_eq!(m.op(b, m.op(a, a)), m.unit());
        assert!(!m.is_associative());
    }

    #[test]
    fn quasi_injectivity_examples() {
        let d0 = Magma::builtin_d0();
        let zero = d0.label_of("0").unwrap();
        let one = d0.unit();
        assert!(d0.quasi_injective(&[one, zero], &[one]));
        let n2 = Magma::builtin_n(2);
        assert!(!n2.quasi_injective(&[0, 1], &[0, 1]));
        assert!(n2.quasi_injective(&[], &[0, 1]));
    }

    #[test]
    fn cancelability_examples() {
        assert!(Magma::builtin_n(4).right_cancelable());
        assert!(!Magma::builtin_d0().right_cancelable());
        assert!(!Magma::builtin_e(2).right_cancelable());
    }

    #[test]
    fn cayley_round_trip() {
        let m = Magma::builtin_bnc();
        let text = m.to_cayley_table();
        let back = Magma::parse_cayley_table(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(Magma::parse_spec("N:4").unwrap().card(), 4);
        assert_eq!(Magma::parse_spec("S:3").unwrap().card(), 8);
        assert_eq!(Magma::parse_spec("E:2").unwrap().card(), 3);
        assert_eq!(Magma::parse_spec("BNC").unwrap().card(), 3);
        assert!(!Magma::parse_spec("Z").unwrap().is_finite());
        assert!(Magma::parse_spec("XYZ").is_err());
    }

    #[test]
    fn product_magma() {
        let n2 = Magma::builtin_n(2);
        let p = n2.product();
        assert_eq!(p.card(), 4);
        assert!(p.check_unitary().is_empty());
        // (1,0) ⋆ (1,1) = (0,1)
        assert_eq!(p.op(2, 3), 1);
    }

    #[test]
    fn e2_table() {
        let e2 = Magma::builtin_e(2);
        let e1 = e2.label_of("e1").unwrap();
        let e2l = e2.label_of("e2").unwrap();
        for &x in &[e1, e2l] {
            for &y in &[e1, e2l] {
                assert_eq!(e2.op(x, y), e2.unit());
            }
        }
    }
}
