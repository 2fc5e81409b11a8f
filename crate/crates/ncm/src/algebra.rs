//! Algebras over the clique operad: noncommutative word polynomials, the
//! ω-compatible construction, the triangle operations, the recursive clique
//! action, and sample-based relation checking.
//!
//! An *ω-compatible family* on an associative algebra `A` is a collection of
//! linear maps `ω_x : A → A` (`x ∈ M`) with `ω_{1_M} = Id` and
//! `ω_x ∘ ω_y = ω_{x⋆y}`.  Every such family makes `A` an algebra over the
//! clique operad: a triangle `(p₀, p₁, p₂)` acts by
//! `a₁ ▷ a₂ = ω_{p₀}(ω_{p₁}(a₁) ⊙ ω_{p₂}(a₂))`, and a general noncrossing
//! clique acts recursively: read the maximal path of its base area, act with
//! each sub-clique on its share of the arguments, wrap each piece in the ω
//! of the connecting arc label, multiply left to right, and wrap the product
//! in `ω` of the base label.
//!
//! Three concrete carriers ship, all on word polynomials: letterwise monoid
//! shifts `x * w = (x⋆w₁)…(x⋆w_k)` for an associative finite magma, the
//! selected-concatenation maps `ω_S` over the subset monoid `S_ℓ` (a word
//! survives `ω_S` iff it uses every letter indexed by `S`), and the
//! constant-term pair over `D₀` (`ω_0(f) = f(0)`).

use crate::bubbletree::{area_path, sub_clique};
use crate::clique::MClique;
use crate::freeop::Triangle;
use crate::magma::{Label, Magma};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// A word over an abstract alphabet of letters.
pub type Word = Vec<Label>;

/// A noncommutative polynomial: a finite formal sum of words with exact
/// rational coefficients.  Zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordPolynomial {
    pub terms: BTreeMap<Word, BigRational>,
}

impl WordPolynomial {
    pub fn zero() -> WordPolynomial {
        WordPolynomial::default()
    }

    /// The empty word with coefficient 1.
    pub fn one() -> WordPolynomial {
        WordPolynomial::monomial(Vec::new(), 1)
    }

    /// A single word with an integer coefficient.
    pub fn monomial(word: Word, coeff: i64) -> WordPolynomial {
        let mut p = WordPolynomial::zero();
        p.add_word(word, BigRational::from_integer(BigInt::from(coeff)));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · word`, dropping the term if the total cancels.
    pub fn add_word(&mut self, word: Word, coeff: BigRational) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    pub fn add(&self, other: &WordPolynomial) -> WordPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat_mul(&self, other: &WordPolynomial) -> WordPolynomial {
        let mut out = WordPolynomial::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_word(w, c1 * c2);
            }
        }
        out
    }

    /// The constant term `f(0)` (coefficient of the empty word), as a
    /// scalar polynomial.
    pub fn constant_term(&self) -> WordPolynomial {
        let mut out = WordPolynomial::zero();
        if let Some(c) = self.terms.get(&Vec::new()) {
            out.add_word(Vec::new(), c.clone());
        }
        out
    }

    /// Serializes as an array of `[letters, numerator, denominator]`.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| json!([w, c.numer().to_string(), c.denom().to_string()]))
            .collect();
        Value::Array(entries)
    }
}

/// Letterwise left shift `x * w = (x⋆w₁)…(x⋆w_k)` of a word whose letters
/// are magma elements.
pub fn shift_action(magma: &Magma, x: Label, w: &[Label]) -> Word {
    w.iter().map(|&c| magma.op(x, c)).collect()
}

/// Linear extension of the letterwise shift to polynomials.
pub fn shift_action_poly(magma: &Magma, x: Label, f: &WordPolynomial) -> WordPolynomial {
    let mut out = WordPolynomial::zero();
    for (w, c) in &f.terms {
        out.add_word(shift_action(magma, x, w), c.clone());
    }
    out
}

/// An ω-compatible family on the word-polynomial carrier: the magma, the
/// maps `ω_x`, and the letter alphabet used for sampling.
pub struct OmegaFamily<'a> {
    pub magma: &'a Magma,
    pub letters: Vec<Label>,
    omega: Box<dyn Fn(Label, &WordPolynomial) -> WordPolynomial + 'a>,
}

impl<'a> OmegaFamily<'a> {
    /// A custom family (used for negative controls in tests).
    pub fn custom(
        magma: &'a Magma,
        letters: Vec<Label>,
        omega: impl Fn(Label, &WordPolynomial) -> WordPolynomial + 'a,
    ) -> OmegaFamily<'a> {
        OmegaFamily {
            magma,
            letters,
            omega: Box::new(omega),
        }
    }

    /// The monoid-word carrier: `ω_x` shifts every letter by `x` on the
    /// left.  Requires an associative finite magma.
    pub fn monoid_words(magma: &'a Magma) -> Result<OmegaFamily<'a>, String> {
        if !magma.is_finite() {
            return Err("the monoid-word carrier requires a finite magma".into());
        }
        if !magma.is_associative() {
            return Err("the monoid-word carrier requires an associative magma".into());
        }
        Ok(OmegaFamily {
            magma,
            letters: magma.elements(),
            omega: Box::new(move |x, f| shift_action_poly(magma, x, f)),
        })
    }

    /// The selected-concatenation carrier over the subset monoid `S_ℓ`:
    /// `ω_S` keeps exactly the words that contain the letter `a_j` for
    /// every `j ∈ S`.  Letters are `1 ..= ℓ`.
    pub fn selected_concatenation(magma: &'a Magma, l: usize) -> Result<OmegaFamily<'a>, String> {
        if *magma != Magma::builtin_s(l) {
            return Err("the selected-concatenation carrier requires the magma S".into());
        }
        Ok(OmegaFamily {
            magma,
            letters: (1..=l as Label).collect(),
            omega: Box::new(move |s, f| {
                let mut out = WordPolynomial::zero();
                for (w, c) in &f.terms {
                    let keeps = (1..=l as Label)
                        .all(|j| s >> (j - 1) & 1 == 0 || w.contains(&j));
                    if keeps {
                        out.add_word(w.clone(), c.clone());
                    }
                }
                out
            }),
        })
    }

    /// The constant-term carrier over `D₀`: `ω_1 = Id`, `ω_0(f) = f(0)`.
    pub fn constant_term(magma: &'a Magma) -> Result<OmegaFamily<'a>, String> {
        if *magma != Magma::builtin_d0() {
            return Err("the constant-term carrier requires the magma D0".into());
        }
        let zero = magma.label_of("0")?;
        Ok(OmegaFamily {
            magma,
            letters: vec![1, 2],
            omega: Box::new(move |x, f| {
                if x == zero {
                    f.constant_term()
                } else {
                    f.clone()
                }
            }),
        })
    }

    /// Applies `ω_x`.
    pub fn omega(&self, x: Label, f: &WordPolynomial) -> WordPolynomial {
        (self.omega)(x, f)
    }

    /// Checks `ω_{1_M} = Id` and `ω_x ∘ ω_y = ω_{x⋆y}` on seeded random
    /// polynomials, returning the violations found.
    pub fn validate(&self, samples: usize, seed: u64) -> Vec<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = Vec::new();
        let elems = self.magma.elements();
        for _ in 0..samples {
            let f = random_polynomial(&mut rng, &self.letters);
            if self.omega(self.magma.unit(), &f) != f {
                violations.push(format!("omega_1 is not the identity on {f:?}"));
            }
            let x = elems[rng.gen_range(0..elems.len())];
            let y = elems[rng.gen_range(0..elems.len())];
            let composed = self.omega(x, &self.omega(y, &f));
            let direct = self.omega(self.magma.op(x, y), &f);
            if composed != direct {
                violations.push(format!(
                    "omega_{} . omega_{} != omega_{} on {f:?}",
                    self.magma.name(x),
                    self.magma.name(y),
                    self.magma.name(self.magma.op(x, y)),
                ));
            }
        }
        violations
    }

    /// The triangle operation `a₁ ▷ a₂ = ω_{p₀}(ω_{p₁}(a₁) ⊙ ω_{p₂}(a₂))`.
    pub fn triangle_op(
        &self,
        p: Triangle,
        a1: &WordPolynomial,
        a2: &WordPolynomial,
    ) -> WordPolynomial {
        self.omega(p.0, &self.omega(p.1, a1).concat_mul(&self.omega(p.2, a2)))
    }

    /// The action of a noncrossing clique on a tensor of arguments, by
    /// recursion through the base-area decomposition.
    pub fn clique_action(
        &self,
        p: &MClique,
        args: &[WordPolynomial],
    ) -> Result<WordPolynomial, String> {
        if args.len() != p.arity {
            return Err(format!(
                "clique of arity {} applied to {} arguments",
                p.arity,
                args.len()
            ));
        }
        if !p.crossing_free() {
            return Err("the action is defined for noncrossing cliques".into());
        }
        Ok(self.action_rec(p, args))
    }

    fn action_rec(&self, p: &MClique, args: &[WordPolynomial]) -> WordPolynomial {
        if p.arity == 1 {
            return args[0].clone();
        }
        let n = p.arity;
        let path = area_path(self.magma, p, 1, n + 1);
        let mut acc: Option<WordPolynomial> = None;
        let mut pos = 0usize;
        for w in path.windows(2) {
            let (zi, zj) = (w[0], w[1]);
            let sub = sub_clique(p, zi, zj);
            let val = self.action_rec(&sub, &args[pos..pos + sub.arity]);
            pos += sub.arity;
            let wrapped = self.omega(p.arc_label(self.magma, zi, zj), &val);
            acc = Some(match acc {
                None => wrapped,
                Some(a) => a.concat_mul(&wrapped),
            });
        }
        self.omega(p.base(self.magma), &acc.expect("arity >= 2 has path segments"))
    }
}

/// Outcome of the sample-based relation check.
#[derive(Debug, Clone)]
pub struct AlgebraReport {
    pub samples: usize,
    pub instances_checked: usize,
    pub violations: Vec<String>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples,
            "instances_checked": self.instances_checked,
            "violations": self.violations,
        })
    }
}

fn random_polynomial(rng: &mut ChaCha8Rng, letters: &[Label]) -> WordPolynomial {
    let mut out = WordPolynomial::zero();
    for _ in 0..rng.gen_range(1..=3usize) {
        let len = rng.gen_range(0..=3usize);
        let word: Word = (0..len)
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect();
        out.add_word(
            word,
            BigRational::from_integer(BigInt::from(rng.gen_range(1..=3i64))),
        );
    }
    out
}

/// Checks the three defining algebra relations on seeded random triangle
/// instances and argument triples.  For each sample a triangle pair
/// `(p, q)` is drawn; every relation family whose side condition can be met
/// is instantiated with a random completing pair `(r, r₀)` and evaluated on
/// random arguments `(a₁, a₂, a₃)`.
pub fn relations_check(family: &OmegaFamily, samples: usize, seed: u64) -> AlgebraReport {
    let magma = family.magma;
    let elems = magma.elements();
    let unit = magma.unit();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = 0usize;
    let mut violations = Vec::new();
    let rand_elem = |rng: &mut ChaCha8Rng| elems[rng.gen_range(0..elems.len())];
    for _ in 0..samples {
        let p: Triangle = (
            rand_elem(&mut rng),
            rand_elem(&mut rng),
            rand_elem(&mut rng),
        );
        let q: Triangle = (
            rand_elem(&mut rng),
            rand_elem(&mut rng),
            rand_elem(&mut rng),
        );
        let a1 = random_polynomial(&mut rng, &family.letters);
        let a2 = random_polynomial(&mut rng, &family.letters);
        let a3 = random_polynomial(&mut rng, &family.letters);
        let lhs_left = family.triangle_op(p, &family.triangle_op(q, &a1, &a2), &a3);
        let lhs_right = family.triangle_op(p, &a1, &family.triangle_op(q, &a2, &a3));
        // relation 1: p₁⋆q₀ = r₁⋆r₀ ≠ 1
        let d1 = magma.op(p.1, q.0);
        if d1 != unit {
            let cands: Vec<(Label, Label)> = elems
                .iter()
                .flat_map(|&r1| elems.iter().map(move |&r0| (r1, r0)))
                .filter(|&(r1, r0)| magma.op(r1, r0) == d1)
                .collect();
            let (r1, r0) = cands[rng.gen_range(0..cands.len())];
            let rhs = family.triangle_op(
                (p.0, r1, p.2),
                &family.triangle_op((r0, q.1, q.2), &a1, &a2),
                &a3,
            );
            instances += 1;
            if lhs_left != rhs {
                violations.push(format!(
                    "relation 1 fails for p={p:?} q={q:?} r=({r1},{r0})"
                ));
            }
        }
        // relation 2: p₁⋆q₀ = r₂⋆r₀ = 1
        if d1 == unit {
            let cands: Vec<(Label, Label)> = elems
                .iter()
                .flat_map(|&r2| elems.iter().map(move |&r0| (r2, r0)))
                .filter(|&(r2, r0)| magma.op(r2, r0) == unit)
                .collect();
            let (r2, r0) = cands[rng.gen_range(0..cands.len())];
            let rhs = family.triangle_op(
                (p.0, q.1, r2),
                &a1,
                &family.triangle_op((r0, q.2, p.2), &a2, &a3),
            );
            instances += 1;
            if lhs_left != rhs {
                violations.push(format!(
                    "relation 2 fails for p={p:?} q={q:?} r=({r2},{r0})"
                ));
            }
        }
        // relation 3: p₂⋆q₀ = r₂⋆r₀ ≠ 1
        let d3 = magma.op(p.2, q.0);
        if d3 != unit {
            let cands: Vec<(Label, Label)> = elems
                .iter()
                .flat_map(|&r2| elems.iter().map(move |&r0| (r2, r0)))
                .filter(|&(r2, r0)| magma.op(r2, r0) == d3)
                .collect();
            let (r2, r0) = cands[rng.gen_range(0..cands.len())];
            let rhs = family.triangle_op(
                (p.0, p.1, r2),
                &a1,
                &family.triangle_op((r0, q.1, q.2), &a2, &a3),
            );
            instances += 1;
            if lhs_right != rhs {
                violations.push(format!(
                    "relation 3 fails for p={p:?} q={q:?} r=({r2},{r0})"
                ));
            }
        }
    }
    AlgebraReport {
        samples,
        instances_checked: instances,
        violations,
    }
}

/// The free-algebra product on noncrossing cliques: a triangle `p` sends
/// the pair `(q, r)` to `(c(p) ∘₂ r) ∘₁ q` where `c(p)` is `p` as a clique.
pub fn free_algebra_product(
    magma: &Magma,
    p: Triangle,
    q: &MClique,
    r: &MClique,
) -> MClique {
    MClique::triangle(magma, p.0, p.1, p.2)
        .compose(magma, 2, r)
        .compose(magma, 1, q)
}
