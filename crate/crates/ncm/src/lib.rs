//! The operad of noncrossing M-cliques: exact combinatorics, presentations,
//! and certificates.
//!
//! An *M-clique* of arity `n` labels the arcs of an `(n+1)`-gon by elements
//! of a unitary magma `M`; the noncrossing ones form a nonsymmetric set
//! operad under a gluing composition.  This crate implements that operad and
//! the computational structures around it:
//!
//! - [`magma`] — unitary magmas: Cayley tables, builtins, axiom checks;
//! - [`clique`] — M-cliques, partial composition, noncrossing enumeration;
//! - [`bubbletree`] — areas, bubble trees, and the Schröder-tree
//!   realization of the operad;
//! - [`freeop`] — the free operad on M-triangles and the evaluation map;
//! - [`linalg`] — exact rational sparse rank and nullspace computations;
//! - [`rewrite`] — the quadratic relation space, the convergent rewrite
//!   system, normal forms, and confluence certification;
//! - [`koszul`] — the Koszul pairing, the dual relation space, annihilators,
//!   and dual M-cliques;
//! - [`series`] — dimension formulas, Narayana numbers, algebraic Hilbert
//!   series, and the Koszul series identity;
//! - [`constructions`] — suboperad closures and the named constructions
//!   (NCT, FF₄, BNC, Motzkin, cubic E₂);
//! - [`algebra`] — algebras over the operad: word polynomials, ω-compatible
//!   families, the clique action, and relation checking.
//!
//! Every published dimension, rank, and relation handled here is certified
//! by direct enumeration or exact rational linear algebra; floating point is
//! never used.

pub mod algebra;
pub mod bubbletree;
pub mod clique;
pub mod constructions;
pub mod freeop;
pub mod koszul;
pub mod linalg;
pub mod magma;
pub mod rewrite;
pub mod series;

pub use clique::MClique;
pub use freeop::{LinComb, SyntaxTree, Triangle};
pub use magma::{Label, Magma};
