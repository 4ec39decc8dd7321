//! Combinatorial symmetries of functions on surfaces.
//!
//! The library computes the symmetry group of a function on a compact
//! surface from its (enhanced) Kronrod-Reeb graph, expresses it as a
//! direct-product / wreath-product formula over finite cyclic groups, and
//! verifies the classification constructively against brute-force oracles:
//!
//! - [`groups`]: exact finite permutation groups, wreath products,
//!   solvability, structure recognition.
//! - [`rexpr`]: the expression language `Z3 x (Z2 wr Z4)` with parsing,
//!   normal forms, order computation, evaluation to permutation groups,
//!   and the unique-roots decomposability analysis.
//! - [`treeact`]: finite trees, group actions on them, stabilizers, the
//!   branch-restriction homomorphism, and decomposability predicates.
//! - [`decompose`]: tree actions to expressions and back, plus the
//!   automorphism-group decomposition of bare trees over symmetric atoms.
//! - [`reeb`]: Kronrod-Reeb graphs of scalar fields on triangulated
//!   surfaces, atoms, and Eulerian boundary words.
//! - [`symmetry`]: height-labeled plane trees (KR models), the symmetry
//!   group assembler, the brute-force oracle, and surface realizations.
//! - [`fixtures`]: procedurally generated meshes and fields used by the
//!   examples and test suites.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cyclic;
pub mod decompose;
pub mod fixtures;
pub mod groups;
pub mod reeb;
pub mod rexpr;
pub mod symmetry;
pub mod treeact;

pub use groups::{PermGroup, Permutation};
pub use rexpr::GroupExpr;
