//! Singular value functions on desk-scale operator algebra models.
//!
//! The singular value sequence of a matrix generalizes to elements of
//! a C*-algebra as a function over the ordered K0 group of the
//! algebra:
//!
//! ```text
//! s_g(a) = inf { ||a - a p|| : p a projection with [p] <= g }
//! ```
//!
//! the distance from `a` to the elements supported on a projection of
//! class at most `g`. On a single matrix block this recovers the
//! classical singular values; on richer algebras it becomes a
//! decreasing, right-continuous function of the class `g`. This crate
//! computes, verifies, and realizes such functions on three concrete
//! model families, keeping every K-theoretic quantity in exact
//! rational arithmetic:
//!
//! * finite direct sums of complex matrix algebras, whose classes are
//!   integer vectors ordered componentwise ([`algebra`], [`svf`]);
//! * the dyadic tower of matrix algebras of size 2^e under unital
//!   embeddings, whose classes are dyadic rationals ([`realize`]);
//! * exact ordered groups on their own — dyadic, rational, and a
//!   lexicographic pair group that witnesses how the function can
//!   fail to be lower semicontinuous ([`k0`]).
//!
//! # Modules
//!
//! * [`linalg`] — dense complex matrices; Jacobi eigendecomposition
//!   and one-sided Jacobi SVD, scalar calculus on Hermitian matrices.
//! * [`algebra`] — multi-matrix algebras, their elements, spectral
//!   decompositions of positive elements, seeded random generators.
//! * [`k0`] — the four exact ordered class groups, parsing/rendering,
//!   order and arithmetic, dimension range, infinitesimals.
//! * [`svf`] — the singular value function: closed form with a
//!   built-in cross-check against the finite-spectrum formula, full
//!   tables, a sampling upper bound, the projection order indicator,
//!   norm subordination, and a fourteen-check randomized property
//!   battery.
//! * [`stepfn`] — decreasing right-continuous step functions and
//!   targets, sup distance, nested dyadic partition refinement with a
//!   geometric error envelope.
//! * [`realize`] — elements of the dyadic tower, their exact singular
//!   value functions, realization of a target function as the limit
//!   of a Cauchy sequence in the tower, right-continuity probes, and
//!   the lexicographic discontinuity counterexample.
//! * [`doc`] — the JSON document format shared by the library and the
//!   command line tool.
//! * [`cli`] — the command implementations behind the `svfn` binary
//!   (`eval`, `battery`, `realize`, `counterexample`).
//! * [`tol`] — the numerical tolerances, each with its rationale.
//!
//! # Examples
//!
//! Each major capability has a runnable example under `examples/`:
//!
//! * `classical_singular_values` — rank classes recover the singular
//!   value ladder of a single matrix.
//! * `svf_table` — the full table of a two-block element.
//! * `projection_indicator` — projections produce an exact 0/1 order
//!   indicator.
//! * `ordered_k0_groups` — exact order arithmetic in all four groups.
//! * `property_battery` — the randomized law battery.
//! * `step_approximation` — geometric-rate approximation by step
//!   functions over nested dyadic partitions.
//! * `realize_tower` — realizing a target function in the dyadic
//!   tower, with dense matrix cross-checks.
//! * `lex_counterexample` — failure of lower semicontinuity over the
//!   lexicographic pair group.
//! * `subordination` — near-containment of projections forces class
//!   domination.

pub mod algebra;
pub mod cli;
pub mod doc;
pub mod k0;
pub mod linalg;
pub mod realize;
pub mod stepfn;
pub mod svf;
pub mod tol;
