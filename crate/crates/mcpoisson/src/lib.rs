//! Exact-arithmetic Maurer-Cartan-Poisson (MCP) structures on
//! finite-dimensional models.
//!
//! An MCP structure is a triple `(L, B, (., .))` consisting of a
//! differential graded Lie algebra `L`, a graded commutative algebra `B`,
//! and nondegenerate pairings `L^i x B^{i+1} -> k` such that for every
//! Maurer-Cartan element `X` of `L`:
//!
//! 1. `d_X X = 0`, so the Maurer-Cartan set is a cone;
//! 2. the pairing adjoint `delta_X` of `d_X` makes `(B, delta_X, /\)` a
//!    Batalin-Vilkovisky algebra;
//! 3. the map `rho_X : B^1 -> L^0` defined by `(X, a /\ b) = (rho_X a, b)`
//!    intertwines the derived bracket on `B` with the bracket on `L^0` up
//!    to a constant `k_X`.
//!
//! Such a structure induces a Poisson bracket on the Maurer-Cartan cone,
//! `{f, g}(X) = (X, delta_X Df /\ delta_X Dg)`, together with hamiltonian
//! gauge flows, cotangent and isotropy Lie algebras at each Maurer-Cartan
//! point, and (for the symplectic family) the `d d^Lambda` cohomology
//! invariants that detect hard Lefschetz.
//!
//! Everything here is computed over arbitrary-precision rationals with
//! zero tolerance: every axiom, identity and invariant is established by
//! direct evaluation, not by floating-point approximation.
//!
//! Module map:
//!
//! * [`ratlin`]: dense exact linear algebra (RREF, kernels, quotients);
//! * [`exterior`]: exterior algebras, wedge/interior products, pairings;
//! * [`poly`]: sparse multivariate rational polynomials;
//! * [`dgla`]: graded Lie algebras with differential, axiom checks,
//!   Maurer-Cartan residuals and gauge vectors;
//! * [`bv`]: graded commutative algebras, BV operators, derived brackets,
//!   the seven-term second-order identity;
//! * [`gerstenhaber`]: multilinear cochains on a commutative algebra,
//!   Gerstenhaber brackets, skew multiderivations;
//! * [`mcp`]: the MCP structure proper with its verification suite,
//!   Poisson evaluation, flows and the associated Lie algebras;
//! * [`lie`]: Lie algebra models, Chevalley-Eilenberg complexes, central
//!   extension algebras;
//! * [`frobenius`]: commutative Frobenius algebras and the Poisson cone
//!   of skew biderivations;
//! * [`symplectic`]: constant-volume multivector models, `d^Lambda`
//!   operators, `d d^Lambda` cohomology and hard Lefschetz ranks;
//! * [`card`], [`catalog`]: the JSON interchange format for models and
//!   the built-in model collection;
//! * [`report`]: the verification report runner used by the `mcp` binary.

pub mod bv;
pub mod card;
pub mod catalog;
pub mod dgla;
pub mod exterior;
pub mod frobenius;
pub mod gerstenhaber;
pub mod lie;
pub mod mcp;
pub mod poly;
pub mod ratlin;
pub mod report;
pub mod symplectic;

pub use ratlin::Q;
