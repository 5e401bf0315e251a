//! Exact-arithmetic toolkit for the degree growth of birational maps of
//! projective space.
//!
//! The maps studied here have the form `f = L∘J` on **P**^d, where `L` is an
//! invertible linear map and `J` is the coordinatewise Cremona involution
//! `[x_0 : … : x_d] ↦ [x_0^{-1} : … : x_d^{-1}]`.  Such a map blows the
//! coordinate hyperplanes `Σ_j = {x_j = 0}` down to points, and the orbits of
//! those points control how the degrees `deg(f^n)` grow.  Everything in this
//! crate is computed over exact rationals; there is no floating point
//! anywhere on a result path.
//!
//! The pipeline, bottom to top:
//!
//! - [`exactmath`] — big-rational scalars, dense univariate polynomials,
//!   matrices, characteristic polynomials (fraction-free), Sturm-sequence
//!   real-root isolation, and linear-recurrence checks.
//! - [`projgeom`] — canonical integer coordinates for points of **P**^d and
//!   the special loci (`e_j`, `σ_j`, `η_j(c)`, diagonals).
//! - [`birmap`] — evaluation of `J` and `f = L∘J`, orbit computation with
//!   exact singularity detection, and extraction of the orbit-list structure
//!   `(ℒᶜ, ℒᵒ)`.
//! - [`cohomology`] — the pullback matrix `f*` on the blow-up basis, degree
//!   sequences `d_n = (Mⁿ)₁₁`, and the dynamical degree δ.
//! - [`listformula`] — the closed-form characteristic polynomial attached to
//!   an orbit-list structure, and the comparison/limit transforms on
//!   structures.
//! - [`permchain`] — permutation maps `L_p∘J`, analytic singular-orbit
//!   detection, admissible singular chains with heights, and the pullback
//!   matrix for maps with orbit collisions.
//! - [`oracle`] — an independent brute-force degree sequence computed by
//!   pushing a generic parametrized line through the map symbolically.
//!
//! The [`gallery`] module holds ready-made example maps from the dynamics
//! literature, and [`io`] has the JSON schemas used by the CLI.
//!
//! With the default `parallel` feature the batch-style inner loops (orbit
//! scans, coefficient convolutions, fraction-free elimination) run on rayon;
//! build with `--no-default-features` for a fully sequential library.

pub mod birmap;
pub mod cohomology;
pub mod error;
pub mod exactmath;
pub mod gallery;
pub mod io;
pub mod listformula;
pub mod oracle;
pub mod parallel;
pub mod permchain;
pub mod projgeom;

pub use error::{Error, Result};
pub use exactmath::{Rat, RatMatrix, RootInterval, UniPoly};
pub use projgeom::ProjPoint;
