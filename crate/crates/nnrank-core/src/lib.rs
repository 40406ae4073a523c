//! Exact verification kernel for a nonnegative-rank separation certificate.
//!
//! The crate is organized around a single object of study: a stochastic
//! rational 6×11 matrix `M` whose only 5-dimensional stochastic nonnegative
//! factorization has an irrational left factor `W` over Q(√2).  Everything
//! needed to check that statement mechanically lives here:
//!
//! * [`exactnum`] — arbitrary-precision rationals and the real quadratic
//!   field Q(√d), with exact sign determination.
//! * [`linalg`] — dense exact matrices, fraction-free rank, stochasticity.
//! * [`paperdata`] — the certificate constants (matrices, points, polytope)
//!   and the end-to-end identity checks.
//! * [`nestedgeom`] — exact planar convex geometry: orientation predicates,
//!   supporting polygons, threshold lemmas and infeasibility certificates.
//! * [`typeclass`] — the zero-pattern taxonomy of candidate left factors.
//! * [`boundprop`] — the exact interval-propagation engine that replays the
//!   type-4 exclusion proof.
//! * [`numnmf`] — a floating-point multiplicative-update NMF solver used as
//!   a numerical sanity check next to the exact certificate.

pub mod boundprop;
pub mod exactnum;
pub mod linalg;
pub mod nestedgeom;
pub mod numnmf;
pub mod paperdata;
pub mod typeclass;

pub use exactnum::{Quad, QuadExt, Rational, Sign};
pub use linalg::ExactMatrix;
