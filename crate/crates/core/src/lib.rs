//! Numerical Lie calculus on finite-dimensional charts and matrix groups.
//!
//! The crate is organized around a small tower of machinery:
//!
//! * [`algebra`] — concrete associative algebras (real/complex scalars,
//!   dense square matrices) and their invertible elements;
//! * [`exact`] — the same algebras over exact rationals, used where
//!   algebraic identities must hold coefficient-by-coefficient;
//! * [`jets`] — truncated Taylor series over any of these algebras,
//!   including the inverse recursion and fractional-order bookkeeping;
//! * [`expr`] — a small expression language with symbolic derivatives
//!   and forward-mode jet evaluation, backing all smooth functions;
//! * [`motions`] — curves through the identity of a matrix group and
//!   extraction of their initial directions by extrapolation;
//! * [`fields`] — vector fields on open charts of R^d, acting as
//!   derivations, with Lie brackets, flows, and pullbacks;
//! * [`forms`] — s-linear forms, derivative operators, and the exterior
//!   derivative;
//! * [`kernels`] — smooth two-point functions with slotwise derivatives,
//!   second-order Taylor identities, and cone/inequality checks;
//! * [`harness`] — seeded property suites over all of the above with
//!   machine-readable reports.

pub mod algebra;
pub mod error;
pub mod exact;
pub mod expr;
pub mod extrapolate;
pub mod fields;
pub mod forms;
pub mod harness;
pub mod jets;
pub mod kernels;
pub mod motions;

pub use algebra::{AlgebraElement, GroupElement};
pub use error::Error;
pub use jets::{Coeff, Jet};
