//! Exact-arithmetic workbench for partial exponential fields.
//!
//! * [`poly`]: sparse polynomials over Q and Gröbner bases.
//! * [`efield`]: presentations, predimension, strong embeddings, amalgams,
//!   the forge and automorphism counts.
//! * [`schanuel`]: Schanuel screens for exponential-polynomial systems.
//! * [`zform`]: symplectic modules over `Z/l^k`.
//! * [`pi1lab`]: a torsion-level model of π₁-like functors on tori.

// Row operations read one row of a matrix while writing another.
#![allow(clippy::needless_range_loop)]

pub mod efield;
pub mod linalg;
pub mod pi1lab;
pub mod poly;
pub mod schanuel;
pub mod zform;

pub use efield::{EFieldError, EFieldPresentation, SubsetBudget};
pub use poly::{Poly, PolyError, Rational};
