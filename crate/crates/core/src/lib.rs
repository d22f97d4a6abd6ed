//! An exact computer-algebra kernel for the Weyl algebra together with a
//! numerical analytic-continuation engine for holonomic functions.
//!
//! Functions are represented by the linear differential equations they
//! satisfy: a `DIdeal` of annihilating operators plus finitely many initial
//! conditions (`HolonomicRep`). On top of that sit closure operations
//! (sum, product, derivative, algebraic-to-ODE), Pfaffian systems with the
//! holonomic gradient method/descent, and a semi-algebraic area pipeline
//! driven by high-precision series transport between local bases.

pub mod bigfloat;
pub mod closure;
pub mod config;
pub mod dideal;
pub mod error;
pub mod exact;
pub mod hgm;
pub mod integrals;
pub mod linalg;
pub mod parse;
pub mod transport;
pub mod weyl;

pub use error::{Error, Result};
