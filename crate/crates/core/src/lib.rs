//! Special and split idempotents in path algebras of quivers.
//!
//! The [`classify`] module decides, by exact arithmetic, whether an element
//! of a path algebra `KQ` is a left special, left split or central
//! idempotent, and whether a family of idempotents is full. The
//! [`representation`] and [`oracle`] modules check those answers against
//! finite-dimensional representations by exhaustive search.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod exec;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod representation;
pub mod ring;

pub use algebra::{AlgElem, AlgebraError, PathAlgebra};
pub use quiver::{Path, Quiver, QuiverError};
pub use ring::{RingElem, RingError, RingSpec};
