//! Torus-equivariant combinatorics of bow varieties of type A: brane
//! diagrams, fixed points, tangent weights and the torus-invariant curves
//! between fixed points.

pub mod brane;
pub mod butterfly;
pub mod charring;
pub mod corpus;
pub mod curves;
pub mod error;
pub mod exec;
pub mod fixedpoints;
pub mod selftest;
pub mod tangent;

pub use brane::{BraneDiagram, BraneKind, Margins};
pub use charring::{KClass, Weight};
pub use error::{Error, Result};
pub use fixedpoints::{Bct, TieDiagram};
