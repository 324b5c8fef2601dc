//! Exact construction and verification of localized quiver Hecke algebras
//! attached to root data, together with the graded representation theory of
//! their nilpotent finite-dimensional modules.
//!
//! The main entry points:
//! - [`root_datum::RootDatum`]: simply connected data from Cartan matrices,
//!   plus the `GL_n` datum for the type-A bridge.
//! - [`weyl::WeylGroup`] and [`weight`]: reduced words, orbits, stabilizers
//!   and the parabolic/exceptional classification of torus points.
//! - [`ring`]: the two coefficient-ring backends (symmetric algebra and group
//!   ring), their localizations, and the divided-difference operators.
//! - [`datum`]: the quadratic-coefficient families `G`, their axioms, and
//!   splitting families.
//! - [`qhecke`]: the skew-group-algebra engine, generator images, PBW normal
//!   forms and the relation verifier.
//! - [`grading`] and [`repn`]: degree rules, graded characters, weight
//!   algebras, induction and irreducible quotients.
//! - [`typea`]: embeddings of the type-A presentations at small rank.

pub mod error;
pub mod field;
pub mod poly;
pub mod linalg;
pub mod root_datum;
pub mod weyl;
pub mod weight;
pub mod ring;
pub mod localized;
pub mod datum;
pub mod skew;
pub mod qhecke;
pub mod grading;
pub mod repn;
pub mod typea;
pub mod report;

pub use error::{Error, Result};
pub use field::{FieldKind, Scalar};
pub use root_datum::RootDatum;
