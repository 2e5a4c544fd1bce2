//! String algebras as bound quivers: path combinatorics, string complexes,
//! minimal projective resolutions, and the periodicity classification, with
//! an independent linear-algebra cross-check over a prime field.

pub mod algebra;
pub mod classify;
pub mod complex;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod random;
pub mod resolution;
pub mod syzygy;
pub mod walk;

pub use algebra::StringAlgebra;
pub use error::{Error, Result};
pub use field::{Field, Fp};
pub use quiver::{ArrowId, BoundQuiver, Path, PathProduct, Quiver, ValidationReport, VertexId};
pub use walk::{Direction, GeneralizedWalk, Letter, WalkSyntax};

/// Default oracle scalar: a prime comfortably larger than any incidence
/// count that appears at desk scale.
pub type F32003 = field::Fp<32003>;
