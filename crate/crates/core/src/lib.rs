//! Exact-arithmetic computer algebra for BiHom-associative trialgebras.
//!
//! A BiHom-associative trialgebra is a vector space with three bilinear
//! products (left `-|`, right `|-`, middle `_|_`) and two commuting linear
//! structure maps `alpha`, `beta` satisfying eleven twisted associativity
//! axioms. This crate represents such algebras by rational structure
//! constants and mechanizes:
//!
//! - axiom / multiplicativity checking ([`algebra`]),
//! - BiHom-modules, their axioms, and semidirect products ([`bimodule`]),
//! - 2-cocycles, central extensions, and second cohomology ([`coho2`]),
//! - the tree-indexed Hochschild complex and its coboundary ([`hochschild`]),
//! - truncated one-parameter formal deformations ([`deformation`]),
//! - generalized alpha-beta-derivation solving ([`derivation`]).
//!
//! Everything is computed over the rationals with no floating point and no
//! tolerances; subspaces are canonicalized by reduced row echelon form so
//! equality of spaces is equality of bases.

pub mod algebra;
pub mod bimodule;
pub mod coho2;
pub mod deformation;
pub mod derivation;
pub mod hochschild;
pub mod json;
pub mod linalg;
pub mod report;
pub mod trees;

pub use algebra::{Trialgebra, AXIOMS};
pub use bimodule::TriBimodule;
pub use coho2::{CentralExtension, CocycleTriple};
pub use deformation::{FormalAutomorphism, TruncatedDeformation};
pub use derivation::{DerivationTriple, SolutionFamily};
pub use hochschild::{PlainCochain, TreeCochain};
pub use linalg::{Matrix, Scalar, Subspace};
pub use report::{Violation, ViolationReport};
pub use trees::{OpLabel, PlanarTree};
