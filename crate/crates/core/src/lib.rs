//! Supercharacter combinatorics of the lower unitriangular group `U_n(q)`.

pub mod action;
pub mod census;
pub mod cli;
pub mod error;
pub mod field;
pub mod minimal;
pub mod oracle;
pub mod orbit;
pub mod roots;
pub mod verify;

pub use action::{GroupElement, MatrixDoc, NilMatrix, ScaledIdempotent, Side, UnitriGroup};
pub use census::CountingPolynomial;
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use minimal::{LinearCharSpec, MinimalityReport, SideSets};
pub use orbit::{Orbit, VergeData};
pub use roots::{MainConditionSet, PatternSet, RootPos};
