//! Independent brute-force backend: exact cyclotomic linear algebra on orbit modules and
//! explicit pattern-group computations.

pub mod checks;
pub mod cyc;
pub mod pattern;
pub mod rank;
pub mod vector;

pub use checks::*;
pub use cyc::CycNumber;
pub use pattern::{PatternGroup, PatternGroupStats, DEFAULT_GROUP_BUDGET};
pub use rank::{cyclotomic_rank, integer_rank};
pub use vector::{rank, scaled_f, single, FormalSum, OrbitVector};
