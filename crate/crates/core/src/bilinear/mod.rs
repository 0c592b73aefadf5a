//! Bilinear algorithms: data model, verification, composition and search.

pub mod algebra;
pub mod algorithm;
pub mod compose;
pub mod cost_table;
pub mod formulas;
pub mod json;
pub mod search;

pub use algebra::{AlgebraKind, TargetAlgebra};
pub use algorithm::{schoolbook, BilinearAlgorithm};
pub use compose::{canonicalize, compose_tower, compose_truncated};
pub use cost_table::{CostModel, CostTable};
pub use search::{brute_force_min_rank, SearchOutcome};
