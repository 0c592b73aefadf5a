//! Closed-form complexity bounds, reference tables and their regeneration.

pub mod asymptotic;
pub mod finite;
pub mod tables;
pub mod value;

pub use asymptotic::{AsymptoticParams, RankLength, SymClause, SymRecipe};
pub use finite::{
    curve_criteria, epsilon, lsw_bound, lsw_f, shokrollahi_range, uniform_constant, winograd, BoundResult,
    CurveCounts, ShokrollahiRange, Winograd,
};
pub use tables::{table, to_csv, to_json, TableRow, TABLE_NAMES};
pub use value::{BoundValue, Rational};
