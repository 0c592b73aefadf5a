//! Interpolation on curves `y² + h(x)·y = f(x)` of small genus.

pub mod divisor;
pub mod ccma;
pub mod function;
pub mod local;
pub mod model;
pub mod place;
pub mod riemann_roch;

pub use ccma::{builtin_instances, ccma_build_curve, check_conditions, find_divisor, ConditionReport, CurveBuild, CurveInstance};
pub use divisor::CurveDivisor;
pub use function::FunctionElement;
pub use local::{Locus, Uniformizer};
pub use model::{CurveJson, CurveModel, CurveShape};
pub use place::{enumerate_curve_places, find_degree_place, places_over, CurvePlace};
pub use riemann_roch::riemann_roch_basis;
