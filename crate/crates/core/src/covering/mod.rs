//! Genus one models and the 2- and 4-covering constructions.

mod construct;
mod model;

pub use construct::{build_four_covering, four_covering_forms, resolvent_jacobian, two_covering_quadrics, Resolvent};
pub use model::{normalize_integral, BinaryQuarticForm, QuadricIntersectionModel, QuarticCurveModel};
