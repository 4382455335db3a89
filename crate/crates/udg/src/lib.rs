//! Exact unit-distance graphs in the plane.
//!
//! Coordinates live in the real field Q(√3, √5, √7, √11), so distances,
//! incidences and symmetries are decided exactly: an edge is a pair of
//! vertices whose squared distance equals 1, not approximately 1. On top of
//! the arithmetic sit the graph constructions (hexagon assemblies up to a
//! 20425-vertex aggregate), a propagation-based colouring search, property
//! checks, and a CNF encoder for external SAT solvers.

pub mod cnf;
pub mod constructions;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod solver;

pub use constructions::{build, ConstructionId};
pub use field::{FieldElement, FieldError, Rational};
pub use geometry::{GeometryError, Isometry, Point, Rotation};
pub use graph::{GraphError, GraphStats, HexCopy, Spindle, UnitDistanceGraph};
pub use solver::{
    find_colouring, search, search_all, validate_colouring, Colouring, Constraint, SearchOutcome,
    SearchResult, SearchStats,
};
