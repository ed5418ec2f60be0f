//! Exact chord-diagram engine for oriented immersed curves on a closed
//! surface of genus at least two.
//!
//! Curves live on the one-vertex, one-face model of the surface
//! ([`surface_model`]).  A curve is a cyclic list of side crossings plus
//! optional interior waypoints ([`curve_diagram`]); from it we compute the
//! cobordism-class triple (holonomy, homology, Maslov residue) in
//! [`invariants`], decide unobstructedness and minimal position in
//! [`unobstruction`], run surgery, smoothing, Dehn twists and push-offs in
//! [`curve_ops`], and build Z/2 Floer complexes with area exponents in
//! [`floer`].

pub mod curve_diagram;
pub mod curve_ops;
pub mod floer;
pub mod geom;
pub mod invariants;
pub mod sample;
pub mod surface_group;
pub mod surface_model;
pub mod unobstruction;

pub use curve_diagram::{Crossing, CurveDiagram, IntersectionPoint, Move};
pub use invariants::CobordismClass;
pub use surface_group::GroupWord;
pub use surface_model::{build_surface, SurfaceModel};

/// Absolute tolerance for a single geometric primitive.
pub const GEOM_TOL: f64 = 1e-9;
/// Absolute tolerance for accumulated real-valued equalities.
pub const SUM_TOL: f64 = 1e-6;
/// Largest accepted distance of a developed angle sum from a multiple of 2 pi,
/// in units of full turns.
pub const WINDING_TOL: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("genus {0} is not supported: the model needs genus >= 2")]
    GenusTooSmall(usize),
    #[error("total area must be positive and finite, got {0}")]
    BadArea(f64),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("side-parameter collision between curves on edge {edge} at {param}")]
    ParameterCollision { edge: usize, param: String },
    #[error("move not applicable: {0}")]
    Inapplicable(String),
    #[error("turning residual {0} exceeds tolerance")]
    WindingResidual(f64),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("trivial word where a nontrivial one is required")]
    TrivialWord,
    #[error("intersection point has degree 0; surgery needs degree 1")]
    DegreeZero,
    #[error("{0}")]
    Precondition(String),
    #[error("window exhausted at radius {0}")]
    WindowExhausted(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
