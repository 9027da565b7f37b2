//! Markoff-style descent on the relative `SL2` character varieties of the
//! one-holed torus and the four-holed sphere.
//!
//! The crate is organized bottom-up:
//!
//! - [`surfaces`]: the two cubic models and scalar domains,
//! - [`moves`]: Vieta involutions, symmetries and Dehn twists as point maps,
//! - [`trace_algebra`]: `SL2` matrices backing every polynomial formula,
//! - [`descent`]: reduction algorithms with replayable certificates,
//! - [`orbits`]: integer-point enumeration, orbit search and class numbers.

pub mod descent;
pub mod error;
pub mod moves;
pub mod orbits;
pub mod surfaces;
pub mod trace_algebra;

pub use descent::{
    ellipse_bound_04, markoff_min_bound, reduce_compact, reduce_compact_with_cap, reduce_min_complex_04,
    reduce_min_complex_11, AConfig, AMode, DescentResult, DescentStatus, TerminalCondition, CUBIC04_CONSTANT,
    DEFAULT_STEP_CAP,
};
pub use error::{Error, Result};
pub use moves::{
    apply, apply_word, dehn_twist_04, dehn_twist_11, normalize_11, AxisPair, Curve11, Direction, GeneratorSet, Index04,
    Move, MoveWord, Perm,
};
pub use orbits::{
    class_number, enumerate_points, equivalent, is_exceptional, orbit_bfs, parabolic_lines_11, Caps, Equivalence,
    Exceptional, OrbitBfs, OrbitReport, ParabolicLine,
};
pub use surfaces::{
    boundary_trace_11, linf_height, make_cubic04, residual, AnyPoint, AnySurface, Axis, Coord, Cubic04, Markoff11,
    Point3, Scalar, Surface, SurfaceKind,
};
pub use trace_algebra::{Mat2, RepPair, RepQuad};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
