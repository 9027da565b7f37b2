use thiserror::Error;

use crate::moves::Move;
use crate::surfaces::SurfaceKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scalar domain mismatch: expected {expected}, found {found}")]
    DomainMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("move {mv} is not defined on a {kind} surface")]
    MoveSurfaceMismatch { mv: Move, kind: SurfaceKind },

    #[error("move word tagged for a {word} surface applied to a {surface} surface")]
    WordSurfaceMismatch { word: SurfaceKind, surface: SurfaceKind },

    #[error("non-finite coordinate in approximate point")]
    NonFinite,

    #[error("descent configuration {mode} is incompatible with the {domain} scalar domain")]
    ConfigMismatch { mode: &'static str, domain: &'static str },

    #[error("expected real coefficients, found a nonzero imaginary part")]
    NotReal,

    #[error("slice height |z0| = {0} must be strictly below 2")]
    SliceOutOfRange(f64),

    #[error("boundary product C1*C2*C3*C4 is not the identity")]
    ProductRelation,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
