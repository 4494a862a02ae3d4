use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(&'static str),
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("matrix is not symmetric (relative asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("mass matrix is not positive definite")]
    MassNotPositiveDefinite,
    #[error("matrix is singular or too ill-conditioned")]
    Singular,
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("empty workspace: L1 + L2 must exceed a")]
    EmptyWorkspace,
    #[error("posture x = {x} m is outside the workspace")]
    OutOfWorkspace { x: f64 },
    #[error("singular posture ({0})")]
    SingularPosture(&'static str),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(&'static str),

    #[error("bordered kinetostatic system is singular")]
    SingularBorderedSystem,

    #[error("compliance term c{index}{index} must be positive")]
    NonPositiveCompliance { index: usize },
    #[error("invalid beam parameters: {0}")]
    InvalidBeam(&'static str),
    #[error("invalid scaling factor alpha = {alpha}")]
    InvalidAlpha { alpha: f64 },

    #[error("a link needs at least 2 elements, got {0}")]
    InvalidElementCount(usize),
    #[error("inconsistent topology: {0}")]
    InconsistentTopology(String),
    #[error("assembly has no dynamic degrees of freedom")]
    NoDynamicDof,

    #[error("dataset validation failed: {0}")]
    Validation(String),
}
