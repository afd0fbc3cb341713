use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integrand is not finite at node {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error("sphere radius must be non-negative, got {0}")]
    InvalidRadius(f64),

    #[error("finite-difference stencil [{lo}, {hi}] leaves the domain [{domain_lo}, {domain_hi}]")]
    StencilOutOfDomain {
        lo: f64,
        hi: f64,
        domain_lo: f64,
        domain_hi: f64,
    },

    #[error("point lies on the axis of y; the sphere direction is undefined")]
    AxisDegenerate,

    #[error("imaginary part y is zero; oblate coordinates are undefined")]
    YZero,

    #[error("a sphere direction is required off the axis")]
    MissingDirection,

    #[error("point is singular: {0}")]
    SingularPoint(&'static str),

    #[error("point lies on the branch disk; an approach side is required")]
    AmbiguousBranch,

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("test field is C^{have} but C^{need} is required")]
    InsufficientSmoothness { need: u32, have: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point lies on the domain boundary")]
    OnBoundary,

    #[error("point is not regular with respect to the domain boundary")]
    NotRegular,

    #[error("descent window {window} does not cover the source support {needed}")]
    WindowTooSmall { window: f64, needed: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
