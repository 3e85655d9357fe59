use thiserror::Error;

/// Errors raised by constructions and analyses in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid conic: {0}")]
    InvalidConic(String),
    #[error("the center of a central conic has no polar line")]
    NoPolar,
    #[error("geometric inconsistency: {0}")]
    GeometricInconsistency(String),
    #[error("degenerate conic: {0}")]
    DegenerateConic(String),
    #[error("circle and conic do not form a 3-Poncelet pair (criterion residual {residual:e})")]
    NotPonceletPair { residual: f64 },
    #[error("vertex angle {theta} lies outside the admissible arcs {arcs:?}")]
    InadmissibleVertex { theta: f64, arcs: Vec<(f64, f64)> },
    #[error("infeasible configuration: {0}")]
    InfeasibleConfig(String),
    #[error("unsupported scenario: {0}")]
    UnsupportedScenario(String),
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("right triangle: {0}")]
    RightTriangle(String),
    #[error("polar circle is undefined for a non-obtuse triangle")]
    PolarCircleUndefined,
    #[error("homothety ratio must be nonzero")]
    ZeroRatio,
    #[error("singular iteration at step {step}")]
    SingularIteration { step: usize },
    #[error("only {found} admissible samples, at least {needed} required")]
    InsufficientSamples { found: usize, needed: usize },
    #[error("x = {x} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("section ratio is inconsistent: {0}")]
    SectionRatio(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
