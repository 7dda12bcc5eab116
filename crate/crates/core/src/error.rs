use alloc::vec::Vec;

use crate::polecontrol::PoleReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("series division by (t - z) needs z != 0")]
    ZeroShift,
    #[error("series has a zero constant term")]
    SingularAtOrigin,
    #[error("interpolation node at the origin")]
    NodeAtOrigin,
    #[error("interpolation nodes {0} and {1} coincide")]
    DuplicateNodes(usize, usize),
    #[error("no interpolation data")]
    EmptyData,
    #[error("{nodes} nodes but {values} values")]
    LengthMismatch { nodes: usize, values: usize },
    #[error("series has {have} coefficients, {need} required")]
    SeriesTooShort { have: usize, need: usize },
    #[error("prescribed zero or pole coincides with node {0}")]
    PrescribedFactorAtNode(usize),
    #[error("all denominator coefficients vanish")]
    DegenerateDenominator,
    #[error("singular value decomposition did not converge")]
    NumericalFailure,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("function value unavailable at t = {0}")]
    ValueUnavailable(f64),
    #[error("no spurious pole to remove")]
    NoPoleDetected,
    #[error("pole removal did not finish within {} iterations", history.len())]
    IterationBudgetExceeded { history: Vec<PoleReport> },
    #[error("numerator degree {m} must be below denominator degree {n}")]
    DegreeViolation { m: usize, n: usize },
    #[error("interpolant does not vanish at infinity (a0 = {0:e})")]
    NonDecaying(f64),
    #[error("Q has degree {got}, expected {expected}")]
    DegreeMismatch { got: usize, expected: usize },
}
