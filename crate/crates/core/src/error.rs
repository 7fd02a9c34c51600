use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("pair is not strictly interlacing: {0}")]
    NotInterlacing(String),
    #[error("root {root} of p is not simple (|p'| = {derivative:e})")]
    NonSimpleRoot { root: f64, derivative: f64 },
    #[error("Möbius matrix is degenerate (ad - bc = {det:e})")]
    DegenerateMatrix { det: f64 },
    #[error("polynomial expected to be real-rooted has a complex root {re} + {im}i")]
    ComplexRootDetected { re: f64, im: f64 },
    #[error("root iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("need at least two roots to build disks, got {0}")]
    TooFewRoots(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("|R|^2 is flat on the half-circle near x = {x}")]
    FlatMinimum { x: f64 },
    #[error("level-set raster too coarse to resolve the topology ({0})")]
    GridTooCoarse(String),
    #[error("probe value lies on the image of the boundary (distance {distance:e})")]
    BoundaryHit { distance: f64 },
    #[error("univalence check inconclusive: {0}")]
    Inconclusive(String),
    #[error("no interior collision found in the inflated disk")]
    NoInteriorCollision,
    #[error("corollary violated: {0}")]
    CorollaryViolation(String),
    #[error("continuation path lost at t = {t}")]
    PathLost { t: f64 },
    #[error("continuation point left the positive cone at t = {t}")]
    PositivityLost { t: f64 },
}
