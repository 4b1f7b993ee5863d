use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is not a pure bivector (off-grade magnitude {0:e})")]
    NotBivector(f64),
    #[error("versor is singular: |a ã| = {0:e}")]
    SingularVersor(f64),
    #[error("multivector is not invertible as a versor (two-sided defect {0:e})")]
    NotAVersor(f64),
    #[error("spinor is singular: rho = {0:e}")]
    SingularSpinor(f64),
    #[error("momentum is off shell: (Π+eA)² − m² = {0:e}")]
    OffShell(f64),
    #[error("boost is degenerate: m + Π₀ + eA₀ = {0:e}")]
    DegenerateBoost(f64),
    #[error("Takabayashi angle {0} is not 0 or π")]
    NonClassicalBeta(f64),
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("grid point is on the boundary or outside the stencil interior")]
    BoundaryPoint,
    #[error("event does not coincide with a grid node")]
    OffGrid,
    #[error("velocity is not unit: v² = {0}")]
    NonUnitVelocity(f64),
    #[error("density is not positive: rho = {0:e}")]
    NonPositiveDensity(f64),
    #[error("speed {0} is not subluminal")]
    SuperluminalSpeed(f64),
    #[error("coframe is not orthonormal (defect {0:e})")]
    NonOrthonormalFrame(f64),
    #[error("initial rotor is not normalized: R R̃ − 1 = {0:e}")]
    NonRotorInitial(f64),
    #[error("spin is not orthogonal to velocity: S·v = {0:e}")]
    NonOrthogonalSpin(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
