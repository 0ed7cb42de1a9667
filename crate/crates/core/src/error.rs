use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid parameters violate `M >= 33`, `M` odd, `L > 0` or `n in {2, 3}`.
    InvalidGrid(&'static str),
    /// A bump's support ball leaves the grid box.
    BallOutsideGrid,
    /// A sample outside the declared support radius is nonzero, or a sample is not finite.
    InvalidSamples(&'static str),
    UnsupportedDimension(usize),
    /// Array lengths or dimensions of two operands do not agree.
    ShapeMismatch(&'static str),
    InvalidDirections(&'static str),
    DirectionsNotAntipodal,
    /// The sinogram is not even; carries the measured defect.
    NotEven(f64),
    ZeroFunction,
    ZeroInput,
    UnsupportedPair { from: usize, to: usize },
    DegenerateCalibration,
    /// A documented precondition of the operation does not hold.
    Precondition(&'static str),
    GroupTooLarge(u128),
    DegreeTooLarge { degree: usize, max: usize },
    IncompatibleFamilies,
    NotInvariant,
    NoSolutionAtDegree(usize),
    ObstructionHit,
    Parse(alloc::string::String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            Error::BallOutsideGrid => write!(f, "support ball leaves the grid box"),
            Error::InvalidSamples(msg) => write!(f, "invalid samples: {msg}"),
            Error::UnsupportedDimension(n) => write!(f, "unsupported dimension {n}"),
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::InvalidDirections(msg) => write!(f, "invalid direction set: {msg}"),
            Error::DirectionsNotAntipodal => {
                write!(f, "direction set is not closed under antipodal map")
            }
            Error::NotEven(d) => write!(f, "sinogram is not even (defect {d:e})"),
            Error::ZeroFunction => write!(f, "function has zero L2 norm"),
            Error::ZeroInput => write!(f, "input is identically zero"),
            Error::UnsupportedPair { from, to } => {
                write!(f, "unsupported projection pair R^{from} -> R^{to}")
            }
            Error::DegenerateCalibration => write!(f, "calibration coefficient vanishes"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::GroupTooLarge(order) => write!(f, "group order {order} exceeds 10^6"),
            Error::DegreeTooLarge { degree, max } => {
                write!(f, "degree {degree} exceeds the cap {max}")
            }
            Error::IncompatibleFamilies => write!(f, "root system families are not compatible"),
            Error::NotInvariant => write!(f, "polynomial is not invariant under the group"),
            Error::NoSolutionAtDegree(d) => {
                write!(f, "no decomposition found up to degree {d}")
            }
            Error::ObstructionHit => {
                write!(f, "target is outside the image of the restriction map")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
