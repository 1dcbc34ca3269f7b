use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("entry {entry} out of range for degree {degree}")]
    Range { entry: usize, degree: usize },
    #[error("entry {0} repeated in cycle notation")]
    DuplicateEntry(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point {0} is not in the point set")]
    PointOutOfRange(String),
    #[error("cannot shrink ambient size from {from} to {to}")]
    ShrinkNotAllowed { from: usize, to: usize },
    #[error("cannot project ambient size {from} up to {to}")]
    GrowNotAllowed { from: usize, to: usize },
    #[error("family mismatch: {0} vs {1}")]
    FamilyMismatch(String, String),
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("ambient size {ambient} exceeds cap {cap}")]
    CapExceeded { ambient: usize, cap: usize },
    #[error("degree of the zero element is undefined")]
    ZeroElement,
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("operation requires the Product(2) family, got {0}")]
    WrongFamily(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("invalid value: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
