use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground size {0} is outside the supported range 1..=30")]
    GroundSize(u32),

    #[error("ground size mismatch: {0} vs {1}")]
    GroundMismatch(u8, u8),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: element {element} is out of range 1..={n}")]
    ElementOutOfRange { line: usize, element: u64, n: u8 },

    #[error("line {line}: duplicate set {set}")]
    DuplicateSet { line: usize, set: String },

    #[error("mask {mask:#x} has bits outside a ground set of size {n}")]
    MaskOutOfRange { mask: u32, n: u8 },

    #[error("{op} supports ground sizes up to {cap}, got {n}")]
    GroundTooLarge { op: &'static str, cap: u8, n: u8 },

    #[error("family has {size} members, enumeration limit is {cap}")]
    FamilyTooLarge { size: usize, cap: usize },

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
