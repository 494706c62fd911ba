//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("subset text is empty")]
    EmptySubsetText,
    #[error("'{0}' is not a digit")]
    NotADigit(char),
    #[error("digit {digit} out of range 1..={k}")]
    DigitOutOfRange { digit: u32, k: usize },
    #[error("digit {0} repeated")]
    RepeatedDigit(u32),
    #[error("ground size {0} exceeds the supported maximum 20")]
    GroundSizeOutOfRange(usize),
    #[error("{what} supports k in {range}, got k={k}")]
    UnsupportedGroundSize {
        what: &'static str,
        range: &'static str,
        k: usize,
    },
    #[error("subset {mask} is not a size-two-or-larger subset of [{k}]")]
    NotInDomain { mask: String, k: usize },
    #[error("malformed relation '{0}': expected A~B or A-B")]
    MalformedRelation(String),
    #[error("{0:?} is not a permutation of 1..=k")]
    NotAPermutation(Vec<usize>),
    #[error("ground size mismatch: {left} vs {right}")]
    GroundSizeMismatch { left: usize, right: usize },
    #[error("set X_{0} is empty")]
    EmptyMemberSet(usize),
    #[error("duplicate label '{label}' in set X_{index}")]
    DuplicateLabel { label: String, index: usize },
    #[error("universe of {0} elements exceeds the supported maximum 64")]
    UniverseTooLarge(usize),
    #[error("family is improper: X_{i} \u{2286} X_{j}")]
    ImproperFamily { i: usize, j: usize },
    #[error("atom selection is empty")]
    EmptyAtomSelection,
    #[error("atom profile must be nonempty")]
    EmptyAtomProfile,
    #[error("complex has no faces at all; its generating non-faces are undefined")]
    VoidComplex,
    #[error("invalid candidate partition: {0}")]
    BadPartition(String),
    #[error("partition violates the union rule: {s} ~ {t} but not {su} ~ {tu}")]
    NotUnionClosed {
        s: String,
        t: String,
        su: String,
        tu: String,
    },
    #[error("corpus row (table {table}, row {row}): {message}")]
    CorpusRow {
        table: u8,
        row: u32,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
