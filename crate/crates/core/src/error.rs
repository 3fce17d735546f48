use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the stable error names printed by the CLI and
/// mapped to integer codes by the C interface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DuplicateLabel: `{0}` declared more than once")]
    DuplicateLabel(String),
    #[error("UnknownLabel: `{0}` is not an element of the poset")]
    UnknownLabel(String),
    #[error("EmptyLabel: element labels must be non-empty")]
    EmptyLabel,
    #[error("InvalidLabel: `{0}` must match [A-Za-z0-9_.]+")]
    InvalidLabel(String),
    #[error("CycleDetected: `{0}` and `{1}` lie below each other")]
    CycleDetected(String, String),
    #[error("InvalidSize: {0}")]
    InvalidSize(String),
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error("PosetMismatch: values live on different posets")]
    PosetMismatch,

    #[error("NotUpperSet: step {0} is not upward closed")]
    NotUpperSet(i64),
    #[error("NotDecreasing: step {0} does not contain step {next}", next = .0 + 1)]
    NotDecreasing(i64),
    #[error("NotBounded: {0}")]
    NotBounded(String),
    #[error("DuplicateIndex: step {0} given more than once")]
    DuplicateIndex(i64),
    #[error("NotIncreasing: `{0}` lies below `{1}` but has a larger value")]
    NotIncreasing(String, String),
    #[error("NotTFunction: value jumps by more than one from `{0}` to its cover `{1}`")]
    NotTFunction(String, String),
    #[error("MissingValue: no value given for `{0}`")]
    MissingValue(String),

    #[error("NotMutable: {{{0}}} is not specialisation-closed")]
    NotMutable(String),
    #[error("NotMutable: step {0} of the sequence is not specialisation-closed")]
    NotMutableStep(usize),
    #[error("NotInvertible: undoing the step at {{{0}}} breaks monotonicity")]
    NotInvertible(String),
    #[error("EmptyPoset: operation needs at least one element")]
    EmptyPoset,

    #[error("BadWindow: lower end {0} exceeds upper end {1}")]
    BadWindow(i64, i64),
    #[error("UnknownNode: function is not a node of the graph")]
    UnknownNode,

    #[error("NotPrime: {0} is not a prime number")]
    NotPrime(String),
    #[error("InvalidHom: {0}")]
    InvalidHom(String),

    #[error("ParseError: line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A domain error raised while ingesting a given input line.
    #[error("line {line}: {inner}")]
    AtLine { line: usize, inner: Box<Error> },
}

impl Error {
    /// Short stable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::EmptyLabel => "EmptyLabel",
            Error::InvalidLabel(_) => "InvalidLabel",
            Error::CycleDetected(..) => "CycleDetected",
            Error::InvalidSize(_) => "InvalidSize",
            Error::TooLarge(_) => "TooLarge",
            Error::PosetMismatch => "PosetMismatch",
            Error::NotUpperSet(_) => "NotUpperSet",
            Error::NotDecreasing(_) => "NotDecreasing",
            Error::NotBounded(_) => "NotBounded",
            Error::DuplicateIndex(_) => "DuplicateIndex",
            Error::NotIncreasing(..) => "NotIncreasing",
            Error::NotTFunction(..) => "NotTFunction",
            Error::MissingValue(_) => "MissingValue",
            Error::NotMutable(_) | Error::NotMutableStep(_) => "NotMutable",
            Error::NotInvertible(_) => "NotInvertible",
            Error::EmptyPoset => "EmptyPoset",
            Error::BadWindow(..) => "BadWindow",
            Error::UnknownNode => "UnknownNode",
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidHom(_) => "InvalidHom",
            Error::Parse { .. } => "ParseError",
            Error::AtLine { inner, .. } => inner.name(),
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            Error::Parse { .. } | Error::AtLine { .. } => self,
            other => Error::AtLine {
                line,
                inner: Box::new(other),
            },
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
