use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("duplicate atom `{0}` in signature")]
    Duplicate(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("malformed fact `{0}`")]
    BadFact(String),
}

/// A syntax or validation error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Expected { expected: String, found: String },
    #[error("implication nested inside a clause body")]
    NestedImplication,
    #[error("clause head must be a disjunction of atoms, found {0}")]
    NonAtomicHead(String),
    #[error("`1` is not allowed in dialect lo")]
    OneInLo,
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("duplicate atom `{0}` in atoms header")]
    DuplicateAtom(String),
    #[error("header `{0}` must precede all clauses")]
    LateHeader(String),
    #[error("unknown dialect `{0}` (expected lo or lo1)")]
    UnknownDialect(String),
    #[error("{0}")]
    Other(String),
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

/// A program was handed to an engine that cannot evaluate its dialect.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("clause {clause} uses `1`, which the LO engine does not support; use the LO1 engine")]
pub struct DialectError {
    pub clause: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("clause {clause}: body is outside the flat fragment")]
    NotFlat { clause: usize },
    #[error("clause {clause}: atom `{atom}` repeated in head")]
    RepeatedHeadAtom { clause: usize, atom: String },
    #[error("clause {clause}: atom `{atom}` repeated in a body disjunct")]
    RepeatedBodyAtom { clause: usize, atom: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PetriError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("generated control atom `{0}` collides with a place name")]
    NameCollision(String),
    #[error("transition `{0}` has an empty post-set; enable strict consumption to encode it")]
    EmptyPost(String),
    #[error("transfer `{0}` moves tokens from a place to itself")]
    SelfTransfer(String),
    #[error("the net has no target marking")]
    NoTarget,
    #[error(transparent)]
    Signature(#[from] SignatureError),
}
