use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid edge ({0}, {1}): {2}")]
    InvalidEdge(usize, usize, &'static str),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("graph is biconnected; M is undefined")]
    Biconnected,
    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid switch ({u}, {v}, {w}): {reason}")]
    InvalidSwitch {
        u: usize,
        v: usize,
        w: usize,
        reason: SwitchError,
    },
    #[error("district {0} is incontractible")]
    IncontractibleDistrict(usize),
    #[error("invalid contraction target {0}")]
    InvalidTarget(usize),
    #[error("input map is incontractible")]
    IncontractibleInput,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("map is not pseudo-canonical")]
    NotPseudoCanonical,
    #[error("district counts differ: {0} vs {1}")]
    MismatchedK(usize, usize),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("unknown signature")]
    UnknownSignature,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("bad formula: {0}")]
    BadFormula(String),
    #[error("assignment does not satisfy the formula")]
    NotSatisfying,
    #[error("wrong instance kind: expected {expected}, found {found}")]
    WrongKind { expected: String, found: String },
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable snake-case name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::InvalidEdge(..) => "invalid_edge",
            Error::NotConnected => "not_connected",
            Error::NotBiconnected => "not_biconnected",
            Error::Biconnected => "biconnected",
            Error::KOutOfRange { .. } => "k_out_of_range",
            Error::InvalidMap(_) => "invalid_map",
            Error::InvalidSwitch { .. } => "invalid_switch",
            Error::IncontractibleDistrict(_) => "incontractible_district",
            Error::InvalidTarget(_) => "invalid_target",
            Error::IncontractibleInput => "incontractible_input",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::NotPseudoCanonical => "not_pseudo_canonical",
            Error::MismatchedK(..) => "mismatched_k",
            Error::TooLarge(_) => "too_large",
            Error::UnknownSignature => "unknown_signature",
            Error::BadParams(_) => "bad_params",
            Error::BadFormula(_) => "bad_formula",
            Error::NotSatisfying => "not_satisfying",
            Error::WrongKind { .. } => "wrong_kind",
            Error::InvalidPlan(_) => "invalid_plan",
            Error::Io(_) => "io",
            Error::Internal(_) => "internal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SwitchError {
    #[error("not a path")]
    NotAPath,
    #[error("v and w in the same district")]
    SameDistrict,
    #[error("u and v not in the same district")]
    SourceNotShared,
    #[error("removing v disconnects its district")]
    DisconnectsSource,
}

pub type Result<T> = std::result::Result<T, Error>;
