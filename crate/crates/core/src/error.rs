use thiserror::Error;

#[derive(Debug, Error)]
pub enum FrcError {
    #[error("a storage system needs at least one node and one packet")]
    EmptySystem,
    #[error("expected {expected} node sets, got {found}")]
    NodeCountMismatch { expected: usize, found: usize },
    #[error("packet index {packet} on node {node} is outside 0..{theta}")]
    IndexOutOfRange { node: usize, packet: usize, theta: usize },
    #[error("packet {packet} appears twice on node {node}")]
    DuplicatePacket { node: usize, packet: usize },
    #[error("packet {packet} is not stored on any node")]
    OrphanPacket { packet: usize },
    #[error("theta = {theta} exceeds the packet cap {cap}")]
    ThetaTooLarge { theta: usize, cap: usize },
    #[error("partial regular graph needs odd n and d (got n = {n}, d = {d})")]
    ParityError { n: usize, d: usize },
    #[error("degree d = {d} must lie in 3..={max} for n = {n}")]
    DegreeRange { n: usize, d: usize, max: usize },
    #[error("replication factor rho = {rho} must lie in 2..{n}")]
    RhoRange { n: usize, rho: usize },
    #[error("invalid construction parameters: {0}")]
    InvalidParameters(String),
    #[error("offsets j*(t+1) mod {n} collide for d = {d}, t = {t}")]
    DegenerateOffsets { n: usize, d: usize, t: usize },
    #[error("k = {k} outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("file size {file_size} outside 1..={theta}")]
    FileSizeOutOfRange { file_size: usize, theta: usize },
    #[error("no node subset covers {file_size} packets")]
    Unreachable { file_size: usize },
    #[error("enumeration of {required} subsets exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("node {node} index outside 0..{n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("packet {packet} of node {node} has no surviving replica")]
    Unrepairable { node: usize, packet: usize },
    #[error("malformed table row {index}: {reason}")]
    MalformedRow { index: usize, reason: String },
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("code violates an invariant: {0}")]
    InvariantViolation(Box<FrcError>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FrcError {
    /// Stable variant name, used by the CLI on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            FrcError::EmptySystem => "EmptySystem",
            FrcError::NodeCountMismatch { .. } => "NodeCountMismatch",
            FrcError::IndexOutOfRange { .. } => "IndexOutOfRange",
            FrcError::DuplicatePacket { .. } => "DuplicatePacket",
            FrcError::OrphanPacket { .. } => "OrphanPacket",
            FrcError::ThetaTooLarge { .. } => "ThetaTooLarge",
            FrcError::ParityError { .. } => "ParityError",
            FrcError::DegreeRange { .. } => "DegreeRange",
            FrcError::RhoRange { .. } => "RhoRange",
            FrcError::InvalidParameters(_) => "InvalidParameters",
            FrcError::DegenerateOffsets { .. } => "DegenerateOffsets",
            FrcError::KOutOfRange { .. } => "KOutOfRange",
            FrcError::FileSizeOutOfRange { .. } => "FileSizeOutOfRange",
            FrcError::Unreachable { .. } => "Unreachable",
            FrcError::BudgetExceeded { .. } => "BudgetExceeded",
            FrcError::NodeOutOfRange { .. } => "NodeOutOfRange",
            FrcError::Unrepairable { .. } => "Unrepairable",
            FrcError::MalformedRow { .. } => "MalformedRow",
            FrcError::ParseError(_) => "ParseError",
            FrcError::InvariantViolation(_) => "InvariantViolation",
            FrcError::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, FrcError>;
