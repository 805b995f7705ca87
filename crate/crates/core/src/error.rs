use thiserror::Error;

use crate::roots::RootPos;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("polynomial {0:?} is not a monic irreducible polynomial of the requested degree")]
    ReduciblePolynomial(Vec<u32>),
    #[error("no built-in irreducible polynomial for q = {p}^{k}; supply one with --poly")]
    UnsupportedSize { p: u32, k: u32 },
    #[error("field size {p}^{k} exceeds the supported bound 2^16")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("size mismatch: expected n = {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matrix size n = {0} is outside the supported range 1..=16")]
    UnsupportedDimension(usize),
    #[error("position ({i},{j}) is not strictly lower triangular for n = {n}")]
    InvalidPosition { i: usize, j: usize, n: usize },
    #[error("field element code {code} is out of range for q = {q}")]
    InvalidElement { code: u32, q: u32 },
    #[error("main conditions must sit in distinct rows and distinct columns")]
    InvalidMainConditions,
    #[error("verge values must be nonzero")]
    ZeroVergeValue,
    #[error("orbit exceeds the member budget of {cap}")]
    MemoryBudgetExceeded { cap: usize },
    #[error("group of order {order} exceeds the element budget of {cap}")]
    BudgetExceeded { order: u128, cap: usize },
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("the input matrix is not a verge")]
    NotAVerge,
    #[error("position {0} is not a hook-arm position of the left hat set")]
    NotAHatPosition(RootPos),
    #[error("main conditions are hook connected")]
    HookConnected,
    #[error("main conditions are hook disconnected")]
    HookDisconnected,
    #[error("pattern set is not closed")]
    NotClosed,
    #[error("b = {0} is too large for the degree solver (b <= 5 required)")]
    BTooLarge(usize),
    #[error("blocked rank {blocked} is not divisible by {block}")]
    RankNotDivisible { blocked: usize, block: usize },
    #[error("right orbit has no template")]
    NoTemplate,
    #[error("right orbit has {0} templates")]
    MultipleTemplates(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("theorem check violated: {0}")]
    TheoremViolation(String),
}

impl Error {
    /// Process exit code: 1 input, 2 budget, 3 theorem-check violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MemoryBudgetExceeded { .. }
            | Error::BudgetExceeded { .. }
            | Error::CapExceeded { .. }
            | Error::BTooLarge(_)
            | Error::Overflow(_) => 2,
            Error::NoTemplate
            | Error::MultipleTemplates(_)
            | Error::RankNotDivisible { .. }
            | Error::TheoremViolation(_) => 3,
            _ => 1,
        }
    }
}

pub(crate) fn violation(msg: impl Into<String>) -> Error {
    Error::TheoremViolation(msg.into())
}
