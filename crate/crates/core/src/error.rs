use thiserror::Error;

/// Everything that can go wrong while building or querying group elements.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid character {0:?} in permutation (use 1-9 then a=10, b=11, ...)")]
    InvalidChar(char),
    #[error("invalid window entry {0:?}")]
    InvalidEntry(String),
    #[error("window is not a bijection on 1..={0}")]
    NotBijection(usize),
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("element is not centrally symmetric, so it does not lie in B_{0}")]
    NotTypeB(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("rank must be at least 1")]
    InvalidRank,
    #[error("element is not a reflection")]
    NotReflection,
    #[error("operation requires a type B element")]
    RequiresTypeB,
    #[error("no element has rank value above {r} at box ({p},{q})")]
    InfeasibleBox { p: usize, q: usize, r: usize },
    #[error("invalid parabolic embedding: {0}")]
    InvalidEmbedding(String),
    #[error("{what} budget of {limit} exceeded")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("rank {rank} exceeds the enumeration bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("point counts over the chosen primes do not fit a single polynomial")]
    Interpolation,
    #[error("need at least {needed} odd primes above {bound}")]
    NotEnoughPrimes { needed: usize, bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
