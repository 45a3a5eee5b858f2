use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid discriminant {0}: {1}")]
    InvalidDiscriminant(BigInt, &'static str),

    #[error("degenerate form ({a}, {b}, {c}): discriminant is zero or a perfect square")]
    DegenerateForm { a: BigInt, b: BigInt, c: BigInt },

    #[error("form ({a}, {b}, {c}) is not primitive")]
    Imprimitive { a: BigInt, b: BigInt, c: BigInt },

    #[error("form ({a}, {b}, {c}) is negative definite; negate it first")]
    NegativeDefinite { a: BigInt, b: BigInt, c: BigInt },

    #[error("form ({a}, {b}, {c}) is not a reduced indefinite form")]
    NotReduced { a: BigInt, b: BigInt, c: BigInt },

    #[error("map has determinant {0}, expected +1 or -1")]
    NotUnimodular(BigInt),

    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(BigInt, BigInt),

    #[error("degenerate ring (t, n) = ({t}, {n})")]
    DegenerateRing { t: BigInt, n: BigInt },

    #[error("not a module: action matrix violates the ring relation")]
    NotAModule,

    #[error("module is not pseudoregular: trace {trace} differs from ring trace {t}")]
    NotPseudoregular { trace: BigInt, t: BigInt },

    #[error("frame is not good: {0}")]
    NotGoodFrame(&'static str),

    #[error("module is not invertible (norm form has content {0})")]
    NotInvertible(BigInt),

    #[error("modules live over different orders (discriminants {0} and {1})")]
    RingMismatch(BigInt, BigInt),

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("bad prime {0}: divides the discriminant")]
    BadPrime(BigInt),

    #[error("prime {0} is not split")]
    NotSplit(BigInt),

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("polynomial context mismatch")]
    ContextMismatch,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that can only come from a bug, never from user input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
