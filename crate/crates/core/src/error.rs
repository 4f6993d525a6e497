use thiserror::Error;

/// Errors raised by the arithmetic, cusp and Eisenstein routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NonPositive(i64),
    #[error("{0} is not square-free")]
    NotSquarefree(u64),
    #[error("Jacobi modulus must be odd and positive, got {0}")]
    BadJacobiModulus(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid level D={d}, C={c}: {reason}")]
    InvalidLevel { d: u64, c: u64, reason: String },
    #[error("invalid triple (M={m}, L={l}, f={f}) for D={d}, C={c}: {reason}")]
    InvalidTriple {
        d: u64,
        c: u64,
        m: u64,
        l: u64,
        f: u64,
        reason: String,
    },
    #[error("conductor {0} must be odd and square-free")]
    BadConductor(u64),
    #[error("the trivial character is not allowed here")]
    TrivialCharacter,
    #[error("{value} is not coprime to the conductor {conductor}")]
    NotCoprime { value: String, conductor: u64 },
    #[error("prime {p} divides the conductor {f}")]
    PrimeDividesConductor { p: u64, f: u64 },
    #[error("x = (0, 0) has no holomorphic Hecke function")]
    ZeroIndex,
    #[error("invalid cusp representative: {0}")]
    InvalidCusp(String),
    #[error("level-reduction hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("guardrail exceeded: {0}")]
    Guardrail(String),
}

pub type Result<T> = std::result::Result<T, Error>;
