//! Exact rationals, cyclotomic fields, small number theory and p-adic numbers.

pub mod cyclotomic;
pub mod ntheory;
pub mod padic;
pub mod rational;

use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicNumber};
pub use padic::{
    embed_cyclotomic, hensel_root, hensel_root_padic, padic_log, teichmuller_lift, EmbeddingField,
    PadicEmbedding, PadicNumber,
};
pub use rational::{content, int, padic_valuation, parse_rational, rat, Rational, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = 2 is not supported here")]
    EvenPrime,
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("value is not a p-adic unit")]
    NotUnit,
    #[error("value is not p-integral")]
    NotIntegral,
    #[error("value is not congruent to 1 mod p")]
    NotOneUnit,
    #[error("seed is not a root modulo p")]
    NotARoot,
    #[error("seed is a multiple root modulo p")]
    NonSimpleRoot,
    #[error("order mismatch: {got} does not fit {expected}")]
    OrderMismatch { expected: u64, got: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision shortfall: needed {needed} digits, have {available}")]
    PrecisionShortfall { needed: u32, available: u32 },
}
