//! Weight-2 modular symbols for `Γ0(N)`: Manin presentation, Hecke operators, ± eigensymbols,
//! evaluation at rationals and quadratic twists.

pub mod cache;
pub mod linalg;
pub mod p1;
mod space;
mod symbol;

use thiserror::Error;

pub use space::{genus_x0, merel_matrices, ModularSymbolSpace};
pub use symbol::{
    eigensymbol, functional_from_values, twist_symbol, twist_symbol_unnormalized, CfChain, SymbolFunctional,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModSymError {
    #[error("level must be positive, got {0}")]
    Level(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("quotient dimension {got}, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("eigenspace has dimension {found}, need 1")]
    EigenDim { found: usize },
    #[error("cuspidal subspace not stable under T_{0}")]
    NotInvariant(u64),
    #[error("symbol vanishes on every generator")]
    ZeroSymbol,
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("twisting restricted to characters of order at most 2, got order {0}")]
    CharOrder(u64),
    #[error("conductor {conductor} not coprime to level {level}")]
    NotCoprime { conductor: u64, level: u64 },
    #[error("cache: {0}")]
    Cache(String),
}

/// Builds the weight-2 space of level `n`.
pub fn build_space(n: u64) -> Result<ModularSymbolSpace, ModSymError> {
    ModularSymbolSpace::build(n)
}

#[cfg(test)]
mod tests;
