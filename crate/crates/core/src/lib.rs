//! Exact and p-adic computations for Eisenstein congruences, modular symbols and Iwasawa invariants.

pub mod arith;
pub mod dirichlet;
pub mod qseries;
pub mod modsym;
pub mod iwasawa;
pub mod padic_l;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/arith.md")]
    mod arith {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/qseries.md")]
    mod qseries {}
    #[doc = include_str!("../../../book/src/modsym.md")]
    mod modsym {}
    #[doc = include_str!("../../../book/src/iwasawa.md")]
    mod iwasawa {}
    #[doc = include_str!("../../../book/src/padic_l.md")]
    mod padic_l {}
}
