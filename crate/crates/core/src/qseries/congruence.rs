use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{Coefficient, NfElem, QError, QExpansion};
use crate::arith::ntheory::{self, gamma0_index, mod_pow, primitive_root};
use crate::arith::{CyclotomicNumber, Rational};

/// A degree-one prime `𝔭` above `p`, fixed by root residues: the Hecke-field generator is sent to
/// `nf_seed`, and `ζ_n` to `g^{(p-1)/n}` for the least primitive root `g` unless overridden.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceIdealSpec {
    pub p: u64,
    pub nf_seed: Option<u64>,
    pub cyclotomic_seeds: BTreeMap<u64, u64>,
}

impl CongruenceIdealSpec {
    pub fn new(p: u64) -> Self {
        CongruenceIdealSpec { p, nf_seed: None, cyclotomic_seeds: BTreeMap::new() }
    }

    pub fn with_nf_seed(mut self, seed: u64) -> Self {
        self.nf_seed = Some(seed % self.p);
        self
    }

    /// Residue of `ζ_n` modulo `𝔭`.
    pub fn zeta_residue(&self, n: u64) -> Result<u64, QError> {
        if let Some(&s) = self.cyclotomic_seeds.get(&n) {
            return Ok(s);
        }
        let p = self.p;
        if (p - 1) % n != 0 {
            return Err(QError::Ring(format!("ζ_{n} has no residue in F_{p}")));
        }
        let g = primitive_root(p).unwrap();
        Ok(mod_pow(g, (p - 1) / n, p))
    }

    pub fn describe(&self) -> String {
        match self.nf_seed {
            Some(s) => format!("(p={}, root≡{} mod p)", self.p, s),
            None => format!("(p={})", self.p),
        }
    }
}

/// Reduction modulo a degree-one prime.
pub trait ReduceModPrime {
    fn reduce(&self, ideal: &CongruenceIdealSpec) -> Result<u64, QError>;
}

fn reduce_rational(r: &Rational, p: u64) -> Result<u64, QError> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb);
    let inv = ntheory::mod_inv(d.to_u64().unwrap(), p)
        .filter(|_| d != BigInt::from(0))
        .ok_or_else(|| QError::Ring(format!("{r} is not integral at {p}")))?;
    let n = r.numer().mod_floor(&pb).to_u64().unwrap();
    Ok((n as u128 * inv as u128 % p as u128) as u64)
}

fn horner(coeffs: &[Rational], x: u64, p: u64) -> Result<u64, QError> {
    let mut acc = 0u64;
    for c in coeffs.iter().rev() {
        let r = reduce_rational(c, p)?;
        acc = ((acc as u128 * x as u128 + r as u128) % p as u128) as u64;
    }
    Ok(acc)
}

impl ReduceModPrime for Rational {
    fn reduce(&self, ideal: &CongruenceIdealSpec) -> Result<u64, QError> {
        reduce_rational(self, ideal.p)
    }
}

impl ReduceModPrime for CyclotomicNumber {
    fn reduce(&self, ideal: &CongruenceIdealSpec) -> Result<u64, QError> {
        if let Some(q) = self.to_rational() {
            return reduce_rational(&q, ideal.p);
        }
        let s = ideal.zeta_residue(self.order())?;
        horner(&self.coeffs(), s, ideal.p)
    }
}

impl ReduceModPrime for NfElem {
    fn reduce(&self, ideal: &CongruenceIdealSpec) -> Result<u64, QError> {
        if let Some(q) = self.to_rational() {
            return reduce_rational(&q, ideal.p);
        }
        let s = ideal.nf_seed.ok_or_else(|| QError::Ring("no seed root for the Hecke field".into()))?;
        let poly = self.poly().unwrap();
        let f: Vec<Rational> = poly.iter().map(|c| Rational::from_integer(c.clone())).collect();
        if horner(&f, s, ideal.p)? != 0 {
            return Err(QError::Ring(format!("{s} is not a root of the field polynomial mod {}", ideal.p)));
        }
        horner(self.coeffs(), s, ideal.p)
    }
}

/// `⌈(k/12)·[SL2(Z) : Γ0(N)]⌉`.
pub fn sturm_bound(k: u32, n: u64) -> u64 {
    (k as u64 * gamma0_index(n)).div_ceil(12)
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub p: u64,
    pub ideal: String,
    pub bound: u64,
    /// Indices `n ≤ bound` with unequal reductions.
    pub mismatches: Vec<u64>,
}

impl CongruenceReport {
    pub fn congruent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `a(n, g1)` and `a(n, g2)` modulo `𝔭` for `0 ≤ n ≤ bound`.
pub fn check_congruence<A, B>(
    g1: &QExpansion<A>,
    g2: &QExpansion<B>,
    ideal: &CongruenceIdealSpec,
    bound: u64,
) -> Result<CongruenceReport, QError>
where
    A: Coefficient + ReduceModPrime,
    B: Coefficient + ReduceModPrime,
{
    let b = bound as usize;
    for have in [g1.n_max(), g2.n_max()] {
        if have < b {
            return Err(QError::Truncation { needed: b, have });
        }
    }
    let mut mismatches = Vec::new();
    for n in 0..=b {
        if g1.coeff(n).reduce(ideal)? != g2.coeff(n).reduce(ideal)? {
            mismatches.push(n as u64);
        }
    }
    Ok(CongruenceReport { p: ideal.p, ideal: ideal.describe(), bound, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::dirichlet::DirichletCharacter;
    use crate::qseries::mazur_eisenstein;

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_bound(2, 11), 2);
        assert_eq!(sturm_bound(12, 1), 1);
        assert_eq!(sturm_bound(2, 23), 4);
        let n = 23 * 11 * 4;
        assert_eq!(gamma0_index(n), 24 * 12 * 6);
        assert_eq!(sturm_bound(2, n), 24 * 12 * 6 * 2 / 12);
    }

    #[test]
    fn reductions() {
        let id = CongruenceIdealSpec::new(11);
        assert_eq!(rat(1, 2).reduce(&id).unwrap(), 6);
        assert!(rat(1, 11).reduce(&id).is_err());
        assert_eq!(CyclotomicNumber::zeta_pow(10, 1).reduce(&id).unwrap(), 2);
        assert_eq!(CyclotomicNumber::zeta_pow(10, 5).reduce(&id).unwrap(), 10);
        let poly = std::sync::Arc::new(vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]);
        let beta = NfElem::new(poly, vec![int(0), int(1)]).unwrap();
        assert_eq!(beta.reduce(&id.clone().with_nf_seed(8)).unwrap(), 8);
        assert!(beta.reduce(&id.clone().with_nf_seed(3)).is_err());
    }

    #[test]
    fn self_congruence() {
        let g = mazur_eisenstein(23, 10);
        let r = check_congruence(&g, &g, &CongruenceIdealSpec::new(7), 10).unwrap();
        assert!(r.congruent());
        assert!(check_congruence(&g, &g, &CongruenceIdealSpec::new(7), 11).is_err());
        let h = QExpansion::new(2, 23, DirichletCharacter::trivial(1), vec![int(0); 11]).unwrap();
        let r = check_congruence(&g, &h, &CongruenceIdealSpec::new(7), 10).unwrap();
        assert!(!r.congruent());
    }
}
