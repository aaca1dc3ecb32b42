//! Branches of the p-adic L-function of a weight-2 form: the MTT multiplier, values at the
//! trivial wild character, Riemann-sum series in `Z_p[[T]]`, Euler-factor corrections and mod-π
//! product verdicts.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::cyclotomic::CyclotomicNumber;
use crate::arith::ntheory::is_prime;
use crate::arith::padic::{hensel_root, pow_big, teichmuller_lift};
use crate::arith::{rat, ArithError, PadicNumber};
use crate::dirichlet::DirichletCharacter;
use crate::iwasawa::{euler_factor_series, IdealClass, IwasawaContext, IwasawaError, PadicSeries};
use crate::modsym::SymbolFunctional;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicLError {
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("expected a {expected:+} symbol, got {got:+}")]
    BadSign { expected: i8, got: i8 },
    #[error("level n must be at least 1")]
    Level,
    #[error("denominator p^{0} too large for machine residues")]
    Reach(u32),
    #[error("a_p = {0} is not a p-adic unit")]
    NotOrdinary(i64),
    #[error("Euler factor at {0} applied twice")]
    DuplicateFactor(u64),
    #[error("branches live over different contexts")]
    Mismatch,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Iwasawa(#[from] IwasawaError),
}

/// `(1 - φ0(p)η(p)p^{k-2-j}/u)` and `(1 - φ̄0(p)p^j/u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MttMultiplier {
    pub first: PadicNumber,
    pub second: PadicNumber,
}

impl MttMultiplier {
    pub fn value(&self) -> PadicNumber {
        self.first.mul(&self.second)
    }
}

/// `phi0_p` is `None` when the character is ramified at `p`; its conjugate is taken as the inverse.
pub fn mtt_multiplier(
    u: &PadicNumber,
    eta_p: i64,
    phi0_p: Option<&PadicNumber>,
    k: u32,
    j: i64,
) -> Result<MttMultiplier, PadicLError> {
    let p = u.prime();
    let prec = u.rel_precision();
    let one = PadicNumber::from_i64(1, p, prec);
    let Some(phi) = phi0_p else {
        return Ok(MttMultiplier { first: one.clone(), second: one });
    };
    let pp = PadicNumber::from_i64(p as i64, p, prec);
    let eta = PadicNumber::from_i64(eta_p, p, prec);
    let first = one.sub(&phi.mul(&eta).mul(&pp.pow(k as i64 - 2 - j)?).div(u)?);
    let second = one.sub(&phi.inverse()?.mul(&pp.pow(j)?).div(u)?);
    Ok(MttMultiplier { first, second })
}

/// The unit root of `X² - a_p X + p`, or `a_p` itself at multiplicative reduction.
pub fn unit_root(a_p: i64, p: u64, prec: u32, multiplicative: bool) -> Result<PadicNumber, PadicLError> {
    if a_p.rem_euclid(p as i64) == 0 {
        return Err(PadicLError::NotOrdinary(a_p));
    }
    if multiplicative {
        return Ok(PadicNumber::from_i64(a_p, p, prec));
    }
    let f = [BigInt::from(p), BigInt::from(-a_p), BigInt::one()];
    Ok(hensel_root(&f, a_p.rem_euclid(p as i64) as u64, p, prec)?)
}

/// The ± symbols of one (possibly twisted) form, with bookkeeping labels.
#[derive(Debug, Clone)]
pub struct SymbolPair {
    pub plus: Arc<SymbolFunctional>,
    pub minus: Arc<SymbolFunctional>,
    pub label: String,
    pub twist: DirichletCharacter,
}

impl SymbolPair {
    pub fn new(
        plus: Arc<SymbolFunctional>,
        minus: Arc<SymbolFunctional>,
        label: impl Into<String>,
        twist: DirichletCharacter,
    ) -> Result<Self, PadicLError> {
        if plus.sign() != 1 {
            return Err(PadicLError::BadSign { expected: 1, got: plus.sign() });
        }
        if minus.sign() != -1 {
            return Err(PadicLError::BadSign { expected: -1, got: minus.sign() });
        }
        Ok(SymbolPair { plus, minus, label: label.into(), twist })
    }

    /// Branch `j` reads the symbol of sign `(-1)^j`.
    pub fn for_branch(&self, j: i64) -> &SymbolFunctional {
        if j.rem_euclid(2) == 0 {
            &self.plus
        } else {
            &self.minus
        }
    }
}

fn check_prime(p: u64) -> Result<(), PadicLError> {
    if p == 2 || !is_prime(p) {
        return Err(PadicLError::BadPrime(p));
    }
    Ok(())
}

/// `Σ_{b=1}^{p-1} ω̄^j(b) x^{±}(b/p)` in `Q(ζ_{p-1})`, with `ω(g) = ζ` for the least primitive root `g`.
pub fn branch_sum_exact(pair: &SymbolPair, p: u64, j: i64) -> Result<CyclotomicNumber, PadicLError> {
    check_prime(p)?;
    let w = DirichletCharacter::teichmuller(p, -j).map_err(|_| PadicLError::BadPrime(p))?;
    let x = pair.for_branch(j);
    let mut acc = CyclotomicNumber::zero(p - 1);
    for b in 1..p as i64 {
        let v = x.evaluate(&rat(b, p as i64));
        if !v.is_zero() {
            acc = &acc + &w.eval(b).to_order(p - 1).scale(&v);
        }
    }
    Ok(acc)
}

/// Value of branch `j` at the trivial wild character.
///
/// For `j ≢ 0` this is `(1/2α) Σ_b ω̄^j(b) x^{±}(b/p)`; for `j ≡ 0` it is `e_p·x^+(0)` with
/// `e_p = (1 - η(p)/α)(1 - 1/α)` and `η(p) = 0` at multiplicative reduction.
pub fn branch_value_trivial(
    pair: &SymbolPair,
    p: u64,
    alpha: &PadicNumber,
    j: i64,
    multiplicative: bool,
    prec: u32,
) -> Result<PadicNumber, PadicLError> {
    check_prime(p)?;
    let j = j.rem_euclid(p as i64 - 1);
    if j == 0 {
        let one = PadicNumber::from_i64(1, p, prec);
        let e = mtt_multiplier(alpha, if multiplicative { 0 } else { 1 }, Some(&one), 2, 0)?.value();
        let x0 = PadicNumber::from_rational(&pair.plus.evaluate(&rat(0, 1)), p, prec);
        return Ok(e.mul(&x0));
    }
    let x = pair.for_branch(j);
    let mut acc = PadicNumber::zero(p, prec as i64);
    for b in 1..p as i64 {
        let v = x.evaluate(&rat(b, p as i64));
        if v.is_zero() {
            continue;
        }
        let w = teichmuller_lift(b, p, prec)?.pow(-j)?;
        acc = acc.add(&w.mul(&PadicNumber::from_rational(&v, p, prec)));
    }
    let two_alpha = alpha.mul(&PadicNumber::from_i64(2, p, prec));
    Ok(acc.div(&two_alpha)?)
}

/// Polynomial factor at a bad prime `ℓ`, coefficients low to high in `X`.
pub type SigmaFactor = (u64, Vec<PadicNumber>);

/// One branch `j` of the p-adic L-function as an element of `Z_p[[T]]`, with its provenance.
#[derive(Debug, Clone)]
pub struct BranchSeries {
    pub series: PadicSeries,
    pub j: u64,
    pub twist: DirichletCharacter,
    pub form: String,
    pub alpha: PadicNumber,
    /// Riemann sums taken modulo `p^{n+1}`.
    pub level_n: u32,
    pub multiplicative: bool,
    pub sigma0_factors: Vec<SigmaFactor>,
    /// `series(0) = trivial_normalization · branch_value_trivial` before any Euler factor.
    pub trivial_normalization: i64,
}

/// `Σ_{a mod p^{n+1}, p∤a} ω̄^j(a)·μ_n(a)·(1+T)^{k(a)}` with `⟨a⟩ ≡ u^{k(a)} mod p^{n+1}` and
/// `μ_n(a) = α^{-(n+1)}x(a/p^{n+1}) - α^{-(n+2)}x(a/p^n)`, the second term dropped when `p | N`.
///
/// The result is the polynomial representative of degree `< p^n`, padded or cut to `ctx.d` terms.
pub fn branch_series(
    pair: &SymbolPair,
    alpha: &PadicNumber,
    j: i64,
    n: u32,
    multiplicative: bool,
    ctx: &IwasawaContext,
) -> Result<BranchSeries, PadicLError> {
    let p = ctx.p;
    check_prime(p)?;
    if n == 0 {
        return Err(PadicLError::Level);
    }
    let big = p.checked_pow(n + 1).filter(|&q| q < (1 << 31)).ok_or(PadicLError::Reach(n + 1))?;
    let deg = (big / p) as usize;
    let j = j.rem_euclid(p as i64 - 1);
    let m = ctx.m;
    let md = pow_big(p, m);
    let x = pair.for_branch(j);
    let ainv = alpha.inverse()?;
    let c1 = ainv.pow(n as i64 + 1)?;
    let c2 = ainv.pow(n as i64 + 2)?;

    // discrete log of 1-units in base u modulo p^{n+1}
    let mut dlog = vec![usize::MAX; big as usize];
    let mut acc = 1u64;
    for k in 0..deg {
        dlog[acc as usize] = k;
        acc = acc * ctx.u % big;
    }

    let mut weights = vec![BigInt::zero(); deg];
    let bigb = BigInt::from(big);
    for a in 1..big {
        if a % p == 0 {
            continue;
        }
        let w = teichmuller_lift(a as i64, p, m.max(n + 1))?;
        let winv = w.inverse()?.residue(n + 1)?;
        let bracket = (BigInt::from(a) * winv).mod_floor(&bigb).to_usize().unwrap();
        let k = dlog[bracket];
        debug_assert!(k != usize::MAX);
        let mut mu = c1.mul(&PadicNumber::from_rational(&x.evaluate(&rat(a as i64, big as i64)), p, m));
        if !multiplicative {
            let v = x.evaluate(&rat(a as i64, (big / p) as i64));
            mu = mu.sub(&c2.mul(&PadicNumber::from_rational(&v, p, m)));
        }
        let weight = w.truncate_abs(m as i64).pow(-j)?;
        let term = weight.mul(&mu).residue(m)?;
        weights[k] = (&weights[k] + term).mod_floor(&md);
    }

    // Σ_k w_k (1+T)^k through one Pascal row at a time
    let mut coeffs = vec![BigInt::zero(); deg];
    let mut row = vec![BigInt::one()];
    for (k, wk) in weights.iter().enumerate() {
        if k > 0 {
            let mut next = vec![BigInt::one(); k + 1];
            for i in 1..k {
                next[i] = (&row[i - 1] + &row[i]).mod_floor(&md);
            }
            row = next;
        }
        if wk.is_zero() {
            continue;
        }
        for (i, c) in row.iter().enumerate() {
            coeffs[i] = (&coeffs[i] + wk * c).mod_floor(&md);
        }
    }
    coeffs.resize(ctx.d, BigInt::zero());
    Ok(BranchSeries {
        series: PadicSeries::from_residues(p, m, coeffs),
        j: j as u64,
        twist: pair.twist.clone(),
        form: pair.label.clone(),
        alpha: alpha.clone(),
        level_n: n,
        multiplicative,
        sigma0_factors: Vec::new(),
        trivial_normalization: if j == 0 { 1 } else { 2 },
    })
}

/// Multiplies in `P_ℓ(ℓ^{-j-1}γ)` for each factor, refusing repeats and `ℓ = p`.
pub fn apply_sigma0(
    bs: &BranchSeries,
    factors: &[SigmaFactor],
    ctx: &IwasawaContext,
) -> Result<BranchSeries, PadicLError> {
    let mut out = bs.clone();
    for (l, poly) in factors {
        if out.sigma0_factors.iter().any(|(m, _)| m == l) {
            return Err(PadicLError::DuplicateFactor(*l));
        }
        let e = euler_factor_series(poly, *l, bs.j as i64, ctx)?;
        out.series = out.series.mul(&e.series)?;
        out.sigma0_factors.push((*l, poly.clone()));
    }
    Ok(out)
}

/// Mod-π class of a product of two branches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductVerdict {
    pub class: IdealClass,
    pub unit: bool,
    /// `λ(bs1) + λ(bs2)` when both `μ` vanish.
    pub lambda_total: Option<usize>,
    pub mu: (u32, u32),
}

pub fn product_congruence_verdict(bs1: &BranchSeries, bs2: &BranchSeries) -> Result<ProductVerdict, PadicLError> {
    let prod = bs1.series.mul(&bs2.series).map_err(|_| PadicLError::Mismatch)?;
    let class = prod.ideal_mod_pi()?;
    let w1 = bs1.series.invariants()?;
    let w2 = bs2.series.invariants()?;
    let lambda_total = (w1.mu == 0 && w2.mu == 0).then_some(w1.lambda + w2.lambda);
    Ok(ProductVerdict { class, unit: class == IdealClass::TPower(0), lambda_total, mu: (w1.mu, w2.mu) })
}
