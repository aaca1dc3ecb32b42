use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bernoulli::cached_l_value;
use super::{Coefficient, QError, QExpansion};
use crate::arith::ntheory::{self, factor, lcm, sigma};
use crate::arith::{CyclotomicNumber, Rational};
use crate::dirichlet::{lift_residual_character, lift_with_target, DirichletCharacter, LiftTarget, ResidualCharacter};

fn check_parity(theta: &DirichletCharacter, phi: &DirichletCharacter, l: u32) -> Result<(), QError> {
    let got = theta.parity() * phi.parity();
    let expected = if l % 2 == 0 { 1 } else { -1 };
    if got != expected {
        return Err(QError::Parity { got, expected });
    }
    Ok(())
}

/// `E_l(θ, φ)` truncated at `q^{n_max}`, on level `uv` where `u`, `v` are the moduli of `θ`, `φ`.
///
/// `a(n) = Σ_{d|n} θ(d) φ(n/d) d^{l-1}`; the constant term is `δ1(u) L(0,φ) + δ(v) L(1-l,θ)` with
/// `δ1(u) = 1/2` iff `l = u = 1` and `δ(v) = 1/2` iff `v = 1`. An imprimitive `θ` (such as the trivial
/// character mod `p`) is allowed; its L-value is then the imprimitive one.
pub fn eisenstein_series(
    theta: &DirichletCharacter,
    phi: &DirichletCharacter,
    l: u32,
    n_max: usize,
) -> Result<QExpansion<CyclotomicNumber>, QError> {
    if l == 0 {
        return Err(QError::Ingest("weight must be positive".into()));
    }
    check_parity(theta, phi, l)?;
    let (u, v) = (theta.modulus(), phi.modulus());
    if l == 2 && u == 1 && v == 1 {
        return Err(QError::Weight2Level1);
    }
    let order = lcm(theta.value_order(), phi.value_order());
    let st = order / theta.value_order();
    let sp = order / phi.value_order();
    let mut acc: Vec<Vec<BigInt>> = vec![Vec::new(); n_max + 1];
    for d in 1..=n_max {
        let Some(et) = theta.exponent(d as i64) else { continue };
        let w = BigInt::from(d).pow(l - 1);
        for k in 1..=n_max / d {
            let Some(ep) = phi.exponent(k as i64) else { continue };
            let slot = &mut acc[d * k];
            if slot.is_empty() {
                slot.resize(order as usize, BigInt::zero());
            }
            slot[((et * st + ep * sp) % order) as usize] += &w;
        }
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut a0 = CyclotomicNumber::zero(1);
    if l == 1 && u == 1 {
        a0 = &a0 + &cached_l_value(phi, 1).scale(&half);
    }
    if v == 1 {
        a0 = &a0 + &cached_l_value(theta, l as u64).scale(&half);
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(a0);
    for slot in acc.into_iter().skip(1) {
        coeffs.push(if slot.is_empty() {
            CyclotomicNumber::zero(1)
        } else {
            CyclotomicNumber::from_cyclic(order, slot, BigInt::one())
        });
    }
    let neb = theta.mul(phi);
    QExpansion::new(l, u * v, neb.extend(u * v), coeffs)
}

/// `E2(z) - t·E2(tz)`: constant `(t-1)/24`, `a(n) = σ(n) - t·σ(n/t)`.
pub fn mazur_eisenstein(t: u64, n_max: usize) -> QExpansion<Rational> {
    let mut coeffs = vec![Rational::new(BigInt::from(t as i64 - 1), BigInt::from(24))];
    for n in 1..=n_max as u64 {
        let mut a = sigma(n, 1);
        if n % t == 0 {
            a -= BigInt::from(t) * sigma(n / t, 1);
        }
        coeffs.push(Rational::from_integer(a));
    }
    QExpansion::new(2, t, DirichletCharacter::trivial(t), coeffs).expect("valid metadata")
}

/// `1 + c1 T + c2 T²` attached to a prime.
#[derive(Debug, Clone)]
pub struct EulerPoly<C> {
    pub prime: u64,
    pub coeffs: Vec<C>,
}

impl<C: Coefficient> EulerPoly<C> {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero_elem()).unwrap_or(0)
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero_elem(), |acc, c| acc.times(t).plus(c))
    }

    /// `(1 - aT)(1 - bT)`.
    pub fn from_roots(prime: u64, a: &C, b: &C) -> Self {
        EulerPoly { prime, coeffs: vec![C::one_elem(), C::zero_elem().minus(&a.plus(b)), a.times(b)] }
    }

    pub fn same(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<C>, i: usize| v.get(i).cloned().unwrap_or_else(C::zero_elem);
        (0..n).all(|i| get(&self.coeffs, i).same(&get(&other.coeffs, i)))
    }
}

/// `1 - a(p)T + ψ(p)p^{l-1}T²` for `p ∤ level`, `1 - a(p)T` for `p | level`.
pub fn euler_poly_p<C: Coefficient>(g: &QExpansion<C>, p: u64) -> Result<EulerPoly<C>, QError> {
    let ap = g.get(p as usize)?.clone();
    let c1 = C::zero_elem().minus(&ap);
    if g.level % p == 0 {
        return Ok(EulerPoly { prime: p, coeffs: vec![C::one_elem(), c1] });
    }
    let psi = C::from_cyclotomic(&g.nebentypus.eval(p as i64))?;
    let pk = C::from_rational(&Rational::from_integer(BigInt::from(p).pow(g.weight - 1)));
    Ok(EulerPoly { prime: p, coeffs: vec![C::one_elem(), c1, psi.times(&pk)] })
}

/// `W = c·√r` with `c` cyclotomic and `r` rational; `branch_flagged` marks an unresolved square root.
#[derive(Debug, Clone)]
pub struct RootNumber {
    pub value: CyclotomicNumber,
    pub radicand: Rational,
    pub branch_flagged: bool,
    theta: DirichletCharacter,
    phi: DirichletCharacter,
    weight: u32,
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r < &Rational::zero() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn rpow(r: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= r;
    }
    if e < 0 {
        acc = Rational::one() / acc;
    }
    acc
}

/// `(u/v)^{l/2} φ(-1) G(φ)/G(θ̄)` for primitive `θ`, `φ` of conductors `u`, `v`.
///
/// `1/G(θ̄) = G(θ)/(θ(-1)u)` keeps the result a product. For odd `l` with `u/v` not a square the
/// positive square root is kept symbolic and the branch is flagged.
pub fn eisenstein_root_number(theta: &DirichletCharacter, phi: &DirichletCharacter, l: u32) -> Result<RootNumber, QError> {
    check_parity(theta, phi, l)?;
    let theta = theta.primitive();
    let phi = phi.primitive();
    let (u, v) = (theta.modulus(), phi.modulus());
    let ratio = Rational::new(BigInt::from(u), BigInt::from(v));
    let (scalar, radicand, flagged) = if l % 2 == 0 {
        (rpow(&ratio, (l / 2) as i64), Rational::one(), false)
    } else {
        let base = rpow(&ratio, ((l - 1) / 2) as i64);
        match rational_sqrt(&ratio) {
            Some(s) => (base * s, Rational::one(), false),
            None => (base, ratio.clone(), true),
        }
    };
    let sign = Rational::from_integer(BigInt::from(phi.parity() * theta.parity()));
    let denom = Rational::new(BigInt::one(), BigInt::from(u));
    let value = (&phi.gauss_sum() * &theta.gauss_sum()).scale(&(scalar * sign * denom));
    Ok(RootNumber { value, radicand, branch_flagged: flagged, theta, phi, weight: l })
}

impl RootNumber {
    /// `1/W = G(φ̄)G(θ̄)/(s·v)` where `W = s·φθ(-1)·G(φ)G(θ)/u`.
    pub fn inverse(&self) -> RootNumber {
        let (u, v) = (self.theta.modulus(), self.phi.modulus());
        let g = &self.phi.conj().gauss_sum() * &self.theta.conj().gauss_sum();
        let ratio = Rational::new(BigInt::from(u), BigInt::from(v));
        let l = self.weight as i64;
        let (inv_s, radicand) = if l % 2 == 0 {
            (rpow(&ratio, -(l / 2)), Rational::one())
        } else if self.branch_flagged {
            // 1/(b√r) = √r/(b r)
            (rpow(&ratio, -((l - 1) / 2)) / &self.radicand, self.radicand.clone())
        } else {
            (rpow(&rational_sqrt(&ratio).unwrap(), -l), Rational::one())
        };
        let value = g.scale(&(inv_s / Rational::from_integer(BigInt::from(v))));
        RootNumber {
            value,
            radicand,
            branch_flagged: self.branch_flagged,
            theta: self.theta.clone(),
            phi: self.phi.clone(),
            weight: self.weight,
        }
    }

    /// `W1/W2 = c·√r`; radicands multiply and square parts are absorbed.
    pub fn ratio(&self, other: &RootNumber) -> (CyclotomicNumber, Rational) {
        let inv = other.inverse();
        let mut value = &self.value * &inv.value;
        let mut r = &self.radicand * &inv.radicand;
        if let Some(s) = rational_sqrt(&r) {
            value = value.scale(&s);
            r = Rational::one();
        }
        (value, r)
    }

    /// Whether `W` is a unit at every prime above `p`.
    pub fn is_unit_above(&self, p: u64) -> bool {
        radicand_unit(&self.radicand, p) && self.value.is_unit_above(p)
    }
}

fn radicand_unit(r: &Rational, p: u64) -> bool {
    crate::arith::padic_valuation(r, p).ok().and_then(|v| v.finite()) == Some(0)
}

/// Whether a value `c·√r` (as returned by [`RootNumber::ratio`]) is a unit above `p`.
pub fn is_unit_value(value: &CyclotomicNumber, radicand: &Rational, p: u64) -> bool {
    radicand_unit(radicand, p) && value.is_unit_above(p)
}

/// `Σ0 = {r : r | I0/M0 or r² | M0}` and `m = ∏_{r ∈ Σ0} r`.
pub fn sigma0_and_m(i0: u64, m0: u64) -> Result<(Vec<u64>, u64), QError> {
    if m0 == 0 || i0 % m0 != 0 {
        return Err(QError::NotDivisor { i0, m0 });
    }
    let mut set: Vec<u64> = ntheory::prime_divisors(i0 / m0);
    for (r, e) in factor(m0) {
        if e >= 2 {
            set.push(r);
        }
    }
    set.sort_unstable();
    set.dedup();
    let m = set.iter().product();
    Ok((set, m))
}

/// Residual data of `h` at the chosen prime above `p`.
#[derive(Debug, Clone)]
pub struct ResidualData {
    pub p: u64,
    pub weight: u32,
    /// Prime-to-`p` part of the level of `h`.
    pub level_i0: u64,
    pub xi1_bar: ResidualCharacter,
    pub xi2_bar: ResidualCharacter,
    pub target: LiftTarget,
}

#[derive(Debug, Clone)]
pub struct EisensteinPartner {
    pub xi1: DirichletCharacter,
    pub xi2: DirichletCharacter,
    /// `ξ1 ω^{1-l}`, taken modulo `lcm(cond, p)`.
    pub theta: DirichletCharacter,
    pub phi: DirichletCharacter,
    pub g: QExpansion<CyclotomicNumber>,
    pub m0: u64,
    pub sigma0: Vec<u64>,
    pub m: u64,
    pub target: LiftTarget,
}

/// Lifts `ξ̄1`, `ξ̄2`, checks parity and builds `g = E_l(ξ1 ω^{1-l}, ξ2)` together with `Σ0` and `m`.
pub fn residual_eisenstein_partner(data: &ResidualData, n_max: usize) -> Result<EisensteinPartner, QError> {
    let p = data.p;
    let l = data.weight;
    if data.xi2_bar.modulus() % p == 0 {
        let xi2 = lift_residual_character(&data.xi2_bar);
        if xi2.conductor() % p == 0 {
            return Err(QError::Residual("ξ̄2 must be unramified at p".into()));
        }
    }
    let xi1 = lift_with_target(&data.xi1_bar, data.target)?;
    let xi2 = lift_residual_character(&data.xi2_bar).primitive();
    let omega = DirichletCharacter::teichmuller(p, 1)?;
    let theta0 = xi1.mul(&omega.pow(1 - l as i64)).primitive();
    let theta = theta0.extend(lcm(theta0.modulus(), p));
    check_parity(&theta, &xi2, l)?;
    let g = eisenstein_series(&theta, &xi2, l, n_max)?;
    let c1 = xi1.conductor();
    let c2 = xi2.conductor();
    let strip = |c: u64| c / p.pow(ntheory::valuation(c, p));
    let m0 = strip(c1) * strip(c2);
    let (sigma0, m) = sigma0_and_m(data.level_i0, m0)?;
    let phi = xi2.clone();
    Ok(EisensteinPartner { xi1, xi2, theta, phi, g, m0, sigma0, m, target: data.target })
}
