//! Truncated power series in `Z_p[[T]]`: arithmetic, Weierstrass data and Euler-factor substitution.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::ntheory::{is_prime, valuation};
use crate::arith::padic::{padic_log, pow_big, teichmuller_lift};
use crate::arith::{ArithError, PadicNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IwasawaError {
    #[error("series contexts differ: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("series vanishes modulo p^{0}")]
    AllZero(u32),
    #[error("λ = {lambda} is not below the degree precision {d}")]
    LambdaBeyondPrecision { lambda: usize, d: usize },
    #[error("Euler factor at ℓ = p = {0}")]
    EllIsP(u64),
    #[error("bad context: {0}")]
    Context(String),
    #[error("cannot parse series: {0}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The prime, the generator value `u = χ_cyc(γ) = 1 + p`, and the precision pair `(M, D)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IwasawaContext {
    pub p: u64,
    pub u: u64,
    pub m: u32,
    pub d: usize,
}

impl IwasawaContext {
    pub fn new(p: u64, m: u32, d: usize) -> Result<Self, IwasawaError> {
        if p == 2 || !is_prime(p) {
            return Err(IwasawaError::Context(format!("p = {p} must be an odd prime")));
        }
        if m == 0 || d == 0 {
            return Err(IwasawaError::Context("precisions must be positive".into()));
        }
        Ok(IwasawaContext { p, u: 1 + p, m, d })
    }

    /// `M = 8`, `D = p`.
    pub fn with_defaults(p: u64) -> Result<Self, IwasawaError> {
        Self::new(p, 8, p as usize)
    }

    fn modulus(&self) -> BigInt {
        pow_big(self.p, self.m)
    }
}

/// `Σ_{i<D} c_i T^i` with every `c_i` known modulo `p^M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicSeries {
    p: u64,
    m: u32,
    coeffs: Vec<BigInt>,
}

/// Generator of `(f) mod π` in `F_p[[T]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IdealClass {
    Zero,
    TPower(usize),
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealClass::Zero => write!(f, "0"),
            IdealClass::TPower(0) => write!(f, "(1)"),
            IdealClass::TPower(1) => write!(f, "(T)"),
            IdealClass::TPower(l) => write!(f, "(T^{l})"),
        }
    }
}

/// `f ≡ p^μ·P(T)·U(T)` with `P` distinguished of degree `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeierstrassData {
    pub mu: u32,
    pub lambda: usize,
    /// Coefficients of `P`, low to high, monic, known modulo `p^distinguished_precision`.
    #[serde(serialize_with = "ser_big_vec")]
    pub distinguished: Vec<BigInt>,
    pub distinguished_precision: u32,
    /// `c_λ / p^μ mod p`, nonzero: the certificate that `U` is a unit.
    pub unit_head: u64,
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl PadicSeries {
    /// Residues are reduced modulo `p^m`; the length is the degree precision.
    pub fn from_residues(p: u64, m: u32, coeffs: Vec<BigInt>) -> Self {
        let md = pow_big(p, m);
        PadicSeries { p, m, coeffs: coeffs.into_iter().map(|c| c.mod_floor(&md)).collect() }
    }

    pub fn from_padic(ctx: &IwasawaContext, coeffs: &[PadicNumber]) -> Result<Self, IwasawaError> {
        let mut out = vec![BigInt::zero(); ctx.d];
        for (i, c) in coeffs.iter().take(ctx.d).enumerate() {
            if c.prime() != ctx.p {
                return Err(IwasawaError::Context("coefficient over another prime".into()));
            }
            out[i] = c.residue(ctx.m)?;
        }
        Ok(PadicSeries { p: ctx.p, m: ctx.m, coeffs: out })
    }

    pub fn zero(ctx: &IwasawaContext) -> Self {
        PadicSeries { p: ctx.p, m: ctx.m, coeffs: vec![BigInt::zero(); ctx.d] }
    }

    pub fn constant(ctx: &IwasawaContext, c: &PadicNumber) -> Result<Self, IwasawaError> {
        Self::from_padic(ctx, std::slice::from_ref(c))
    }

    pub fn one(ctx: &IwasawaContext) -> Self {
        let mut s = Self::zero(ctx);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The variable `T` (zero when `D = 1`).
    pub fn t(ctx: &IwasawaContext) -> Self {
        let mut s = Self::zero(ctx);
        if ctx.d > 1 {
            s.coeffs[1] = BigInt::one();
        }
        s
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeff_precision(&self) -> u32 {
        self.m
    }

    pub fn degree_precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PadicNumber {
        PadicNumber::from_residue(&self.coeffs[i], self.p, self.m)
    }

    pub fn eval_zero(&self) -> PadicNumber {
        self.coeff(0)
    }

    fn describe(&self) -> String {
        format!("(p={}, M={}, D={})", self.p, self.m, self.coeffs.len())
    }

    fn check(&self, o: &Self) -> Result<(), IwasawaError> {
        if self.p != o.p || self.m != o.m || self.coeffs.len() != o.coeffs.len() {
            return Err(IwasawaError::ContextMismatch(self.describe(), o.describe()));
        }
        Ok(())
    }

    fn md(&self) -> BigInt {
        pow_big(self.p, self.m)
    }

    pub fn add(&self, o: &Self) -> Result<Self, IwasawaError> {
        self.check(o)?;
        let md = self.md();
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a + b).mod_floor(&md)).collect();
        Ok(PadicSeries { p: self.p, m: self.m, coeffs })
    }

    pub fn neg(&self) -> Self {
        let md = self.md();
        PadicSeries { p: self.p, m: self.m, coeffs: self.coeffs.iter().map(|a| (-a).mod_floor(&md)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self, IwasawaError> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, IwasawaError> {
        self.check(o)?;
        Ok(PadicSeries { p: self.p, m: self.m, coeffs: mul_trunc(&self.coeffs, &o.coeffs, self.coeffs.len(), &self.md()) })
    }

    pub fn scale(&self, c: &PadicNumber) -> Result<Self, IwasawaError> {
        let r = c.residue(self.m)?;
        let md = self.md();
        Ok(PadicSeries { p: self.p, m: self.m, coeffs: self.coeffs.iter().map(|a| (a * &r).mod_floor(&md)).collect() })
    }

    /// `p`-adic valuations of the coefficients, `M` standing for zero.
    pub fn valuations(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| res_valuation(c, self.p, self.m)).collect()
    }

    /// μ, λ and the distinguished polynomial by Weierstrass division to the available precision.
    pub fn invariants(&self) -> Result<WeierstrassData, IwasawaError> {
        let vals = self.valuations();
        let mu = *vals.iter().min().unwrap_or(&self.m);
        if mu >= self.m {
            return Err(IwasawaError::AllZero(self.m));
        }
        let lambda = vals.iter().position(|&v| v == mu).unwrap();
        let d = self.coeffs.len();
        if lambda >= d {
            return Err(IwasawaError::LambdaBeyondPrecision { lambda, d });
        }
        let mp = self.m - mu;
        let md = pow_big(self.p, mp);
        let pmu = pow_big(self.p, mu);
        let g: Vec<BigInt> = self.coeffs.iter().map(|c| (c / &pmu).mod_floor(&md)).collect();
        let unit_head = g[lambda].mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
        if lambda == 0 {
            return Ok(WeierstrassData {
                mu,
                lambda,
                distinguished: vec![BigInt::one()],
                distinguished_precision: mp,
                unit_head,
            });
        }
        let a = &g[..lambda];
        let v_a = a.iter().map(|c| res_valuation(c, self.p, mp)).min().unwrap();
        let b = &g[lambda..];
        let l0 = b.len();
        let binv = inverse_trunc(b, l0, &md, self.p).expect("unit head");
        let mut x = vec![BigInt::zero(); l0];
        x[0] = BigInt::one();
        let mut s = x.clone();
        let mut k: u32 = 0;
        let mut exact = v_a >= mp;
        while !exact && x.len() >= 2 * lambda {
            let len = x.len();
            let t = mul_trunc(&mul_trunc(a, &binv[..len], len, &md), &x, len, &md);
            x = t[lambda..].iter().map(|c| (-c).mod_floor(&md)).collect();
            for (si, xi) in s.iter_mut().zip(&x) {
                *si = (&*si + xi).mod_floor(&md);
            }
            k += 1;
            if x.iter().all(|c| c.is_zero()) {
                exact = true;
            }
        }
        let q = mul_trunc(&binv, &s, lambda, &md);
        let mut dist = mul_trunc(&q, a, lambda, &md);
        dist.push(BigInt::one());
        let precision = if exact { mp } else { mp.min((k + 2) * v_a) };
        let dp = pow_big(self.p, precision);
        let distinguished = dist.into_iter().map(|c| c.mod_floor(&dp)).collect();
        Ok(WeierstrassData { mu, lambda, distinguished, distinguished_precision: precision, unit_head })
    }

    /// `Zero` when `μ > 0`, else `T^λ`.
    pub fn ideal_mod_pi(&self) -> Result<IdealClass, IwasawaError> {
        let vals = self.valuations();
        match vals.iter().position(|&v| v == 0) {
            Some(l) => Ok(IdealClass::TPower(l)),
            None if vals.iter().any(|&v| v < self.m) => Ok(IdealClass::Zero),
            None => Err(IwasawaError::AllZero(self.m)),
        }
    }

    /// Remainder modulo `(1+T)^{p^n} - 1`, read as a polynomial of degree `< p^n`.
    pub fn reduce_omega(&self, n: u32) -> Self {
        let deg = self.p.pow(n) as usize;
        let md = self.md();
        let omega: Vec<BigInt> = (0..deg).map(|i| binom_int(&BigInt::from(deg), i as u64)).collect();
        let mut c = self.coeffs.clone();
        c.resize(c.len().max(deg), BigInt::zero());
        for top in (deg..c.len()).rev() {
            let lead = std::mem::replace(&mut c[top], BigInt::zero());
            if lead.is_zero() {
                continue;
            }
            // T^deg ≡ -Σ_{i<deg} C(deg, i) T^i, and the constant term of ω is zero
            for (i, w) in omega.iter().enumerate().skip(1) {
                let idx = top - deg + i;
                c[idx] = (&c[idx] - &lead * w).mod_floor(&md);
            }
        }
        c.truncate(deg);
        PadicSeries { p: self.p, m: self.m, coeffs: c }
    }

    /// `p, M, D, [v_0:u_0, ...]` with `u_i` the unit part modulo `p^{M - v_i}`; zero is `M:0`.
    pub fn serialize(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| {
                let v = res_valuation(c, self.p, self.m);
                if v >= self.m {
                    format!("{}:0", self.m)
                } else {
                    format!("{v}:{}", c / pow_big(self.p, v))
                }
            })
            .collect();
        format!("{}, {}, {}, [{}]", self.p, self.m, self.coeffs.len(), parts.join(", "))
    }

    pub fn parse(s: &str) -> Result<Self, IwasawaError> {
        let bad = |m: &str| IwasawaError::Parse(m.to_string());
        let (head, body) = s.split_once('[').ok_or_else(|| bad("missing ["))?;
        let body = body.trim().strip_suffix(']').ok_or_else(|| bad("missing ]"))?;
        let h: Vec<&str> = head.split(',').map(|x| x.trim()).filter(|x| !x.is_empty()).collect();
        if h.len() != 3 {
            return Err(bad("header needs p, M, D"));
        }
        let p: u64 = h[0].parse().map_err(|_| bad("p"))?;
        let m: u32 = h[1].parse().map_err(|_| bad("M"))?;
        let d: usize = h[2].parse().map_err(|_| bad("D"))?;
        let mut coeffs = Vec::with_capacity(d);
        for part in body.split(',').map(|x| x.trim()).filter(|x| !x.is_empty()) {
            let (v, u) = part.split_once(':').ok_or_else(|| bad("entry"))?;
            let v: u32 = v.parse().map_err(|_| bad("valuation"))?;
            let u: BigInt = u.parse().map_err(|_| bad("unit"))?;
            coeffs.push(if v >= m { BigInt::zero() } else { u * pow_big(p, v) });
        }
        if coeffs.len() != d {
            return Err(bad("length differs from D"));
        }
        Ok(PadicSeries::from_residues(p, m, coeffs))
    }
}

fn res_valuation(c: &BigInt, p: u64, m: u32) -> u32 {
    if c.is_zero() {
        return m;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut x = c.clone();
    while v < m && (&x % &pb).is_zero() {
        x /= &pb;
        v += 1;
    }
    v
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize, md: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out.into_iter().map(|c| c.mod_floor(md)).collect()
}

fn inverse_trunc(b: &[BigInt], len: usize, md: &BigInt, p: u64) -> Option<Vec<BigInt>> {
    if (&b[0] % BigInt::from(p)).is_zero() {
        return None;
    }
    let inv0 = crate::arith::padic::inv_mod(&b[0], md)?;
    let mut out = vec![BigInt::zero(); len];
    out[0] = inv0.clone();
    for n in 1..len {
        let mut s = BigInt::zero();
        for k in 1..=n.min(b.len() - 1) {
            s += &b[k] * &out[n - k];
        }
        out[n] = (-s * &inv0).mod_floor(md);
    }
    Some(out)
}

fn binom_int(s: &BigInt, i: u64) -> BigInt {
    let mut r = BigInt::one();
    for t in 0..i {
        r = r * (s - BigInt::from(t)) / BigInt::from(t + 1);
    }
    r
}

/// How `ℓ^{-j-1}` enters the substituted Euler factor.
pub const FOLDING_CONVENTION: &str =
    "X -> l^(-j-1)*(1+T)^(c_l): Teichmuller part omega(l)^(-j-1) kept in the constant, c_l = log<l>/log(1+p)";

/// An Euler factor after substitution, with the data used.
#[derive(Debug, Clone)]
pub struct EulerFactorSeries {
    pub series: PadicSeries,
    /// `log⟨ℓ⟩ / log u`.
    pub c_l: PadicNumber,
    /// `ℓ^{-j-1}` in `Z_p`.
    pub constant: PadicNumber,
    pub convention: &'static str,
}

/// `P(ℓ^{-j-1}·(1+T)^{c_ℓ})` modulo `(p^M, T^D)`, for `P` given low to high.
pub fn euler_factor_series(
    poly: &[PadicNumber],
    l: u64,
    j: i64,
    ctx: &IwasawaContext,
) -> Result<EulerFactorSeries, IwasawaError> {
    let p = ctx.p;
    if l == p {
        return Err(IwasawaError::EllIsP(p));
    }
    let d = ctx.d;
    let extra: u32 = (1..d as u64).map(|i| valuation(i, p)).sum();
    let work = ctx.m + extra + 2;
    let lb = PadicNumber::from_i64(l as i64, p, work);
    let w = teichmuller_lift(l as i64, p, work)?;
    let bracket = lb.div(&w)?;
    let u = PadicNumber::from_i64(ctx.u as i64, p, work);
    let c_l = padic_log(&bracket)?.div(&padic_log(&u)?)?;
    let c_int = c_l.residue(work - 1)?;
    let constant = PadicNumber::from_i64(l as i64, p, ctx.m).pow(-j - 1)?;
    let md = ctx.modulus();
    let mut acc = vec![BigInt::zero(); d];
    let kappa = constant.residue(ctx.m)?;
    let mut kpow = BigInt::one();
    for (mdeg, coef) in poly.iter().enumerate() {
        let cres = coef.residue(ctx.m)?;
        if !cres.is_zero() {
            let s = &c_int * BigInt::from(mdeg);
            let f = (&cres * &kpow).mod_floor(&md);
            let mut b = BigInt::one();
            for i in 0..d {
                if i > 0 {
                    b = b * (&s - BigInt::from(i - 1)) / BigInt::from(i);
                }
                acc[i] = (&acc[i] + &f * &b).mod_floor(&md);
            }
        }
        kpow = (kpow * &kappa).mod_floor(&md);
    }
    Ok(EulerFactorSeries {
        series: PadicSeries { p, m: ctx.m, coeffs: acc },
        c_l: c_l.truncate_abs((work - 1) as i64),
        constant,
        convention: FOLDING_CONVENTION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> IwasawaContext {
        IwasawaContext::new(5, 6, 5).unwrap()
    }

    fn series(c: &[i64]) -> PadicSeries {
        let mut v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        v.resize(5, BigInt::zero());
        PadicSeries::from_residues(5, 6, v)
    }

    #[test]
    fn basic_arithmetic() {
        let c = ctx();
        let a = series(&[3, 10, 7]);
        assert_eq!(a.mul(&PadicSeries::one(&c)).unwrap(), a);
        let t = PadicSeries::t(&c);
        assert_eq!(t.mul(&t).unwrap(), series(&[0, 0, 1]));
        let other = PadicSeries::from_residues(5, 5, vec![BigInt::one(); 5]);
        assert!(a.mul(&other).is_err());
    }

    #[test]
    fn invariants_examples() {
        let w = series(&[5]).invariants().unwrap();
        assert_eq!((w.mu, w.lambda), (1, 0));
        let w = series(&[0, 1, 5]).invariants().unwrap();
        assert_eq!((w.mu, w.lambda), (0, 1));
        let w = series(&[7]).invariants().unwrap();
        assert_eq!((w.mu, w.lambda), (0, 0));
        let f = series(&[5, 1]).mul(&series(&[1, 1])).unwrap();
        let w = f.invariants().unwrap();
        assert_eq!((w.mu, w.lambda), (0, 1));
        assert_eq!(w.distinguished, vec![BigInt::from(5), BigInt::one()]);
        // five terms of T-precision give 5-adic precision 5 for λ = 1
        assert_eq!(w.distinguished_precision, 5);
        assert_eq!(series(&[]).invariants().unwrap_err(), IwasawaError::AllZero(6));
        assert_eq!(series(&[25, 5]).ideal_mod_pi().unwrap(), IdealClass::Zero);
        assert_eq!(series(&[2]).ideal_mod_pi().unwrap(), IdealClass::TPower(0));
    }

    #[test]
    fn distinguished_polynomial_divides() {
        // (T^2 + 5T + 10)·(3 + T) has λ = 2 and recovers the quadratic exactly
        let c = IwasawaContext::new(5, 6, 12).unwrap();
        let mut p1 = vec![BigInt::from(10), BigInt::from(5), BigInt::one()];
        p1.resize(12, BigInt::zero());
        let mut u = vec![BigInt::from(3), BigInt::one()];
        u.resize(12, BigInt::zero());
        let f = PadicSeries::from_residues(5, 6, p1.clone()).mul(&PadicSeries::from_residues(5, 6, u)).unwrap();
        let w = f.invariants().unwrap();
        assert_eq!(w.lambda, 2);
        let dp = pow_big(5, w.distinguished_precision);
        let want: Vec<BigInt> = p1[..3].iter().map(|x| x.mod_floor(&dp)).collect();
        assert_eq!(w.distinguished, want);
        assert!(w.distinguished_precision >= 3);
        let _ = c;
    }

    #[test]
    fn serialization_round_trip() {
        let s = series(&[0, 5, 3, 250, 15625 * 5]);
        let text = s.serialize();
        assert_eq!(text, "5, 6, 5, [6:0, 1:1, 0:3, 3:2, 6:0]");
        assert_eq!(PadicSeries::parse(&text).unwrap(), s);
        assert!(PadicSeries::parse("5, 6, 2, [0:1]").is_err());
    }

    #[test]
    fn omega_reduction() {
        // (1+T)^5 ≡ 1 modulo ω_1
        let c = IwasawaContext::new(5, 6, 10).unwrap();
        let one_plus_t = PadicSeries::one(&c).add(&PadicSeries::t(&c)).unwrap();
        let mut pw = PadicSeries::one(&c);
        for _ in 0..5 {
            pw = pw.mul(&one_plus_t).unwrap();
        }
        let r = pw.reduce_omega(1);
        assert_eq!(r.residues()[0], BigInt::one());
        assert!(r.residues()[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn euler_factor_basics() {
        let c = IwasawaContext::new(11, 8, 11).unwrap();
        let one = [PadicNumber::from_i64(1, 11, 8)];
        let e = euler_factor_series(&one, 23, 0, &c).unwrap();
        assert_eq!(e.series, PadicSeries::one(&c));
        assert!(euler_factor_series(&one, 11, 0, &c).is_err());
        // P = 1 - X at T = 0 is 1 - 23^{-1}
        let p = [PadicNumber::from_i64(1, 11, 8), PadicNumber::from_i64(-1, 11, 8)];
        let e = euler_factor_series(&p, 23, 0, &c).unwrap();
        let want = PadicNumber::from_i64(1, 11, 8).sub(&PadicNumber::from_i64(23, 11, 8).inverse().unwrap());
        assert_eq!(e.series.eval_zero(), want.truncate_abs(8));
        // 23 ≡ 1 mod 11
        assert_eq!(e.series.eval_zero().valuation(), Some(1));
    }
}
