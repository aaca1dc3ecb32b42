//! Truncated q-expansions over exact coefficient rings.

mod bernoulli;
mod congruence;
mod eisenstein;
mod newform;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::ntheory::lcm;
use crate::arith::{ArithError, CyclotomicNumber, Rational};
use crate::dirichlet::{CharError, DirichletCharacter};

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, generalized_bernoulli, l_value_nonpositive};
pub use congruence::{
    check_congruence, sturm_bound, CongruenceIdealSpec, CongruenceReport, ReduceModPrime,
};
pub use eisenstein::{
    eisenstein_root_number, eisenstein_series, euler_poly_p, mazur_eisenstein, residual_eisenstein_partner,
    is_unit_value, sigma0_and_m, EisensteinPartner, EulerPoly, ResidualData, RootNumber,
};
pub use newform::{p_stabilize, NewformData, PStabilized};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("parity condition fails: θφ(-1) = {got}, expected (-1)^l = {expected}")]
    Parity { got: i64, expected: i64 },
    #[error("weight 2 with both characters of modulus 1 is not holomorphic; use mazur_eisenstein")]
    Weight2Level1,
    #[error("form is not ordinary at the chosen prime above {0}")]
    NotOrdinary(u64),
    #[error("{0} divides the level")]
    PDividesLevel(u64),
    #[error("{m0} does not divide {i0}")]
    NotDivisor { i0: u64, m0: u64 },
    #[error("coefficient ring cannot hold this value: {0}")]
    Ring(String),
    #[error("expansion known to q^{have}, needed q^{needed}")]
    Truncation { needed: usize, have: usize },
    #[error("newform data: {0}")]
    Ingest(String),
    #[error("residual data: {0}")]
    Residual(String),
    #[error("weights differ: {0} vs {1}")]
    WeightMismatch(u32, u32),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Char(#[from] CharError),
}

/// Tag describing where the coefficients live.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffRing {
    Rational,
    Cyclotomic(u64),
    NumberField(Vec<BigInt>),
}

impl CoeffRing {
    fn join(self, other: CoeffRing) -> CoeffRing {
        match (self, other) {
            (CoeffRing::Rational, x) | (x, CoeffRing::Rational) => x,
            (CoeffRing::Cyclotomic(a), CoeffRing::Cyclotomic(b)) => CoeffRing::Cyclotomic(lcm(a, b)),
            (x, _) => x,
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Rational => write!(f, "rational"),
            CoeffRing::Cyclotomic(n) => write!(f, "cyclotomic({n})"),
            CoeffRing::NumberField(p) => {
                let s: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                write!(f, "number-field([{}])", s.join(","))
            }
        }
    }
}

/// Exact field elements usable as q-expansion coefficients.
pub trait Coefficient: Clone + fmt::Debug + Send + Sync + 'static {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn from_cyclotomic(z: &CyclotomicNumber) -> Result<Self, QError>;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn exact(&self) -> String;
    fn ring(&self) -> CoeffRing;

    fn same(&self, o: &Self) -> bool {
        self.minus(o).is_zero_elem()
    }
}

impl Coefficient for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_cyclotomic(z: &CyclotomicNumber) -> Result<Self, QError> {
        z.to_rational().ok_or_else(|| QError::Ring(format!("{z} is not rational")))
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn exact(&self) -> String {
        self.to_string()
    }
    fn ring(&self) -> CoeffRing {
        CoeffRing::Rational
    }
}

impl Coefficient for CyclotomicNumber {
    fn zero_elem() -> Self {
        CyclotomicNumber::zero(1)
    }
    fn one_elem() -> Self {
        CyclotomicNumber::one(1)
    }
    fn from_rational(r: &Rational) -> Self {
        CyclotomicNumber::from_rational(1, r)
    }
    fn from_cyclotomic(z: &CyclotomicNumber) -> Result<Self, QError> {
        Ok(z.clone())
    }
    fn is_zero_elem(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn exact(&self) -> String {
        self.to_exact_string()
    }
    fn ring(&self) -> CoeffRing {
        if self.to_rational().is_some() {
            CoeffRing::Rational
        } else {
            CoeffRing::Cyclotomic(self.order())
        }
    }
}

/// Element of `Q[x]/(f)` for a monic integer `f`, in the power basis.
/// `poly = None` marks a rational constant that adopts the field of whatever it meets.
#[derive(Clone)]
pub struct NfElem {
    poly: Option<Arc<Vec<BigInt>>>,
    c: Vec<Rational>,
}

impl NfElem {
    pub fn new(poly: Arc<Vec<BigInt>>, mut c: Vec<Rational>) -> Result<Self, QError> {
        let d = poly.len() - 1;
        if poly.last() != Some(&BigInt::one()) {
            return Err(QError::Ingest("field polynomial must be monic".into()));
        }
        if c.len() > d {
            return Err(QError::Ingest(format!("{} power-basis coefficients for degree {d}", c.len())));
        }
        c.resize(d, Rational::zero());
        Ok(NfElem { poly: Some(poly), c })
    }

    pub fn constant(r: Rational) -> Self {
        NfElem { poly: None, c: vec![r] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn poly(&self) -> Option<&Arc<Vec<BigInt>>> {
        self.poly.as_ref()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.c.iter().skip(1).all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn widen(&self, poly: &Arc<Vec<BigInt>>) -> NfElem {
        match &self.poly {
            Some(_) => self.clone(),
            None => NfElem::new(poly.clone(), self.c.clone()).unwrap(),
        }
    }

    fn align(&self, o: &NfElem) -> (NfElem, NfElem) {
        match (&self.poly, &o.poly) {
            (Some(p), Some(q)) => {
                assert!(p == q, "number-field elements over different fields");
                (self.clone(), o.clone())
            }
            (Some(p), None) => (self.clone(), o.widen(p)),
            (None, Some(q)) => (self.widen(q), o.clone()),
            (None, None) => (self.clone(), o.clone()),
        }
    }

    fn zip(&self, o: &NfElem, f: impl Fn(&Rational, &Rational) -> Rational) -> NfElem {
        let (a, b) = self.align(o);
        NfElem { poly: a.poly, c: a.c.iter().zip(&b.c).map(|(x, y)| f(x, y)).collect() }
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact())
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Coefficient for NfElem {
    fn zero_elem() -> Self {
        NfElem::constant(Rational::zero())
    }
    fn one_elem() -> Self {
        NfElem::constant(Rational::one())
    }
    fn from_rational(r: &Rational) -> Self {
        NfElem::constant(r.clone())
    }
    fn from_cyclotomic(z: &CyclotomicNumber) -> Result<Self, QError> {
        Ok(NfElem::constant(Rational::from_cyclotomic(z)?))
    }
    fn is_zero_elem(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn plus(&self, o: &Self) -> Self {
        self.zip(o, |x, y| x + y)
    }
    fn minus(&self, o: &Self) -> Self {
        self.zip(o, |x, y| x - y)
    }
    fn times(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        let Some(poly) = a.poly.clone() else {
            return NfElem::constant(&a.c[0] * &b.c[0]);
        };
        let d = poly.len() - 1;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (d..prod.len()).rev() {
            let lead = std::mem::replace(&mut prod[k], Rational::zero());
            if lead.is_zero() {
                continue;
            }
            for (i, fi) in poly.iter().take(d).enumerate() {
                prod[k - d + i] -= &lead * Rational::from_integer(fi.clone());
            }
        }
        prod.truncate(d);
        NfElem { poly: Some(poly), c: prod }
    }
    fn exact(&self) -> String {
        match (&self.poly, self.to_rational()) {
            (_, Some(q)) => q.to_string(),
            (Some(_), None) => {
                let parts: Vec<String> = self.c.iter().map(|c| c.to_string()).collect();
                format!("nf[{}]", parts.join(","))
            }
            (None, None) => unreachable!(),
        }
    }
    fn ring(&self) -> CoeffRing {
        match &self.poly {
            Some(p) if p.len() > 2 => CoeffRing::NumberField(p.as_ref().clone()),
            _ => CoeffRing::Rational,
        }
    }
}

/// `Σ_{n ≤ n_max} a(n) q^n` with weight, level and nebentypus.
#[derive(Debug, Clone)]
pub struct QExpansion<C> {
    pub weight: u32,
    pub level: u64,
    pub nebentypus: DirichletCharacter,
    coeffs: Vec<C>,
}

impl<C: Coefficient> QExpansion<C> {
    pub fn new(weight: u32, level: u64, nebentypus: DirichletCharacter, coeffs: Vec<C>) -> Result<Self, QError> {
        if level % nebentypus.modulus() != 0 {
            return Err(QError::Ingest(format!(
                "nebentypus modulus {} does not divide level {level}",
                nebentypus.modulus()
            )));
        }
        if coeffs.is_empty() {
            return Err(QError::Truncation { needed: 0, have: 0 });
        }
        Ok(QExpansion { weight, level, nebentypus, coeffs })
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Result<&C, QError> {
        self.coeffs.get(n).ok_or(QError::Truncation { needed: n, have: self.n_max() })
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn ring(&self) -> CoeffRing {
        self.coeffs.iter().fold(CoeffRing::Rational, |acc, c| acc.join(c.ring()))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> QExpansion<D> {
        QExpansion {
            weight: self.weight,
            level: self.level,
            nebentypus: self.nebentypus.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Coefficient>(&self, f: impl Fn(&C) -> Result<D, QError>) -> Result<QExpansion<D>, QError> {
        Ok(QExpansion {
            weight: self.weight,
            level: self.level,
            nebentypus: self.nebentypus.clone(),
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn truncate(&self, n_max: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(n_max + 1);
        out
    }

    /// `a(n, g|χ) = χ(n) a(n, g)`, on level `lcm(N, C)·C` with `C` the modulus of `χ`.
    pub fn twist(&self, chi: &DirichletCharacter) -> Result<Self, QError> {
        let c = chi.modulus();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| match chi.exponent(n as i64) {
                None => Ok(C::zero_elem()),
                Some(0) => Ok(a.clone()),
                Some(_) => Ok(a.times(&C::from_cyclotomic(&chi.eval(n as i64))?)),
            })
            .collect::<Result<Vec<_>, QError>>()?;
        let neb = self.nebentypus.mul(&chi.pow(2));
        let level = lcm(self.level, c) * c;
        Ok(QExpansion { weight: self.weight, level, nebentypus: neb.primitive().extend(level), coeffs })
    }

    /// `g|ι_m`: kills `a(n)` whenever `gcd(n, m) > 1`.
    pub fn deplete(&self, m: u64) -> Self {
        self.twist(&DirichletCharacter::trivial(m)).expect("trivial twist stays in the ring")
    }

    /// `g(tz)`, truncated at the same `n_max`.
    pub fn v_op(&self, t: u64) -> Self {
        let coeffs = (0..self.coeffs.len())
            .map(|n| if n as u64 % t == 0 { self.coeffs[n / t as usize].clone() } else { C::zero_elem() })
            .collect();
        QExpansion {
            weight: self.weight,
            level: self.level * t,
            nebentypus: self.nebentypus.extend(self.level * t),
            coeffs,
        }
    }

    /// `a·self + b·other` on the common level and truncation.
    pub fn combine(&self, a: &C, other: &Self, b: &C) -> Result<Self, QError> {
        if self.weight != other.weight {
            return Err(QError::WeightMismatch(self.weight, other.weight));
        }
        let level = lcm(self.level, other.level);
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n).map(|i| a.times(&self.coeffs[i]).plus(&b.times(&other.coeffs[i]))).collect();
        Ok(QExpansion { weight: self.weight, level, nebentypus: self.nebentypus.extend(level), coeffs })
    }

    /// First index where the coefficients differ, within the common truncation.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.coeffs.len().min(other.coeffs.len());
        (0..n).find(|&i| !self.coeffs[i].same(&other.coeffs[i]))
    }

    /// `n:coeff` lines with exact serialization.
    pub fn export(&self) -> String {
        let mut s = String::new();
        for (n, a) in self.coeffs.iter().enumerate() {
            s.push_str(&format!("{n}:{}\n", a.exact()));
        }
        s
    }
}

impl QExpansion<CyclotomicNumber> {
    /// The same expansion over `Q` when every coefficient is rational.
    pub fn to_rational(&self) -> Result<QExpansion<Rational>, QError> {
        self.try_map(Rational::from_cyclotomic)
    }
}

#[cfg(test)]
pub(crate) fn coprime(a: u64, b: u64) -> bool {
    crate::arith::ntheory::gcd(a, b) == 1
}
