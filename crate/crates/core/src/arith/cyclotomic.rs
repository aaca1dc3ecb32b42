//! Exact arithmetic in `Q(ζ_n)` using the power basis modulo `Φ_n`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ntheory::{divisors, euler_phi, gcd, lcm};
use super::rational::Rational;
use super::ArithError;

fn poly_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, low degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = div_monic_exact(&num, &phi_d);
    }
    let arc = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

fn div_monic_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An element of `Q(ζ_n)`: `(Σ num[i] ζ^i) / den` with `deg < φ(n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    /// Builds from power-basis coefficients; the length must equal `φ(order)`.
    pub fn new(order: u64, coeffs: Vec<Rational>) -> Result<Self, ArithError> {
        let phi = euler_phi(order) as usize;
        if coeffs.len() != phi {
            return Err(ArithError::LengthMismatch { expected: phi, got: coeffs.len() });
        }
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::normalized(order, num, den))
    }

    pub fn zero(order: u64) -> Self {
        let phi = euler_phi(order) as usize;
        CyclotomicNumber { order, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, &Rational::one())
    }

    pub fn from_rational(order: u64, r: &Rational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z
    }

    pub fn from_int(order: u64, k: i64) -> Self {
        Self::from_rational(order, &Rational::from_integer(BigInt::from(k)))
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(order: u64, k: i64) -> Self {
        let mut counts = vec![BigInt::zero(); order as usize];
        counts[k.rem_euclid(order as i64) as usize] = BigInt::one();
        Self::from_cyclic(order, counts, BigInt::one())
    }

    /// Reduces `(Σ_{i<len} c[i] ζ_n^i) / den` where `len` may be anything; indices wrap mod `n`.
    pub fn from_cyclic(order: u64, coeffs: Vec<BigInt>, den: BigInt) -> Self {
        let n = order as usize;
        let mut wrapped = if coeffs.len() <= n {
            let mut c = coeffs;
            c.resize(n, BigInt::zero());
            c
        } else {
            let mut c = vec![BigInt::zero(); n];
            for (i, v) in coeffs.into_iter().enumerate() {
                c[i % n] += v;
            }
            c
        };
        reduce_mod_phi(order, &mut wrapped);
        Self::normalized(order, wrapped, den)
    }

    /// Sum of `weight · ζ_n^exponent` over the given terms.
    pub fn from_exponent_counts(order: u64, counts: &[(u64, i64)]) -> Self {
        let mut c = vec![BigInt::zero(); order as usize];
        for &(e, w) in counts {
            c[(e % order) as usize] += w;
        }
        Self::from_cyclic(order, c, BigInt::one())
    }

    fn normalized(order: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        let phi = euler_phi(order) as usize;
        num.truncate(phi);
        num.resize(phi, BigInt::zero());
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = den / g;
            }
        }
        CyclotomicNumber { order, num, den }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    /// Integer numerators and common denominator.
    pub fn raw_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(ζ_m)`, where `order | m`.
    pub fn to_order(&self, m: u64) -> Self {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0, "Q(ζ_{}) does not embed in Q(ζ_{})", self.order, m);
        let step = (m / self.order) as usize;
        let mut c = vec![BigInt::zero(); m as usize];
        for (i, v) in self.num.iter().enumerate() {
            c[i * step] = v.clone();
        }
        Self::from_cyclic(m, c, self.den.clone())
    }

    /// Galois automorphism `ζ ↦ ζ^a`, `gcd(a, n) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.order as i64;
        assert_eq!(gcd(a.rem_euclid(n) as u64, self.order), 1, "not a Galois exponent");
        let mut c = vec![BigInt::zero(); self.order as usize];
        for (i, v) in self.num.iter().enumerate() {
            if !v.is_zero() {
                c[((i as i64) * a).rem_euclid(n) as usize] += v;
            }
        }
        Self::from_cyclic(self.order, c, self.den.clone())
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(-1)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::normalized(self.order, num, &self.den * r.denom())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else {
            let m = lcm(a.order, b.order);
            (a.to_order(m), b.to_order(m))
        }
    }

    fn add_impl(&self, other: &Self, sign: i32) -> Self {
        if self.order != other.order {
            let (a, b) = Self::lift_pair(self, other);
            return a.add_impl(&b, sign);
        }
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| if sign > 0 { x * &fa + y * &fb } else { x * &fa - y * &fb })
            .collect();
        Self::normalized(self.order, num, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = Self::lift_pair(self, other);
            return a.mul_impl(&b);
        }
        let phi = self.num.len();
        let mut prod = vec![BigInt::zero(); (2 * phi).saturating_sub(1).max(1)];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        reduce_poly_mod_phi(self.order, &mut prod);
        Self::normalized(self.order, prod, &self.den * &other.den)
    }

    /// Whether the element is a unit at every prime above `p`.
    ///
    /// Writes `x = c·y` with `c ∈ Q` and `y` primitive in `Z[ζ_n]`; then `y` is a unit above `p`
    /// exactly when it is invertible in `F_p[X]/Φ_n`.
    pub fn is_unit_above(&self, p: u64) -> bool {
        if self.is_zero() {
            return false;
        }
        let pb = BigInt::from(p);
        let g = self.num.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let vc = super::rational::int_valuation(&g, p).unwrap() - super::rational::int_valuation(&self.den, p).unwrap();
        if vc != 0 {
            return false;
        }
        let y: Vec<u64> = self
            .num
            .iter()
            .map(|c| (c / &g).mod_floor(&pb).try_into().unwrap())
            .collect();
        let phi: Vec<u64> = cyclotomic_polynomial(self.order).iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        let d = poly_gcd_mod_p(y, phi, p);
        d.len() == 1
    }

    /// Exact serialization `cyc<n>[c0,c1,...]`; rational elements print as plain rationals.
    pub fn to_exact_string(&self) -> String {
        if let Some(q) = self.to_rational() {
            return q.to_string();
        }
        let parts: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        format!("cyc{}[{}]", self.order, parts.join(","))
    }
}

/// Reduces a coefficient vector (length ≥ φ(n)) modulo `Φ_n` in place.
fn reduce_poly_mod_phi(order: u64, c: &mut Vec<BigInt>) {
    let phi_poly = cyclotomic_polynomial(order);
    let deg = phi_poly.len() - 1;
    if c.len() > deg {
        for i in (deg..c.len()).rev() {
            if c[i].is_zero() {
                continue;
            }
            let lead = std::mem::take(&mut c[i]);
            for (j, &pj) in phi_poly[..deg].iter().enumerate() {
                if pj != 0 {
                    c[i - deg + j] -= &lead * pj;
                }
            }
        }
    }
    c.truncate(deg);
    c.resize(deg, BigInt::zero());
}

fn reduce_mod_phi(order: u64, c: &mut Vec<BigInt>) {
    reduce_poly_mod_phi(order, c)
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*z{}", self.order),
                _ => format!("{c}*z{}^{i}", self.order),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.add_impl(rhs, 1)
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.add_impl(rhs, -1)
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.mul_impl(rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

// monic-free Euclid over F_p; returns the gcd (nonzero polynomial)
fn poly_gcd_mod_p(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let mut a = trim(a);
    let mut b = trim(b);
    while !(b.len() == 1 && b[0] == 0) {
        let inv = super::ntheory::mod_inv(*b.last().unwrap(), p).unwrap();
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let shift = a.len() - b.len();
            let c = (*a.last().unwrap() as u128 * inv as u128 % p as u128) as u64;
            for (i, &bi) in b.iter().enumerate() {
                let t = (c as u128 * bi as u128 % p as u128) as u64;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
            a = trim(a);
            if a.len() < b.len() || (a.len() == 1 && a[0] == 0) {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(10), vec![1, -1, 1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(2530).len(), 881);
    }

    #[test]
    fn zeta_relations() {
        let z = CyclotomicNumber::zeta_pow(10, 1);
        assert_eq!(z.pow(5), CyclotomicNumber::from_int(10, -1));
        assert_eq!(z.pow(10), CyclotomicNumber::one(10));
        // ζ^4 = ζ^3 - ζ^2 + ζ - 1 in Q(ζ_10)
        let expect = CyclotomicNumber::new(10, vec![int(-1), int(1), int(-1), int(1)]).unwrap();
        assert_eq!(z.pow(4), expect);
    }

    #[test]
    fn sqrt5_from_zeta5() {
        let z = |k| CyclotomicNumber::zeta_pow(5, k);
        let s = &(&(&z(1) + &z(4)) - &z(2)) - &z(3);
        assert_eq!(&s * &s, CyclotomicNumber::from_int(5, 5));
    }

    #[test]
    fn mixed_orders_and_conjugation() {
        let i = CyclotomicNumber::zeta_pow(4, 1);
        let w = CyclotomicNumber::zeta_pow(3, 1);
        let p = &i * &w;
        assert_eq!(p.order(), 12);
        assert_eq!(p.pow(12), CyclotomicNumber::one(12));
        assert_eq!(&i * &i.conj(), CyclotomicNumber::one(4));
        let h = CyclotomicNumber::from_rational(7, &rat(1, 2));
        assert_eq!(h.to_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn units_above_p() {
        let z = CyclotomicNumber::zeta_pow(5, 1);
        assert!(z.is_unit_above(5));
        let one_minus = &CyclotomicNumber::one(5) - &z;
        assert!(!one_minus.is_unit_above(5));
        assert!(one_minus.is_unit_above(11));
        assert!(CyclotomicNumber::from_rational(3, &rat(7, 2)).is_unit_above(5));
        assert!(!CyclotomicNumber::from_int(3, 10).is_unit_above(5));
    }
}
