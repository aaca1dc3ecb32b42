//! Arbitrary-precision rationals and p-adic valuations of them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ntheory, ArithError};

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A valuation that may be `+∞` (the valuation of zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(x)`, with `Valuation::Infinity` for `x = 0`.
pub fn padic_valuation(x: &Rational, p: u64) -> Result<Valuation, ArithError> {
    if !ntheory::is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let vn = int_valuation(x.numer(), p).unwrap_or(0);
    let vd = int_valuation(x.denom(), p).unwrap_or(0);
    Ok(Valuation::Finite(vn - vd))
}

/// Positive gcd of the numerators divided by the lcm of the denominators, so
/// that `v / content(v)` is a primitive integer vector. Zero for a zero vector.
pub fn content(values: &[Rational]) -> Rational {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        g = g.gcd(v.numer());
        l = l.lcm(v.denom());
    }
    if g.is_zero() {
        return Rational::zero();
    }
    Rational::new(g, l)
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&int(1), 11).unwrap(), Valuation::Finite(0));
        assert_eq!(padic_valuation(&int(3003125), 11).unwrap(), Valuation::Finite(0));
        assert_eq!(padic_valuation(&int(3003125), 5).unwrap(), Valuation::Finite(5));
        assert_eq!(padic_valuation(&rat(3, 50), 5).unwrap(), Valuation::Finite(-2));
        assert_eq!(padic_valuation(&int(0), 5).unwrap(), Valuation::Infinity);
        assert!(padic_valuation(&int(3), 6).is_err());
    }

    #[test]
    fn trial_division_oracle() {
        // independent count of factors of 5 in 3003125
        let mut n = 3003125u64;
        let mut k = 0;
        while n % 5 == 0 {
            n /= 5;
            k += 1;
        }
        assert_eq!(padic_valuation(&int(3003125), 5).unwrap(), Valuation::Finite(k));
        assert_eq!(n, 961);
    }

    #[test]
    fn content_of_vector() {
        let v = vec![rat(2, 3), rat(-4, 9), int(0)];
        assert_eq!(content(&v), rat(2, 9));
        assert_eq!(parse_rational("-7/21"), Some(rat(-1, 3)));
    }
}
