use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{CyclotomicNumber, Rational};
use crate::dirichlet::DirichletCharacter;

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn cache() -> &'static Mutex<Vec<Rational>> {
    static C: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// `B_n` with `B_1 = -1/2`.
pub fn bernoulli_number(n: u64) -> Rational {
    let mut b = cache().lock().unwrap();
    while b.len() as u64 <= n {
        let m = b.len() as u64;
        // Σ_{k<m} C(m+1, k) B_k + (m+1) B_m = 0
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(m + 1, k as u64)) * bk;
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b[n as usize].clone()
}

/// Coefficients of `B_n(x)`, low to high.
pub fn bernoulli_polynomial(n: u64) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n as usize + 1];
    for k in 0..=n {
        out[(n - k) as usize] = Rational::from_integer(binomial(n, k)) * bernoulli_number(k);
    }
    out
}

fn eval_poly(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// `B_{l,θ} = f^{l-1} Σ_{a=1}^{f} θ(a) B_l(a/f)` over the modulus `f` of `θ`.
pub fn generalized_bernoulli(theta: &DirichletCharacter, l: u64) -> CyclotomicNumber {
    let f = theta.modulus();
    let n = theta.value_order();
    let bl = bernoulli_polynomial(l);
    let mut by_exp: HashMap<u64, Rational> = HashMap::new();
    for a in 1..=f {
        if let Some(e) = theta.exponent(a as i64) {
            let x = Rational::new(BigInt::from(a), BigInt::from(f));
            *by_exp.entry(e).or_insert_with(Rational::zero) += eval_poly(&bl, &x);
        }
    }
    let scale = Rational::from_integer(BigInt::from(f).pow(l as u32 - 1));
    let mut acc = CyclotomicNumber::zero(n);
    let mut keys: Vec<_> = by_exp.into_iter().collect();
    keys.sort_by_key(|(e, _)| *e);
    for (e, w) in keys {
        acc = &acc + &CyclotomicNumber::zeta_pow(n, e as i64).scale(&(&w * &scale));
    }
    acc
}

/// `L(1-l, θ) = -B_{l,θ}/l`. For an imprimitive `θ` this is the L-value of `θ` on its own modulus,
/// i.e. with the Euler factors at primes dividing the modulus removed.
pub fn l_value_nonpositive(theta: &DirichletCharacter, l: u64) -> CyclotomicNumber {
    assert!(l >= 1, "l must be positive");
    generalized_bernoulli(theta, l).scale(&Rational::new(BigInt::from(-1), BigInt::from(l)))
}

/// Memo for repeated Eisenstein constant terms.
pub(crate) fn cached_l_value(theta: &DirichletCharacter, l: u64) -> CyclotomicNumber {
    static M: OnceLock<Mutex<HashMap<(String, u64), CyclotomicNumber>>> = OnceLock::new();
    let key = (theta.descriptor(), l);
    let m = M.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = m.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = l_value_nonpositive(theta, l);
    m.lock().unwrap().insert(key, v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn bernoulli_table() {
        let table = [
            (0, rat(1, 1)),
            (1, rat(-1, 2)),
            (2, rat(1, 6)),
            (4, rat(-1, 30)),
            (6, rat(1, 42)),
            (8, rat(-1, 30)),
            (10, rat(5, 66)),
            (12, rat(-691, 2730)),
        ];
        for (n, b) in table {
            assert_eq!(bernoulli_number(n), b, "B_{n}");
        }
        assert_eq!(bernoulli_number(3), int(0));
    }

    #[test]
    fn zeta_values() {
        let one = DirichletCharacter::trivial(1);
        assert_eq!(l_value_nonpositive(&one, 2).to_rational(), Some(rat(-1, 12)));
        assert_eq!(l_value_nonpositive(&one, 12).to_rational(), Some(rat(691, 32760)));
        assert_eq!(l_value_nonpositive(&one, 1).to_rational(), Some(rat(-1, 2)));
        // imprimitive: (1 - p) ζ(-1)
        let one11 = DirichletCharacter::trivial(11);
        assert_eq!(l_value_nonpositive(&one11, 2).to_rational(), Some(rat(10, 12)));
    }

    #[test]
    fn parity_vanishing() {
        let odd = DirichletCharacter::quadratic(-23).unwrap();
        assert!(l_value_nonpositive(&odd, 2).is_zero());
        // L(0, χ_{-23}) = -B_{1,χ} = h = 3
        assert_eq!(l_value_nonpositive(&odd, 1).to_rational(), Some(int(3)));
        let w = DirichletCharacter::teichmuller(5, 1).unwrap();
        assert!(l_value_nonpositive(&w, 4).is_zero());
    }
}
