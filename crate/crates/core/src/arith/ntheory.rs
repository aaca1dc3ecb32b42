//! Small-integer number theory on `u64`.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Exponent of `p` in `n` (`n > 0`).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut r: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            r = r * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    r as u64
}

/// Reduces a signed integer into `[0, m)`.
pub fn rem(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i64).extended_gcd(&(m as i64));
    if e.gcd != 1 {
        return None;
    }
    Some(rem(e.x, m))
}

/// Multiplicative order of `a` modulo `m`; `None` if `a` is not a unit.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if gcd(a, m) != 1 {
        return None;
    }
    let phi = euler_phi(m);
    let mut ord = phi;
    for (q, _) in factor(phi) {
        while ord % q == 0 && mod_pow(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    Some(ord)
}

/// Least primitive root modulo `m`, where `m` is 2, 4, `q^k` or `2q^k` for an odd prime `q`.
pub fn primitive_root(m: u64) -> Option<u64> {
    if m == 1 || m == 2 {
        return Some(1);
    }
    let phi = euler_phi(m);
    (2..m).find(|&g| mult_order(g, m) == Some(phi))
}

/// Chinese remainder: `x ≡ a mod m`, `x ≡ b mod n` with coprime moduli.
pub fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    debug_assert_eq!(gcd(m, n), 1);
    let mn = (m as u128) * (n as u128);
    let inv = mod_inv(m % n.max(1), n).unwrap_or(0) as u128;
    let diff = ((b as i128 - a as i128).rem_euclid(n as i128)) as u128;
    let t = diff * inv % (n as u128);
    ((a as u128 + (m as u128) * t) % mn) as u64
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Kronecker symbol `(d / n)` for `n ≥ 1`.
pub fn kronecker(d: i64, n: u64) -> i64 {
    let mut n = n;
    let mut result = 1i64;
    while n % 2 == 0 {
        n /= 2;
        let r = d.rem_euclid(8);
        if r == 0 || r == 2 || r == 4 || r == 6 {
            return 0;
        }
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    if n == 1 {
        return result;
    }
    result * jacobi(d.rem_euclid(n as i64) as u64, n)
}

/// Jacobi symbol `(a / n)` for odd `n`.
pub fn jacobi(a: u64, n: u64) -> i64 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Index of Γ0(N) in SL2(Z): `N ∏_{ℓ | N} (1 + 1/ℓ)`.
pub fn gamma0_index(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p + 1))
}

/// Sum of divisors `σ_k(n)` as an exact integer (small `k`).
pub fn sigma(n: u64, k: u32) -> num_bigint::BigInt {
    divisors(n)
        .into_iter()
        .map(|d| num_bigint::BigInt::from(d).pow(k))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_3003125() {
        assert_eq!(factor(3003125), vec![(5, 5), (31, 2)]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(11), Some(2));
        assert_eq!(primitive_root(5), Some(2));
        assert_eq!(primitive_root(23), Some(5));
        assert_eq!(primitive_root(121), Some(2));
        assert_eq!(primitive_root(8), None);
    }

    #[test]
    fn kronecker_minus_23() {
        for a in 1..23u64 {
            let leg = if mod_pow(a, 11, 23) == 1 { 1 } else { -1 };
            assert_eq!(kronecker(-23, a), leg, "a = {a}");
        }
        assert_eq!(kronecker(-23, 23), 0);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(8, 3), -1);
    }

    #[test]
    fn crt_small() {
        let x = crt(3, 11, 5, 23);
        assert_eq!(x % 11, 3);
        assert_eq!(x % 23, 5);
    }

    #[test]
    fn index_and_divisors() {
        assert_eq!(gamma0_index(11), 12);
        assert_eq!(gamma0_index(52), 84);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(2530), 880);
    }
}
