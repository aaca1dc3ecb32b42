//! The projective line over `Z/N`, indexing Manin symbols `(c:d)`.

use std::collections::HashMap;

use crate::arith::ntheory::{divisors, gcd, mod_inv};

fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Canonical form of `(u:v)` in `P^1(Z/N)`, or `None` if `gcd(u, v, N) > 1`.
///
/// Returns `(u', v', s)` with `(u', v') ≡ s·(u, v)` for a unit `s`; `u'` divides `N` (or is zero).
pub fn p1_normalize(n: u64, u: i64, v: i64) -> Option<(u64, u64, u64)> {
    if n == 1 {
        return Some((0, 0, 0));
    }
    let ni = n as i64;
    let u = u.rem_euclid(ni);
    let v = v.rem_euclid(ni);
    if u == 0 {
        return (gcd(v as u64, n) == 1).then(|| (0, 1, mod_inv(v as u64, n).unwrap()));
    }
    let (g, s0, _) = xgcd(u, ni);
    let mut s = s0.rem_euclid(ni);
    if gcd(g as u64, v as u64) != 1 {
        return None;
    }
    if g != 1 {
        let d = ni / g;
        while gcd(s as u64, n) != 1 {
            s = (s + d) % ni;
        }
    }
    // now s·u ≡ g
    let mut v = ((s as i128 * v as i128) % ni as i128) as i64;
    let mut min_v = v;
    let mut min_t = 1i64;
    if g != 1 {
        let ng = ni / g;
        let vng = ((v as i128 * ng as i128) % ni as i128) as i64;
        let mut t = 1i64;
        for _ in 2..=g {
            v = (v + vng) % ni;
            t = (t + ng) % ni;
            if v < min_v && gcd(t as u64, n) == 1 {
                min_v = v;
                min_t = t;
            }
        }
    }
    let scal = ((s as i128 * min_t as i128) % ni as i128) as u64;
    Some((g as u64, min_v as u64, scal))
}

/// Enumerated `P^1(Z/N)` with canonical representatives and a lookup index.
#[derive(Debug, Clone)]
pub struct P1List {
    n: u64,
    reps: Vec<(u64, u64)>,
    index: HashMap<(u64, u64), usize>,
}

impl P1List {
    pub fn new(n: u64) -> Self {
        let mut reps = Vec::new();
        let mut index = HashMap::new();
        if n == 1 {
            reps.push((0, 0));
            index.insert((0, 0), 0);
            return P1List { n, reps, index };
        }
        let mut push = |c: (u64, u64)| {
            if !index.contains_key(&c) {
                index.insert(c, reps.len());
                reps.push(c);
            }
        };
        push((0, 1));
        for g in divisors(n) {
            if g == n {
                continue;
            }
            for v in 0..n {
                if let Some((a, b, _)) = p1_normalize(n, g as i64, v as i64) {
                    push((a, b));
                }
            }
        }
        P1List { n, reps, index }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[(u64, u64)] {
        &self.reps
    }

    /// Index of the class of `(c:d)`.
    pub fn index_of(&self, c: i64, d: i64) -> Option<usize> {
        let (a, b, _) = p1_normalize(self.n, c, d)?;
        self.index.get(&(a, b)).copied()
    }
}

/// A matrix `[a b; c d]` in `SL2(Z)` whose bottom row reduces to `(c:d)` modulo `N`.
pub fn lift_to_sl2z(c: u64, d: u64, n: u64) -> Option<[i64; 4]> {
    if n == 1 {
        return Some([1, 0, 0, 1]);
    }
    let ni = n as i64;
    let c = if c == 0 { ni } else { c as i64 };
    let d0 = d as i64;
    if gcd(gcd(c as u64, d0 as u64), n) != 1 {
        return None;
    }
    let mut k = 0i64;
    let d = loop {
        let dd = d0 + k * ni;
        if gcd(c as u64, dd as u64) == 1 {
            break dd;
        }
        k += 1;
    };
    let (_, s, t) = xgcd(d, c);
    // s·d + t·c = 1 → a = s, b = -t
    Some([s, -t, c, d])
}

/// Number of `Γ0(N)`-classes of cusps.
pub fn cusp_count(n: u64) -> usize {
    divisors(n).iter().map(|&d| crate::arith::ntheory::euler_phi(gcd(d, n / d)) as usize).sum()
}

/// Class invariant of the cusp `a/c` (coprime `a`, `c`) under `Γ0(N)`.
pub fn cusp_class(a: i64, c: i64, n: u64) -> (u64, u64) {
    let d = gcd(c.unsigned_abs() % n, n);
    let d = if c == 0 { n } else { d };
    let m = gcd(d, n / d) as i64;
    let cd = if c == 0 { 0 } else { c / d as i64 };
    let x = ((a as i128 * cd as i128).rem_euclid(m as i128)) as u64;
    (d, x)
}
