//! Dirichlet characters stored as exponent tables over `μ_n`, Gauss sums, and lifts of
//! residual characters through the Teichmüller character.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::arith::ntheory::{self, divisors, factor, gcd, lcm, mod_pow, primitive_root, rem};
use crate::arith::{ArithError, CyclotomicNumber, PadicEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("malformed character descriptor: {0}")]
    Descriptor(String),
    #[error("generator {0} is not a unit modulo {1}")]
    NotUnit(u64, u64),
    #[error("assignment is not multiplicative (conflict at {0})")]
    Inconsistent(u64),
    #[error("listed generators do not generate the unit group mod {0}")]
    NotGenerating(u64),
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("character value order {0} does not divide {1}")]
    OrderMismatch(u64, u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Canonical generators of `(Z/NZ)^×`: one per odd prime power, and `-1`, `5` for `8 | N`.
/// Each generator is `≡ 1` modulo the other prime-power components.
pub fn unit_group_generators(n: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for (q, e) in factor(n) {
        let qe = q.pow(e);
        let rest = n / qe;
        let lift = |g: u64| if rest == 1 { g % qe } else { ntheory::crt(g % qe, qe, 1, rest) };
        if q == 2 {
            if e >= 2 {
                gens.push((lift(qe - 1), 2));
            }
            if e >= 3 {
                gens.push((lift(5), qe / 4));
            }
        } else {
            let g = primitive_root(qe).unwrap();
            gens.push((lift(g), ntheory::euler_phi(qe)));
        }
    }
    gens
}

fn is_unit_mod(a: u64, n: u64) -> bool {
    gcd(a % n, n) == 1
}

/// A character of `(Z/NZ)^×` with values in `μ_n`, stored as `χ(a) = ζ_n^{e(a)}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    value_order: u64,
    table: Vec<Option<u64>>,
}

impl DirichletCharacter {
    fn from_table(modulus: u64, value_order: u64, table: Vec<Option<u64>>) -> Self {
        DirichletCharacter { modulus, value_order, table }
    }

    /// Builds a character from values on an arbitrary generating set, checking consistency.
    pub fn from_generator_values(modulus: u64, value_order: u64, gens: &[(u64, i64)]) -> Result<Self, CharError> {
        if modulus == 0 || value_order == 0 {
            return Err(CharError::Descriptor("modulus and order must be positive".into()));
        }
        let n = modulus;
        let mut table: Vec<Option<u64>> = vec![None; n as usize];
        let one = 1 % n;
        table[one as usize] = Some(0);
        let gens: Vec<(u64, u64)> = gens
            .iter()
            .map(|&(g, e)| {
                if !is_unit_mod(g, n) {
                    Err(CharError::NotUnit(g, n))
                } else {
                    Ok((g % n, rem(e, value_order)))
                }
            })
            .collect::<Result<_, _>>()?;
        let mut queue = VecDeque::from([one]);
        while let Some(a) = queue.pop_front() {
            let ea = table[a as usize].unwrap();
            for &(g, e) in &gens {
                let b = ((a as u128 * g as u128) % n as u128) as u64;
                let eb = (ea + e) % value_order;
                match table[b as usize] {
                    None => {
                        table[b as usize] = Some(eb);
                        queue.push_back(b);
                    }
                    Some(x) if x != eb => return Err(CharError::Inconsistent(b)),
                    Some(_) => {}
                }
            }
        }
        let filled = table.iter().filter(|x| x.is_some()).count() as u64;
        if filled != ntheory::euler_phi(n) {
            return Err(CharError::NotGenerating(n));
        }
        Ok(Self::from_table(n, value_order, table))
    }

    pub fn trivial(modulus: u64) -> Self {
        let table = (0..modulus).map(|a| if is_unit_mod(a, modulus) { Some(0) } else { None }).collect();
        Self::from_table(modulus, 1, table)
    }

    /// `a ↦ (D/a)`, periodic modulo `|D|` when `D ≡ 0, 1 mod 4`, else modulo `4|D|`.
    pub fn quadratic(d: i64) -> Result<Self, CharError> {
        if d == 0 {
            return Err(CharError::Descriptor("discriminant 0".into()));
        }
        let m = if d.rem_euclid(4) <= 1 { d.unsigned_abs() } else { 4 * d.unsigned_abs() };
        let table = (0..m)
            .map(|a| {
                if !is_unit_mod(a, m) {
                    return None;
                }
                match ntheory::kronecker(d, a.max(1)) {
                    1 => Some(0),
                    -1 => Some(1),
                    _ => None,
                }
            })
            .collect::<Vec<_>>();
        // m = 1: the trivial character
        if m == 1 {
            return Ok(Self::trivial(1));
        }
        Ok(Self::from_table(m, 2, table))
    }

    /// `ω_p^r`, with `ω_p(g) = ζ_{p-1}` for the least primitive root `g` mod `p`.
    pub fn teichmuller(p: u64, r: i64) -> Result<Self, CharError> {
        if p == 2 || !ntheory::is_prime(p) {
            return Err(CharError::BadPrime(p));
        }
        let g = primitive_root(p).unwrap();
        Self::from_generator_values(p, p - 1, &[(g, r)])
    }

    /// Parses `mod=N;gens=g:e,...;ord=n`, `triv<N>`, `quad<D>` or `teich<p>^<r>`.
    pub fn parse(s: &str) -> Result<Self, CharError> {
        let s = s.trim();
        let bad = || CharError::Descriptor(s.to_string());
        if let Some(rest) = s.strip_prefix("triv") {
            return Ok(Self::trivial(rest.parse().map_err(|_| bad())?));
        }
        if let Some(rest) = s.strip_prefix("quad") {
            return Self::quadratic(rest.parse().map_err(|_| bad())?);
        }
        if let Some(rest) = s.strip_prefix("teich") {
            let (p, r) = match rest.split_once('^') {
                Some((p, r)) => (p, r),
                None => (rest, "1"),
            };
            return Self::teichmuller(p.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?);
        }
        let mut modulus = None;
        let mut order = None;
        let mut gens = Vec::new();
        for part in s.split(';').filter(|x| !x.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "mod" => modulus = Some(v.trim().parse::<u64>().map_err(|_| bad())?),
                "ord" => order = Some(v.trim().parse::<u64>().map_err(|_| bad())?),
                "gens" => {
                    for item in v.split(',').filter(|x| !x.trim().is_empty()) {
                        let (g, e) = item.split_once(':').ok_or_else(bad)?;
                        gens.push((
                            g.trim().parse::<u64>().map_err(|_| bad())?,
                            e.trim().parse::<i64>().map_err(|_| bad())?,
                        ));
                    }
                }
                _ => return Err(bad()),
            }
        }
        let modulus = modulus.ok_or_else(bad)?;
        let order = order.unwrap_or(1);
        Self::from_generator_values(modulus, order, &gens)
    }

    /// Canonical descriptor, on the generators of [`unit_group_generators`].
    pub fn descriptor(&self) -> String {
        let gens: Vec<String> = unit_group_generators(self.modulus)
            .into_iter()
            .map(|(g, _)| format!("{}:{}", g, self.exponent(g as i64).unwrap()))
            .collect();
        format!("mod={};gens={};ord={}", self.modulus, gens.join(","), self.value_order)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `n` with all values in `μ_n ⊂ Q(ζ_n)`.
    pub fn value_order(&self) -> u64 {
        self.value_order
    }

    /// `e` with `χ(a) = ζ_n^e`, or `None` when `gcd(a, N) > 1`.
    pub fn exponent(&self, a: i64) -> Option<u64> {
        self.table[rem(a, self.modulus) as usize]
    }

    pub fn eval(&self, a: i64) -> CyclotomicNumber {
        match self.exponent(a) {
            Some(e) => CyclotomicNumber::zeta_pow(self.value_order, e as i64),
            None => CyclotomicNumber::zero(self.value_order),
        }
    }

    /// Exact order of the character as a group element.
    pub fn order(&self) -> u64 {
        let g = self.table.iter().flatten().fold(self.value_order, |acc, &e| gcd(acc, e));
        self.value_order / g
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().flatten().all(|&e| e == 0)
    }

    /// `χ(-1)`.
    pub fn parity(&self) -> i64 {
        let e = self.exponent(-1).unwrap();
        if e == 0 {
            1
        } else {
            debug_assert_eq!(2 * e, self.value_order);
            -1
        }
    }

    /// Least `d | N` such that `χ` is trivial on units `≡ 1 mod d`.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus;
        for d in divisors(n) {
            let ok = (0..n / d).all(|k| {
                let a = 1 + k * d;
                match self.table[(a % n) as usize] {
                    Some(e) => e == 0,
                    None => true,
                }
            });
            if ok {
                return d;
            }
        }
        n
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        let c = self.conductor();
        self.restrict_to(c)
    }

    // requires that the character factors through (Z/dZ)^×
    fn restrict_to(&self, d: u64) -> Self {
        let table = (0..d)
            .map(|b| {
                if !is_unit_mod(b, d) {
                    return None;
                }
                let mut a = b;
                while !is_unit_mod(a, self.modulus) {
                    a += d;
                }
                self.table[(a % self.modulus) as usize]
            })
            .collect();
        Self::from_table(d, self.value_order, table)
    }

    /// The character modulo a multiple `m` of the modulus.
    pub fn extend(&self, m: u64) -> Self {
        assert_eq!(m % self.modulus, 0, "extension modulus must be a multiple");
        let table = (0..m)
            .map(|a| if is_unit_mod(a, m) { self.table[(a % self.modulus) as usize] } else { None })
            .collect();
        Self::from_table(m, self.value_order, table)
    }

    /// Rewrites values over `μ_m` for a multiple `m` of the value order.
    pub fn with_value_order(&self, m: u64) -> Result<Self, CharError> {
        if m % self.value_order != 0 {
            return Err(CharError::OrderMismatch(self.value_order, m));
        }
        let f = m / self.value_order;
        Ok(Self::from_table(self.modulus, m, self.table.iter().map(|e| e.map(|e| e * f)).collect()))
    }

    /// Product on `lcm` of the moduli, over `μ_{lcm}` of the value orders.
    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.modulus, other.modulus);
        let n = lcm(self.value_order, other.value_order);
        let a = self.extend(m).with_value_order(n).unwrap();
        let b = other.extend(m).with_value_order(n).unwrap();
        let table = a.table.iter().zip(&b.table).map(|(x, y)| Some((x.as_ref()? + y.as_ref()?) % n)).collect();
        Self::from_table(m, n, table)
    }

    pub fn pow(&self, k: i64) -> Self {
        let n = self.value_order;
        let kk = rem(k, n);
        let table = self.table.iter().map(|e| e.map(|e| (e * kk) % n)).collect();
        Self::from_table(self.modulus, n, table)
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }

    /// Same values, as a test of equality of the underlying functions on `Z`.
    pub fn same_function(&self, other: &Self) -> bool {
        let m = lcm(self.modulus, other.modulus);
        let n = lcm(self.value_order, other.value_order);
        let a = self.extend(m).with_value_order(n).unwrap();
        let b = other.extend(m).with_value_order(n).unwrap();
        a.table == b.table
    }

    /// `G(χ0) = Σ_{a mod C} χ0(a) ζ_C^a` for the primitive `χ0` of conductor `C`, in `Q(ζ_{lcm(C, n)})`.
    pub fn gauss_sum(&self) -> CyclotomicNumber {
        let chi = self.primitive();
        let c = chi.modulus;
        if c == 1 {
            return CyclotomicNumber::one(1);
        }
        let l = lcm(c, chi.value_order);
        let sv = l / chi.value_order;
        let sc = l / c;
        let counts: Vec<(u64, i64)> = (0..c)
            .filter_map(|a| chi.table[a as usize].map(|e| ((e * sv + a * sc) % l, 1)))
            .collect();
        CyclotomicNumber::from_exponent_counts(l, &counts)
    }

    /// `χ = χ_p · χ'` with `χ_p` modulo the `p`-part of `N` and `χ'` modulo the prime-to-`p` part.
    pub fn decompose_p_part(&self, p: u64) -> (Self, Self) {
        let n = self.modulus;
        let pk = p.pow(ntheory::valuation(n, p));
        let rest = n / pk;
        let part = |m: u64, pick: &dyn Fn(u64) -> u64| -> Self {
            let table = (0..m)
                .map(|a| if is_unit_mod(a, m) { self.table[(pick(a) % n) as usize] } else { None })
                .collect();
            Self::from_table(m, self.value_order, table)
        };
        let chi_p = part(pk, &|a| if rest == 1 { a } else { ntheory::crt(a % pk, pk, 1, rest) });
        let chi_r = part(rest, &|b| if pk == 1 { b } else { ntheory::crt(1 % pk, pk, b % rest, rest) });
        (chi_p, chi_r)
    }

    /// Checks `G(χ) = χ_p(C') χ'(C_p) G(χ_p) G(χ')` exactly, with `C_p`, `C'` the conductors of the parts.
    pub fn gauss_factorization_check(&self, p: u64) -> bool {
        let chi = self.primitive();
        let (cp, cr) = chi.decompose_p_part(p);
        let (cp, cr) = (cp.primitive(), cr.primitive());
        let lhs = chi.gauss_sum();
        let rhs = &(&cp.eval(cr.modulus as i64) * &cr.eval(cp.modulus as i64)) * &(&cp.gauss_sum() * &cr.gauss_sum());
        (&lhs - &rhs).is_zero()
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirichletCharacter({})", self.descriptor())
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

/// A character `(Z/vZ)^× → F_q^×`, `q = p^r`, stored as exponents of a fixed generator `ε` of `F_q^×`.
///
/// For `r = 1`, `ε` is the least primitive root mod `p`, which is also the residue of the Teichmüller
/// image of `ζ_{p-1}` under [`PadicEmbedding::teichmuller`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualCharacter {
    pub p: u64,
    pub r: u32,
    inner: DirichletCharacter,
}

impl ResidualCharacter {
    /// Values `ε^{e}` on a generating set of `(Z/vZ)^×`.
    pub fn new(modulus: u64, p: u64, r: u32, gens: &[(u64, i64)]) -> Result<Self, CharError> {
        if p == 2 || !ntheory::is_prime(p) {
            return Err(CharError::BadPrime(p));
        }
        let q1 = p.pow(r) - 1;
        let inner = DirichletCharacter::from_generator_values(modulus, q1, gens)?;
        Ok(ResidualCharacter { p, r, inner })
    }

    /// Reduction of a character whose value order divides `p - 1`, through the Teichmüller embedding.
    pub fn reduce(chi: &DirichletCharacter, p: u64) -> Result<Self, CharError> {
        if p == 2 || !ntheory::is_prime(p) {
            return Err(CharError::BadPrime(p));
        }
        let inner = chi.with_value_order(p - 1)?;
        Ok(ResidualCharacter { p, r: 1, inner })
    }

    pub fn modulus(&self) -> u64 {
        self.inner.modulus
    }

    pub fn field_order(&self) -> u64 {
        self.p.pow(self.r)
    }

    /// Exponent of `ε` at `a`.
    pub fn exponent(&self, a: i64) -> Option<u64> {
        self.inner.exponent(a)
    }

    /// Value in `F_p` for `r = 1`.
    pub fn value_mod_p(&self, a: i64) -> Option<u64> {
        assert_eq!(self.r, 1, "value_mod_p needs q = p");
        let g = primitive_root(self.p).unwrap();
        self.exponent(a).map(|e| mod_pow(g, e, self.p))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.p, self.r), (other.p, other.r));
        ResidualCharacter { p: self.p, r: self.r, inner: self.inner.mul(&other.inner) }
    }

    pub fn pow(&self, k: i64) -> Self {
        ResidualCharacter { p: self.p, r: self.r, inner: self.inner.pow(k) }
    }
}

/// Which residual character is lifted when building `ξ1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum LiftTarget {
    /// Lift `ξ̄1` itself.
    Direct,
    /// Lift `ξ̄1 ω̄^{1-l}` and multiply back by `ω^{l-1}`.
    OmegaTwisted { weight: u32 },
}

/// Teichmüller lift of `χ̄`: same exponents over `μ_{q-1}`, on the modulus `v0·p^{min(a,1)}`.
pub fn lift_residual_character(chi_bar: &ResidualCharacter) -> DirichletCharacter {
    let v = chi_bar.modulus();
    let a = ntheory::valuation(v, chi_bar.p);
    let v0 = v / chi_bar.p.pow(a);
    let target = v0 * chi_bar.p.pow(a.min(1));
    let c = chi_bar.inner.conductor();
    debug_assert_eq!(target % c, 0);
    chi_bar.inner.primitive().extend(target)
}

/// Lift of `ξ̄1` along the chosen target; both targets give the same `ξ1` since the lift is multiplicative.
pub fn lift_with_target(chi_bar: &ResidualCharacter, target: LiftTarget) -> Result<DirichletCharacter, CharError> {
    match target {
        LiftTarget::Direct => Ok(lift_residual_character(chi_bar)),
        LiftTarget::OmegaTwisted { weight } => {
            if chi_bar.r != 1 {
                return Err(CharError::OrderMismatch(chi_bar.field_order() - 1, chi_bar.p - 1));
            }
            let p = chi_bar.p;
            let omega = DirichletCharacter::teichmuller(p, 1)?;
            let omega_bar = ResidualCharacter::reduce(&omega, p)?;
            let shift = 1 - weight as i64;
            let twisted = chi_bar.mul(&omega_bar.pow(shift));
            let lifted = lift_residual_character(&twisted);
            let back = lifted.mul(&omega.pow(-shift));
            Ok(back.primitive().extend(lift_residual_character(chi_bar).modulus()))
        }
    }
}

/// Reduction of `ξ(a)` at the prime fixed by `e` (Teichmüller embedding of `Q(ζ_{p-1})`).
pub fn reduce_value(chi: &DirichletCharacter, a: i64, e: &PadicEmbedding) -> Result<Option<u64>, CharError> {
    if chi.exponent(a).is_none() {
        return Ok(None);
    }
    let z = chi.eval(a);
    let v = crate::arith::embed_cyclotomic(&z, e)?;
    Ok(Some(v.reduce_mod_p()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn conductors() {
        assert_eq!(DirichletCharacter::trivial(12).conductor(), 1);
        assert_eq!(DirichletCharacter::teichmuller(11, 1).unwrap().conductor(), 11);
        assert_eq!(DirichletCharacter::quadratic(-23).unwrap().conductor(), 23);
        assert_eq!(DirichletCharacter::quadratic(-4).unwrap().conductor(), 4);
        let chi = DirichletCharacter::quadratic(-23).unwrap().extend(23 * 11);
        assert_eq!(chi.conductor(), 23);
    }

    #[test]
    fn teichmuller_values() {
        let w = DirichletCharacter::teichmuller(11, 1).unwrap();
        assert_eq!(w.eval(2), CyclotomicNumber::zeta_pow(10, 1));
        assert_eq!(w.parity(), -1);
        assert!(DirichletCharacter::teichmuller(11, 0).unwrap().is_trivial());
        let w5 = DirichletCharacter::teichmuller(11, 5).unwrap();
        for a in 1..11i64 {
            let euler = if mod_pow(a as u64, 5, 11) == 1 { 1 } else { -1 };
            assert_eq!(w5.eval(a).to_rational(), Some(int(euler)));
        }
        for r in 0..10i64 {
            let o = DirichletCharacter::teichmuller(11, r).unwrap().order();
            assert_eq!(o, 10 / gcd(r as u64, 10));
        }
    }

    #[test]
    fn gauss_sums() {
        assert!(DirichletCharacter::trivial(7).gauss_sum().is_one());
        let q5 = DirichletCharacter::quadratic(5).unwrap();
        let direct = CyclotomicNumber::from_exponent_counts(5, &[(1, 1), (4, 1), (2, -1), (3, -1)]);
        assert_eq!((&q5.gauss_sum() - &direct).is_zero(), true);
        let sq = &q5.gauss_sum() * &q5.gauss_sum();
        assert_eq!(sq.to_rational(), Some(int(5)));
        let chi = DirichletCharacter::quadratic(-23).unwrap();
        let g = chi.gauss_sum();
        assert_eq!((&g * &chi.conj().gauss_sum()).to_rational(), Some(int(-23)));
    }

    #[test]
    fn decomposition_and_factorization() {
        let w = DirichletCharacter::teichmuller(11, 1).unwrap();
        let q = DirichletCharacter::quadratic(-23).unwrap();
        let chi = w.mul(&q);
        assert_eq!(chi.modulus(), 253);
        let (cp, cr) = chi.decompose_p_part(11);
        assert!(cp.same_function(&w));
        assert!(cr.same_function(&q));
        assert_eq!(chi.conductor(), cp.conductor() * cr.conductor());
        assert!(w.gauss_factorization_check(11));
        assert!(q.gauss_factorization_check(11));
    }

    #[test]
    fn descriptors_roundtrip() {
        // 24 ≡ 2 mod 11, ≡ 1 mod 23; 166 ≡ 1 mod 11, ≡ 5 mod 23
        let chi = DirichletCharacter::parse("mod=253;gens=24:1,166:5;ord=10").unwrap();
        let w = DirichletCharacter::teichmuller(11, 1).unwrap();
        let q = DirichletCharacter::quadratic(-23).unwrap();
        assert!(chi.same_function(&w.mul(&q)));
        let w = DirichletCharacter::parse("teich11^3").unwrap();
        let back = DirichletCharacter::parse(&w.descriptor()).unwrap();
        assert_eq!(w, back);
        assert!(DirichletCharacter::parse("mod=11;gens=2:1;ord=3").is_err());
        assert!(DirichletCharacter::parse("mod=11;gens=10:1;ord=2").is_err());
        assert_eq!(DirichletCharacter::parse("quad-23").unwrap().parity(), -1);
    }

    #[test]
    fn residual_lifts() {
        let triv = ResidualCharacter::new(1, 11, 1, &[]).unwrap();
        assert!(lift_residual_character(&triv).is_trivial());
        let w = DirichletCharacter::teichmuller(11, 1).unwrap();
        let wbar = ResidualCharacter::reduce(&w, 11).unwrap();
        assert!(lift_residual_character(&wbar).same_function(&w));
        let q = DirichletCharacter::quadratic(-23).unwrap();
        let qbar = ResidualCharacter::reduce(&q, 11).unwrap();
        let lifted = lift_residual_character(&qbar);
        assert!(lifted.same_function(&q));
        let e = PadicEmbedding::teichmuller(10, 11, 4).unwrap();
        for a in 1..23i64 {
            let expect = if q.exponent(a) == Some(0) { 1 } else { 10 };
            assert_eq!(reduce_value(&lifted, a, &e).unwrap(), Some(expect));
            assert_eq!(qbar.value_mod_p(a), Some(expect));
        }
        let a = lift_with_target(&wbar, LiftTarget::Direct).unwrap();
        let b = lift_with_target(&wbar, LiftTarget::OmegaTwisted { weight: 2 }).unwrap();
        assert!(a.same_function(&b));
    }
}
