use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::linalg::{solve_relations, QMatrix, SparseRow};
use super::p1::{cusp_class, cusp_count, lift_to_sl2z, P1List};
use super::ModSymError;
use crate::arith::ntheory::{gcd, is_prime, kronecker, prime_divisors};
use crate::arith::Rational;

/// Weight-2 modular symbols for `Γ0(N)` in the Manin presentation.
#[derive(Debug)]
pub struct ModularSymbolSpace {
    pub(crate) p1: P1List,
    pub(crate) free: Vec<usize>,
    pub(crate) m2b: Vec<SparseRow>,
    hecke: Mutex<BTreeMap<u64, Arc<QMatrix>>>,
}

/// Genus of `X0(N)`.
pub fn genus_x0(n: u64) -> u64 {
    let mu = crate::arith::ntheory::gamma0_index(n) as i64;
    let ps = prime_divisors(n);
    let nu2: i64 = if n % 4 == 0 { 0 } else { ps.iter().map(|&p| 1 + kronecker(-4, p) as i64).product() };
    let nu3: i64 = if n % 9 == 0 { 0 } else { ps.iter().map(|&p| 1 + kronecker(-3, p) as i64).product() };
    let c = cusp_count(n) as i64;
    // 12g = 12 + μ - 3ν2 - 4ν3 - 6c
    ((12 + mu - 3 * nu2 - 4 * nu3 - 6 * c) / 12) as u64
}

/// The three-term relation orbit of `(c:d)`.
fn tau_orbit(c: i64, d: i64) -> [(i64, i64); 3] {
    [(c, d), (d, -c - d), (-c - d, c)]
}

impl ModularSymbolSpace {
    pub(crate) fn from_parts(p1: P1List, free: Vec<usize>, m2b: Vec<SparseRow>) -> Self {
        ModularSymbolSpace { p1, free, m2b, hecke: Mutex::new(BTreeMap::new()) }
    }

    /// Builds the relation quotient and checks its dimension against `2g + c - 1`.
    pub fn build(n: u64) -> Result<Self, ModSymError> {
        if n == 0 {
            return Err(ModSymError::Level(n));
        }
        let p1 = P1List::new(n);
        let mut rels = Vec::with_capacity(2 * p1.len());
        for (i, &(c, d)) in p1.reps().iter().enumerate() {
            let (c, d) = (c as i64, d as i64);
            let mut r = SparseRow::new();
            *r.entry(i).or_insert_with(Rational::zero) += Rational::one();
            *r.entry(p1.index_of(d, -c).unwrap()).or_insert_with(Rational::zero) += Rational::one();
            rels.push(r);
            let mut r = SparseRow::new();
            for (cc, dd) in tau_orbit(c, d) {
                *r.entry(p1.index_of(cc, dd).unwrap()).or_insert_with(Rational::zero) += Rational::one();
            }
            rels.push(r);
        }
        let (free, m2b) = solve_relations(p1.len(), &rels);
        let space = Self::from_parts(p1, free, m2b);
        let expected = if n == 1 { 0 } else { 2 * genus_x0(n) as usize + cusp_count(n) - 1 };
        if space.dimension() != expected {
            return Err(ModSymError::Dimension { got: space.dimension(), expected });
        }
        Ok(space)
    }

    pub fn level(&self) -> u64 {
        self.p1.level()
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn generators(&self) -> &[(u64, u64)] {
        self.p1.reps()
    }

    /// Indices of the Manin generators chosen as quotient basis.
    pub fn quotient_basis(&self) -> &[usize] {
        &self.free
    }

    /// Coordinates of the Manin symbol `(c:d)` in the quotient basis.
    pub fn manin_coords(&self, c: i64, d: i64) -> Option<&SparseRow> {
        self.p1.index_of(c, d).map(|i| &self.m2b[i])
    }

    /// Coordinates of generator `i`.
    pub fn generator_coords(&self, i: usize) -> &SparseRow {
        &self.m2b[i]
    }

    fn image_matrix(&self, f: impl Fn(i64, i64) -> Vec<(i64, i64)>) -> QMatrix {
        let n = self.level();
        let dim = self.dimension();
        let mut m = QMatrix::zeros(dim, dim);
        for (j, &fi) in self.free.iter().enumerate() {
            let (c, d) = self.p1.reps()[fi];
            for (u, v) in f(c as i64, d as i64) {
                if n > 1 && gcd(gcd(u.unsigned_abs(), v.unsigned_abs()), n) != 1 {
                    continue;
                }
                let k = self.p1.index_of(u, v).unwrap();
                for (bi, co) in &self.m2b[k] {
                    m.add_to(*bi, j, co);
                }
            }
        }
        m
    }

    /// `T_ℓ` (or `U_ℓ` when `ℓ | N`) on the quotient, columns indexed by basis symbols.
    pub fn hecke_operator(&self, l: u64) -> Result<Arc<QMatrix>, ModSymError> {
        if !is_prime(l) {
            return Err(ModSymError::NotPrime(l));
        }
        if let Some(m) = self.hecke.lock().unwrap().get(&l) {
            return Ok(m.clone());
        }
        let mats = merel_matrices(l);
        let m = Arc::new(self.image_matrix(|c, d| {
            mats.iter().map(|&[a, b, cc, dd]| (c * a + d * cc, c * b + d * dd)).collect()
        }));
        self.hecke.lock().unwrap().insert(l, m.clone());
        Ok(m)
    }

    pub(crate) fn cached_hecke(&self) -> BTreeMap<u64, Arc<QMatrix>> {
        self.hecke.lock().unwrap().clone()
    }

    pub(crate) fn insert_hecke(&self, l: u64, m: QMatrix) {
        self.hecke.lock().unwrap().insert(l, Arc::new(m));
    }

    /// The star involution `(c:d) ↦ (-c:d)`.
    pub fn star_matrix(&self) -> QMatrix {
        self.image_matrix(|c, d| vec![(-c, d)])
    }

    /// Boundary map to cusp divisors; rows indexed by cusp classes in a fixed order.
    pub fn boundary_matrix(&self) -> QMatrix {
        let n = self.level();
        let dim = self.dimension();
        let mut classes = BTreeSet::new();
        let mut images = Vec::with_capacity(dim);
        for &fi in &self.free {
            let (c, d) = self.p1.reps()[fi];
            let [a, b, cc, dd] = lift_to_sl2z(c, d, n).unwrap();
            let x = cusp_class(a, cc, n);
            let y = cusp_class(b, dd, n);
            classes.insert(x);
            classes.insert(y);
            images.push((x, y));
        }
        let order: Vec<_> = classes.into_iter().collect();
        let mut m = QMatrix::zeros(order.len(), dim);
        for (j, (x, y)) in images.into_iter().enumerate() {
            if x == y {
                continue;
            }
            let ix = order.binary_search(&x).unwrap();
            let iy = order.binary_search(&y).unwrap();
            m.add_to(ix, j, &Rational::one());
            m.add_to(iy, j, &-Rational::one());
        }
        m
    }

    /// Basis (column vectors) of the cuspidal subspace, optionally cut down to a star eigenspace.
    pub fn cuspidal_basis(&self, sign: Option<i8>) -> Vec<Vec<Rational>> {
        let mut a = self.boundary_matrix();
        if let Some(s) = sign {
            a = a.stack(&self.star_matrix().minus_scalar(&Rational::from_integer(s.into())));
        }
        if self.dimension() == 0 {
            return Vec::new();
        }
        a.nullspace()
    }

    pub fn cuspidal_dimension(&self) -> usize {
        self.cuspidal_basis(None).len()
    }

    /// Trace of a Hecke operator restricted to the cuspidal part of the given sign.
    pub fn cuspidal_trace(&self, l: u64, sign: Option<i8>) -> Result<Rational, ModSymError> {
        let t = self.hecke_operator(l)?;
        let basis = self.cuspidal_basis(sign);
        t.restricted_trace(&basis).ok_or(ModSymError::NotInvariant(l))
    }
}

/// Merel's set of determinant-`n` matrices `[a b; c d]` with `a > b ≥ 0`, `d > c ≥ 0`, `bc = 0` or
/// `0 < b < a`, `0 < c < d`.
pub fn merel_matrices(n: u64) -> Vec<[i64; 4]> {
    let n = n as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        for d in 1..=(n + 1 - a) {
            let rem = a * d - n;
            if rem == 0 {
                for c in 0..d {
                    out.push([a, 0, c, d]);
                }
                for b in 1..a {
                    out.push([a, b, 0, d]);
                }
            } else if rem > 0 {
                for b in 1..a {
                    let (c, r) = rem.div_rem(&b);
                    if r == 0 && c < d {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn genus_oracle() {
        for (n, g) in [(1u64, 0u64), (11, 1), (19, 1), (23, 2), (37, 2), (52, 5), (22, 2), (36, 1), (64, 3)] {
            assert_eq!(genus_x0(n), g, "N = {n}");
        }
    }

    #[test]
    fn dimensions() {
        for (n, cusp) in [(1u64, 0usize), (11, 2), (19, 2), (23, 4), (37, 4), (52, 10)] {
            let s = ModularSymbolSpace::build(n).unwrap();
            assert_eq!(s.cuspidal_dimension(), cusp, "N = {n}");
        }
    }

    #[test]
    fn relations_hold_in_quotient() {
        let s = ModularSymbolSpace::build(52).unwrap();
        for &(c, d) in s.generators() {
            let (c, d) = (c as i64, d as i64);
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (u, v) in [(c, d), (d, -c)] {
                for (k, x) in s.manin_coords(u, v).unwrap() {
                    *acc.entry(*k).or_insert_with(Rational::zero) += x;
                }
            }
            assert!(acc.values().all(|x| x.is_zero()));
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (u, v) in tau_orbit(c, d) {
                for (k, x) in s.manin_coords(u, v).unwrap() {
                    *acc.entry(*k).or_insert_with(Rational::zero) += x;
                }
            }
            assert!(acc.values().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn hecke_level_11() {
        let s = ModularSymbolSpace::build(11).unwrap();
        assert_eq!(s.cuspidal_trace(2, Some(1)).unwrap(), int(-2));
        assert_eq!(s.cuspidal_trace(2, None).unwrap(), int(-4));
        assert_eq!(s.cuspidal_trace(11, Some(1)).unwrap(), int(1));
        assert_eq!(s.cuspidal_trace(3, Some(-1)).unwrap(), int(-1));
        let t2 = s.hecke_operator(2).unwrap();
        let t3 = s.hecke_operator(3).unwrap();
        assert_eq!(t2.mul(&t3), t3.mul(&t2));
        // Eisenstein eigenvalue 1 + ℓ on the full space
        assert_eq!(t2.trace(), int(-4 + 3));
        assert!(s.hecke_operator(4).is_err());
    }

    #[test]
    fn star_is_involution() {
        let s = ModularSymbolSpace::build(37).unwrap();
        let st = s.star_matrix();
        assert_eq!(st.mul(&st), QMatrix::identity(s.dimension()));
        let t5 = s.hecke_operator(5).unwrap();
        assert_eq!(st.mul(&t5), t5.mul(&st));
    }
}
