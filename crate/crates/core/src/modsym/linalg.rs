//! Exact rational matrices, sparse relation elimination and a mod-q rank prefilter.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Rational;

/// Default prefilter modulus, a prime below `2^30`.
pub const PREFILTER_PRIME: u64 = 1_000_000_007;

/// Dense row-major matrix over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.into_iter().flatten().collect::<Vec<_>>();
        assert_eq!(data.len(), r * c, "ragged rows");
        QMatrix { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self - c·I`.
    pub fn minus_scalar(&self, c: &Rational) -> QMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - c;
            m.set(i, i, v);
        }
        m
    }

    /// Rows of `self` followed by rows of `o`.
    pub fn stack(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        QMatrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Reduced row echelon form (deterministic: leftmost pivot, first nonzero row) and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = Rational::one() / a.get(r, c);
            for j in c..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..a.cols {
                    let rv = a.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = a.get(i, j) - &f * rv;
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (a, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Rank modulo a prime `q`; `None` if some denominator vanishes mod `q`.
    pub fn rank_mod(&self, q: u64) -> Option<usize> {
        let qb = BigInt::from(q);
        let mut m: Vec<Vec<u64>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for x in self.row(i) {
                let d = x.denom().mod_floor(&qb).to_u64()?;
                if d == 0 {
                    return None;
                }
                let n = x.numer().mod_floor(&qb).to_u64()?;
                let inv = crate::arith::ntheory::mod_inv(d, q)?;
                row.push(((n as u128 * inv as u128) % q as u128) as u64);
            }
            m.push(row);
        }
        Some(rank_mod_p(m, q))
    }

    /// Coordinates of each column of `v` (given as column vectors) in the basis `basis`;
    /// `None` if some vector is outside the span.
    pub fn coordinates(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
        let n = v.len();
        let k = basis.len();
        // augmented system [B | v]
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut r: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            rows.push(r);
        }
        let (a, piv) = QMatrix::from_rows(rows).rref();
        if piv.contains(&k) {
            return None;
        }
        let mut x = vec![Rational::zero(); k];
        for (i, &pc) in piv.iter().enumerate() {
            x[pc] = a.get(i, k).clone();
        }
        Some(x)
    }

    /// Trace of the restriction to an invariant subspace spanned by `basis`.
    pub fn restricted_trace(&self, basis: &[Vec<Rational>]) -> Option<Rational> {
        let mut t = Rational::zero();
        for (i, b) in basis.iter().enumerate() {
            let img = self.mul_vec(b);
            t += &QMatrix::coordinates(basis, &img)?[i];
        }
        Some(t)
    }
}

fn rank_mod_p(mut m: Vec<Vec<u64>>, q: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(p, r);
        let inv = crate::arith::ntheory::mod_inv(m[r][c], q).unwrap();
        for j in c..cols {
            m[r][j] = (m[r][j] as u128 * inv as u128 % q as u128) as u64;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..cols {
                    let t = (f as u128 * m[r][j] as u128 % q as u128) as u64;
                    m[i][j] = (m[i][j] + q - t) % q;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Sparse row over `Q`, keyed by column.
pub type SparseRow = BTreeMap<usize, Rational>;

/// Solves a sparse homogeneous relation system on `n` generators.
///
/// Each pivot is the largest index in its reduced relation; the remaining generators form the
/// quotient basis. Returns the free generators and, for every generator, its expression in them.
pub fn solve_relations(n: usize, relations: &[SparseRow]) -> (Vec<usize>, Vec<SparseRow>) {
    let mut piv: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for rel in relations {
        let mut r: SparseRow = rel.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
        loop {
            let Some(k) = r.keys().find(|k| piv.contains_key(k)).copied() else { break };
            let c = r[&k].clone();
            for (kk, vv) in &piv[&k] {
                let e = r.entry(*kk).or_insert_with(Rational::zero);
                *e -= &c * vv;
                if e.is_zero() {
                    r.remove(kk);
                }
            }
        }
        let Some((&k, c)) = r.iter().next_back() else { continue };
        let c = c.clone();
        for v in r.values_mut() {
            *v /= &c;
        }
        for pr in piv.values_mut() {
            if let Some(cc) = pr.get(&k).cloned() {
                for (kk, vv) in &r {
                    let e = pr.entry(*kk).or_insert_with(Rational::zero);
                    *e -= &cc * vv;
                    if e.is_zero() {
                        pr.remove(kk);
                    }
                }
            }
        }
        piv.insert(k, r);
    }
    let free: Vec<usize> = (0..n).filter(|i| !piv.contains_key(i)).collect();
    let fidx: BTreeMap<usize, usize> = free.iter().enumerate().map(|(j, &f)| (f, j)).collect();
    let m2b = (0..n)
        .map(|i| match piv.get(&i) {
            Some(pr) => pr
                .iter()
                .filter(|(kk, _)| **kk != i)
                .map(|(kk, vv)| (fidx[kk], -vv.clone()))
                .collect(),
            None => BTreeMap::from([(fidx[&i], Rational::one())]),
        })
        .collect();
    (free, m2b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn nullspace_and_rank() {
        let m = QMatrix::from_rows(vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(m.rank_mod(PREFILTER_PRIME), Some(1));
        let h = QMatrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(0), rat(1, 3)]]);
        assert_eq!(h.rank_mod(7), Some(2));
        assert_eq!(h.rank_mod(3), None);
    }

    #[test]
    fn relations_quotient() {
        // x0 + x1 = 0, x1 - x2 = 0 on 3 generators: quotient of dimension 1
        let rels = vec![
            SparseRow::from([(0, int(1)), (1, int(1))]),
            SparseRow::from([(1, int(1)), (2, int(-1))]),
        ];
        let (free, m2b) = solve_relations(3, &rels);
        assert_eq!(free, vec![0]);
        assert_eq!(m2b[1], SparseRow::from([(0, int(-1))]));
        assert_eq!(m2b[2], SparseRow::from([(0, int(-1))]));
    }

    #[test]
    fn restricted_trace_on_invariant_plane() {
        let m = QMatrix::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![int(0), int(3), int(0)],
            vec![int(0), int(0), int(7)],
        ]);
        let basis = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]];
        assert_eq!(m.restricted_trace(&basis), Some(int(5)));
    }
}
