//! Small square integer matrices (reflection matrices, groupoid morphisms)
//! and Hermite normal form for quotient-lattice reduction.

use crate::error::{Result, ShapError};
use std::fmt;

/// Row-major n x n integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMat {
    pub n: usize,
    pub entries: Vec<i64>,
}

impl IntMat {
    pub fn zero(n: usize) -> Self {
        IntMat { n, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination in i128.
    pub fn det(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let pivot = (k + 1..n).find(|&r| a[r * n + k] != 0);
                match pivot {
                    None => return 0,
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
                    a[i * n + j] = num / prev;
                }
                a[i * n + k] = 0;
            }
            prev = a[k * n + k];
        }
        (sign * a[n * n - 1]) as i64
    }

    /// Inverse of a matrix with det = ±1; anything else is an error.
    pub fn inverse_unimodular(&self) -> Result<IntMat> {
        let d = self.det();
        if d != 1 && d != -1 {
            return Err(ShapError::NonUnimodular);
        }
        let n = self.n;
        // adjugate over i128, then divide by det
        let mut inv = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                inv.set(i, j, s * minor * d);
            }
        }
        Ok(inv)
    }

    fn minor(&self, skip_i: usize, skip_j: usize) -> i64 {
        let n = self.n;
        if n == 1 {
            return 1;
        }
        let mut sub = IntMat::zero(n - 1);
        let mut r = 0;
        for i in 0..n {
            if i == skip_i {
                continue;
            }
            let mut c = 0;
            for j in 0..n {
                if j == skip_j {
                    continue;
                }
                sub.set(r, c, self.get(i, j));
                c += 1;
            }
            r += 1;
        }
        sub.det()
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows` in Z^n.
/// Returned rows have strictly increasing pivot columns, positive pivots,
/// and entries above each pivot reduced into [0, pivot).
pub fn hnf(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut work: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    for r in &work {
        assert_eq!(r.len(), n);
    }
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut col = 0;
    while col < n && !work.is_empty() {
        // gcd-reduce all rows on this column down to one row
        loop {
            work.sort_by_key(|r| r[col].abs());
            work.retain(|r| r.iter().any(|&x| x != 0));
            let nonzero: Vec<usize> =
                (0..work.len()).filter(|&i| work[i][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let a = nonzero[0];
            for &b in &nonzero[1..] {
                let q = work[b][col] / work[a][col];
                for j in 0..n {
                    work[b][j] -= q * work[a][j];
                }
            }
        }
        if let Some(idx) = (0..work.len()).find(|&i| work[i][col] != 0) {
            let mut piv = work.remove(idx);
            if piv[col] < 0 {
                for x in piv.iter_mut() {
                    *x = -*x;
                }
            }
            basis.push(piv);
        }
        col += 1;
    }
    // reduce entries above pivots
    for k in (0..basis.len()).rev() {
        let pcol = (0..n).find(|&j| basis[k][j] != 0).unwrap();
        let p = basis[k][pcol];
        for i in 0..k {
            let q = basis[i][pcol].div_euclid(p);
            if q != 0 {
                for j in 0..n {
                    basis[i][j] -= q * basis[k][j];
                }
            }
        }
    }
    basis
}

/// Canonical representative of v modulo the lattice spanned by an HNF basis.
pub fn reduce_mod_lattice(v: &[i64], basis: &[Vec<i64>]) -> Vec<i64> {
    let n = v.len();
    let mut out = v.to_vec();
    for row in basis {
        let pcol = (0..n).find(|&j| row[j] != 0).expect("HNF rows are nonzero");
        let p = row[pcol];
        let q = out[pcol].div_euclid(p);
        if q != 0 {
            for j in 0..n {
                out[j] -= q * row[j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let mut m = IntMat::identity(2);
        m.set(0, 1, 3);
        assert_eq!(m.det(), 1);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv), IntMat::identity(2));
        assert_eq!(inv.get(0, 1), -3);
    }

    #[test]
    fn non_unimodular_is_rejected() {
        let mut m = IntMat::identity(2);
        m.set(0, 0, 2);
        assert_eq!(m.det(), 2);
        assert!(m.inverse_unimodular().is_err());
    }

    #[test]
    fn det_three_by_three() {
        let m = IntMat { n: 3, entries: vec![2, -1, 0, -1, 2, -1, 0, -1, 2] };
        assert_eq!(m.det(), 4);
    }

    #[test]
    fn hnf_reduction_is_canonical() {
        // lattice 2Z x 3Z in Z^2
        let basis = hnf(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(basis, vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(reduce_mod_lattice(&[5, -4], &basis), vec![1, 2]);
        assert_eq!(reduce_mod_lattice(&[1, 2], &basis), vec![1, 2]);
    }

    #[test]
    fn hnf_of_dependent_rows() {
        // rows (2,4) and (1,2) span the same lattice as (1,2)
        let basis = hnf(&[vec![2, 4], vec![1, 2]], 2);
        assert_eq!(basis, vec![vec![1, 2]]);
        // second coordinate is untouched because no pivot lives there
        assert_eq!(reduce_mod_lattice(&[3, 5], &basis), vec![0, -1]);
    }

    #[test]
    fn reflection_matrix_squares_to_identity() {
        // A2 simple reflection in the alpha basis
        let s1 = IntMat { n: 2, entries: vec![-1, 1, 0, 1] };
        assert_eq!(s1.mul(&s1), IntMat::identity(2));
        assert_eq!(s1.apply(&[1, 0]), vec![-1, 0]);
        assert_eq!(s1.apply(&[0, 1]), vec![1, 1]);
    }
}
