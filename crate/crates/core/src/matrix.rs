//! Dense matrices over arbitrary-precision integers.
//!
//! Only what the lattice computations need: products, transposes, Bareiss
//! determinants, exact inversion through the rationals, and row Hermite
//! normal form (which also yields saturated integer kernels).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged literal matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    /// `xᵀ · self · y`.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: x.len(),
            });
        }
        let my = self.mul_vec(y)?;
        Ok(dot(x, &my))
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &IntMatrix,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    /// Exact inverse over the rationals; `None` if singular.
    pub fn inverse_rational(&self) -> Option<Vec<Vec<BigRational>>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self
                    .row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Inverse with integer entries; errors if singular or not unimodular.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let inv = self
            .inverse_rational()
            .ok_or_else(|| Error::Lattice("matrix is singular".into()))?;
        rational_to_integer(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row Hermite normal form together with the unimodular transform:
    /// returns `(h, u)` with `u · self = h`. Nonzero rows of `h` come first,
    /// pivots are positive and entries above a pivot lie in `[0, pivot)`.
    pub fn row_hermite(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivot_row = 0;
        for col in 0..h.cols {
            if pivot_row == h.rows {
                break;
            }
            // Euclid on the column below pivot_row until one nonzero entry remains.
            loop {
                let best = (pivot_row..h.rows)
                    .filter(|&r| !h[(r, col)].is_zero())
                    .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
                let Some(best) = best else { break };
                h.swap_rows(pivot_row, best);
                u.swap_rows(pivot_row, best);
                let mut done = true;
                for r in pivot_row + 1..h.rows {
                    if h[(r, col)].is_zero() {
                        continue;
                    }
                    let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
                    h.axpy_row(r, pivot_row, &q);
                    u.axpy_row(r, pivot_row, &q);
                    if !h[(r, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[(pivot_row, col)].is_zero() {
                continue;
            }
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            for r in 0..pivot_row {
                let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
                if !q.is_zero() {
                    h.axpy_row(r, pivot_row, &q);
                    u.axpy_row(r, pivot_row, &q);
                }
            }
            pivot_row += 1;
        }
        (h, u)
    }

    // row[target] -= q * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let d = q * &self[(source, j)];
            self[(target, j)] -= d;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

/// Basis of the integer kernel `{x : m·x = 0}`, returned in row Hermite
/// normal form so the result is canonical. The basis is saturated: every
/// integer kernel vector is an integer combination of it.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    // u · mᵀ = h; rows of u where h vanishes span the kernel.
    let (h, u) = m.transpose().row_hermite();
    let basis: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&r| h.row(r).iter().all(Zero::is_zero))
        .map(|r| u.row(r).to_vec())
        .collect();
    if basis.is_empty() {
        return basis;
    }
    let (hk, _) = IntMatrix::from_rows(basis)
        .expect("kernel rows share a length")
        .row_hermite();
    (0..hk.rows())
        .map(|r| hk.row(r).to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rational_to_integer(rows: Vec<Vec<BigRational>>) -> Result<IntMatrix> {
    let rows = rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|q| {
                    if q.is_integer() {
                        Ok(q.to_integer())
                    } else {
                        Err(Error::Lattice(format!("non-integral entry {q}")))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn det_small() {
        let m = IntMatrix::from_i64_rows(&[&[1, 3, 6], &[0, 1, 3], &[0, 0, 1]]);
        assert_eq!(m.det().unwrap(), BigInt::from(1));
        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), BigInt::from(-1));
        let m = IntMatrix::from_i64_rows(&[&[2, 4], &[1, 2]]);
        assert_eq!(m.det().unwrap(), BigInt::zero());
        let m = IntMatrix::from_i64_rows(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]);
        // 0*(1-0) - 2*(3-0) + 1*(3-1) = -4
        assert_eq!(m.det().unwrap(), BigInt::from(-4));
    }

    #[test]
    fn inverse_unimodular() {
        let m = IntMatrix::from_i64_rows(&[&[1, 3, 6], &[0, 1, 3], &[0, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(3));
        assert_eq!(
            inv,
            IntMatrix::from_i64_rows(&[&[1, -3, 3], &[0, 1, -3], &[0, 0, 1]])
        );
    }

    #[test]
    fn inverse_non_integral_fails() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(m.inverse().is_err());
        let s = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn hermite_transform_is_consistent() {
        let m = IntMatrix::from_i64_rows(&[&[4, 6, 2], &[2, 3, 7], &[6, 9, 9]]);
        let (h, u) = m.row_hermite();
        assert_eq!(u.mul(&m).unwrap(), h);
        assert!(u.det().unwrap().abs().is_one());
    }

    #[test]
    fn kernel_of_p2_skew() {
        let sk = IntMatrix::from_i64_rows(&[&[0, 3, 6], &[-3, 0, 3], &[-6, -3, 0]]);
        let k = integer_kernel(&sk);
        assert_eq!(k, vec![v(&[1, -2, 1])]);
    }

    #[test]
    fn kernel_edge_cases() {
        let nondeg = IntMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        assert!(integer_kernel(&nondeg).is_empty());
        let zero = IntMatrix::zeros(2, 2);
        assert_eq!(integer_kernel(&zero), vec![v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y = 0 has primitive generator (2, -1) up to sign, not (4, -2).
        let m = IntMatrix::from_i64_rows(&[&[2, 4]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], v(&[2, -1]));
    }
}
