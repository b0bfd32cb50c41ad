//! Dense matrices over the rationals with exact arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Submatrix on the given (0-based) columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (k, &j) in columns.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a.get(r, c).recip();
            for j in c..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let factor = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = a.get(i, j) - &factor * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        integer_rank(self.integer_columns())
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.cols];
                x[f] = BigRational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = -r.get(row, f).clone();
                }
                x
            })
            .collect()
    }

    /// Basis of `{y : y A = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<BigRational>> {
        self.transpose().nullspace()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Columns scaled by the lcm of their denominators. Column scaling keeps
    /// every column-subset rank.
    fn integer_columns(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for j in 0..self.cols {
            let lcm = (0..self.rows).fold(BigInt::one(), |acc, i| acc.lcm(self.get(i, j).denom()));
            for (i, row) in out.iter_mut().enumerate() {
                let v = self.get(i, j);
                row[j] = v.numer() * (&lcm / v.denom());
            }
        }
        out
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Scale a rational vector to a primitive integer vector whose last nonzero
/// entry is positive. The zero vector maps to zeros.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    let negate = ints
        .iter()
        .rev()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in &mut ints {
        *x = &*x / &gcd;
        if negate {
            *x = -&*x;
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_of_small_matrices() {
        let a = RationalMatrix::from_integer_rows(&[vec![1, 1, 1, 1], vec![1, 2, 3, 4]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.select_columns(&[2]).rank(), 1);
        assert_eq!(RationalMatrix::zeros(3, 3).rank(), 0);
        let b = RationalMatrix::from_integer_rows(&[vec![2, 4], vec![1, 2], vec![3, 6]]);
        assert_eq!(b.rank(), 1);
        let c = RationalMatrix::from_rows(vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]]);
        assert_eq!(c.rank(), 1);
    }

    #[test]
    fn rank_agrees_with_rref() {
        let a = RationalMatrix::from_integer_rows(&[
            vec![3, 0, 7, 1, 5],
            vec![6, 0, 14, 2, 10],
            vec![0, 4, 1, 1, 0],
        ]);
        assert_eq!(a.rank(), a.rref().1.len());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn left_nullspace_of_point_column() {
        // functional vanishing on the point t = 1 of the moment curve
        let a = RationalMatrix::from_integer_rows(&[vec![1], vec![1]]);
        let ns = a.left_nullspace();
        assert_eq!(ns.len(), 1);
        let y = primitive_integer(&ns[0]);
        assert_eq!(y, vec![BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = RationalMatrix::from_integer_rows(&[vec![1, 2, 3], vec![2, 4, 7]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let x = RationalMatrix::from_rows(ns.iter().map(|v| v.to_vec()).collect()).transpose();
        let prod = a.mul(&x);
        assert!((0..2).all(|i| prod.get(i, 0).is_zero()));
    }
}
