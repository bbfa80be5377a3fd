//! Dense square-matrix arithmetic over exact rationals or `f64`, with the
//! characteristic-polynomial machinery: principal-minor sums, power traces,
//! Newton's identities and the Cayley–Hamilton residual.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Largest dimension accepted by [`minor_sums_bruteforce`].
pub const BRUTE_FORCE_MAX: usize = 6;

/// Field elements the matrix routines run over.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(k: i64) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_i64(k: i64) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_i64(k: i64) -> Self {
        k as f64
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Matrix { rows: n, cols: n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Dimension of a square matrix, or [`Error::NotSquare`].
    pub fn square_dim(&self) -> Result<usize, Error> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                data.push(acc);
            }
        }
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(Scalar::abs).fold(T::zero(), |m, x| if x > m { x } else { m })
    }

    /// Determinant of the principal submatrix on `idx`, by cofactor expansion.
    pub fn principal_minor(&self, idx: &[usize]) -> T {
        let sub: Vec<Vec<T>> = idx.iter().map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
        cofactor_det(&sub)
    }
}

fn cofactor_det<T: Scalar>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => T::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = T::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = m[0][j].clone() * cofactor_det(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            let row = &cells[i * self.cols..(i + 1) * self.cols];
            writeln!(f, "[ {} ]", row.iter().map(|c| format!("{c:>width$}")).join("  "))?;
        }
        Ok(())
    }
}

/// Principal-minor sums `M_0 = 1, M_1 = tr, …, M_m = det`.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorSums<T>(pub Vec<T>);

impl<T: Scalar> MinorSums<T> {
    pub fn get(&self, k: usize) -> T {
        self.0.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn trace(&self) -> T {
        self.get(1)
    }

    pub fn determinant(&self) -> T {
        self.0.last().cloned().unwrap_or_else(T::one)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }
}

/// Minor sums by the Faddeev–LeVerrier recurrence.
///
/// With `N_0 = 0`, `c_0 = 1`: `N_k = H N_{k-1} + c_{k-1} I` and
/// `c_k = -tr(H N_k) / k`, so that `det(λI - H) = Σ c_k λ^{m-k}` and
/// `M_k = (-1)^k c_k`.
pub fn minor_sums<T: Scalar>(h: &Matrix<T>) -> Result<MinorSums<T>, Error> {
    let m = h.square_dim()?;
    let id = Matrix::identity(m);
    let mut n = Matrix::zeros(m);
    let mut c = vec![T::one()];
    for k in 1..=m {
        n = h.mul(&n).add(&id.scale(&c[k - 1]));
        let ck = -(h.mul(&n).trace() / T::from_i64(k as i64));
        c.push(ck);
    }
    let sums = c.into_iter().enumerate().map(|(k, ck)| if k % 2 == 0 { ck } else { -ck }).collect();
    Ok(MinorSums(sums))
}

/// Minor sums by enumerating every principal minor.
pub fn minor_sums_bruteforce<T: Scalar>(h: &Matrix<T>) -> Result<MinorSums<T>, Error> {
    let m = h.square_dim()?;
    if m > BRUTE_FORCE_MAX {
        return Err(Error::TooLarge { dim: m, max: BRUTE_FORCE_MAX });
    }
    let sums = (0..=m)
        .map(|k| (0..m).combinations(k).fold(T::zero(), |acc, idx| acc + h.principal_minor(&idx)))
        .collect();
    Ok(MinorSums(sums))
}

/// Determinant via the recurrence.
pub fn determinant<T: Scalar>(h: &Matrix<T>) -> Result<T, Error> {
    Ok(minor_sums(h)?.determinant())
}

/// Residual matrix of `Σ_{k=0}^{m} (-1)^k M_k H^{m-k}`.
pub fn cayley_hamilton_matrix<T: Scalar>(h: &Matrix<T>) -> Result<Matrix<T>, Error> {
    let m = h.square_dim()?;
    let sums = minor_sums(h)?;
    // Horner: ((H - M_1) H + M_2) H - …
    let mut acc = Matrix::identity(m);
    for k in 1..=m {
        let coeff = if k % 2 == 0 { sums.get(k) } else { -sums.get(k) };
        acc = acc.mul(h).add(&Matrix::identity(m).scale(&coeff));
    }
    Ok(acc)
}

/// Max-norm of the Cayley–Hamilton residual; zero in exact arithmetic.
pub fn cayley_hamilton_residual<T: Scalar>(h: &Matrix<T>) -> Result<T, Error> {
    Ok(cayley_hamilton_matrix(h)?.max_abs())
}

/// `tr(H^k)` for `k = 1..=kmax`.
pub fn power_traces<T: Scalar>(h: &Matrix<T>, kmax: usize) -> Result<Vec<T>, Error> {
    let m = h.square_dim()?;
    if kmax == 0 {
        return Err(Error::InvalidInput("kmax must be at least 1".into()));
    }
    let mut power = Matrix::identity(m);
    Ok((0..kmax)
        .map(|_| {
            power = power.mul(h);
            power.trace()
        })
        .collect())
}

/// Residuals `p_k - Σ_{i=1}^{k-1} (-1)^{i-1} M_i p_{k-i} - (-1)^{k-1} k M_k`
/// for `k = 1..=p.len()`, with `p[k-1] = tr(H^k)` and `M_k = 0` past the
/// dimension.
pub fn newton_residuals<T: Scalar>(p: &[T], sums: &MinorSums<T>) -> Vec<T> {
    (1..=p.len())
        .map(|k| {
            let mut r = p[k - 1].clone();
            for i in 1..k {
                let t = sums.get(i) * p[k - i - 1].clone();
                r = if i % 2 == 1 { r - t } else { r + t };
            }
            let last = sums.get(k) * T::from_i64(k as i64);
            if k % 2 == 1 {
                r - last
            } else {
                r + last
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> BigRational {
        BigRational::from_i64(k)
    }

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&k| q(k)).collect()
    }

    #[test]
    fn diagonal_minor_sums() {
        let h = Matrix::diagonal(&qs(&[1, 2, 3, 4]));
        assert_eq!(minor_sums(&h).unwrap().0, qs(&[1, 10, 35, 50, 24]));
        assert_eq!(minor_sums_bruteforce(&h).unwrap().0, qs(&[1, 10, 35, 50, 24]));
    }

    #[test]
    fn identity_gives_binomials() {
        let h = Matrix::<BigRational>::identity(4);
        assert_eq!(minor_sums(&h).unwrap().0, qs(&[1, 4, 6, 4, 1]));
        assert_eq!(power_traces(&h, 5).unwrap(), qs(&[4, 4, 4, 4, 4]));
    }

    #[test]
    fn zero_and_scalar_matrices() {
        assert_eq!(minor_sums(&Matrix::<BigRational>::zeros(4)).unwrap().0, qs(&[1, 0, 0, 0, 0]));
        let one = Matrix::from_rows(vec![vec![q(7)]]).unwrap();
        assert_eq!(minor_sums_bruteforce(&one).unwrap().0, qs(&[1, 7]));
    }

    #[test]
    fn shape_errors() {
        let rect = Matrix::from_rows(vec![qs(&[1, 2]), qs(&[3, 4]), qs(&[5, 6])]).unwrap();
        assert!(matches!(minor_sums(&rect), Err(Error::NotSquare { rows: 3, cols: 2 })));
        assert!(matches!(cayley_hamilton_residual(&rect), Err(Error::NotSquare { .. })));
        let big = Matrix::<BigRational>::identity(7);
        assert!(matches!(minor_sums_bruteforce(&big), Err(Error::TooLarge { dim: 7, max: 6 })));
        assert!(Matrix::from_rows(vec![qs(&[1, 2]), qs(&[3])]).is_err());
    }

    #[test]
    fn cayley_hamilton_on_diag_1_2() {
        let h = Matrix::diagonal(&qs(&[1, 2]));
        assert_eq!(minor_sums(&h).unwrap().0, qs(&[1, 3, 2]));
        assert!(cayley_hamilton_residual(&h).unwrap().is_zero());
    }

    #[test]
    fn traces_of_diag() {
        let h = Matrix::diagonal(&qs(&[1, 2, 3, 4]));
        assert_eq!(power_traces(&h, 2).unwrap()[1], q(30));
        assert!(power_traces(&h, 0).is_err());
    }

    #[test]
    fn newton_identities_exact_with_nilpotent_block() {
        let h = Matrix::from_rows(vec![qs(&[0, 1, 0]), qs(&[0, 0, 1]), qs(&[0, 0, 0])]).unwrap();
        let p = power_traces(&h, 5).unwrap();
        let m = minor_sums(&h).unwrap();
        assert!(newton_residuals(&p, &m).iter().all(Zero::is_zero));
    }

    #[test]
    fn display_is_row_major() {
        let h = Matrix::from_rows(vec![qs(&[1, -2]), qs(&[30, 4])]).unwrap();
        assert_eq!(h.to_string(), "[  1  -2 ]\n[ 30   4 ]\n");
    }
}
