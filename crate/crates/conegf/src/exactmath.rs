//! Arbitrary-precision scalars, exact rational matrices, and combinatorial
//! number helpers.
//!
//! Scalars are [`num_bigint::BigInt`] and [`num_rational::BigRational`]
//! (always stored in lowest terms with a positive denominator), re-exported
//! here as [`BigInt`] and [`BigRat`]. Matrix inversion and determinants use
//! Gaussian elimination with exact rational pivoting; the matrices in this
//! crate stay small, so no fraction-free machinery is needed.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::Result;

pub use num_bigint::BigInt;
pub type BigRat = num_rational::BigRational;

/// Convenience constructor for integer-valued rationals.
pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// A dense rows x cols matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRat>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        RatMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![BigRat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigRat::one();
        }
        m
    }

    /// Builds a matrix from integer rows.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&v| rat(v)));
        }
        RatMatrix::new(r, c, data)
    }

    /// Builds a matrix whose columns are the given integer vectors.
    pub fn from_int_columns(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = RatMatrix::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged matrix columns");
            for (i, &v) in col.iter().enumerate() {
                *m.at_mut(i, j) = rat(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigRat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other.at(k, j);
                    *out.at_mut(i, j) += v;
                }
            }
        }
        out
    }

    /// Applies the matrix to an integer vector, returning exact rationals.
    pub fn apply(&self, x: &[i64]) -> Vec<BigRat> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRat::zero();
                for (j, &xj) in x.iter().enumerate() {
                    if xj != 0 {
                        acc += self.at(i, j) * rat(xj);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn mat_inverse(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a.at(r, col).is_zero())
            .ok_or(Error::SingularMatrix)?;
        if pivot_row != col {
            for j in 0..n {
                a.data.swap(pivot_row * n + j, col * n + j);
                inv.data.swap(pivot_row * n + j, col * n + j);
            }
        }
        let pivot = a.at(col, col).clone();
        for j in 0..n {
            *a.at_mut(col, j) /= pivot.clone();
            *inv.at_mut(col, j) /= pivot.clone();
        }
        for r in 0..n {
            if r == col || a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col).clone();
            for j in 0..n {
                let va = a.at(col, j).clone();
                *a.at_mut(r, j) -= &factor * va;
                let vi = inv.at(col, j).clone();
                *inv.at_mut(r, j) -= &factor * vi;
            }
        }
    }
    Ok(inv)
}

/// Exact determinant by Gaussian elimination with row pivoting.
pub fn mat_det(m: &RatMatrix) -> Result<BigRat> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = BigRat::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !a.at(r, col).is_zero()) else {
            return Ok(BigRat::zero());
        };
        if pivot_row != col {
            for j in 0..n {
                a.data.swap(pivot_row * n + j, col * n + j);
            }
            det = -det;
        }
        let pivot = a.at(col, col).clone();
        det *= pivot.clone();
        for r in col + 1..n {
            if a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col) / &pivot;
            for j in col..n {
                let v = a.at(col, j).clone();
                *a.at_mut(r, j) -= &factor * v;
            }
        }
    }
    Ok(det)
}

/// Exact binomial coefficient, with the convention that `k > n` gives 0.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 || k < 0 {
        return Err(Error::NegativeArgument);
    }
    if k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divides an integer vector by the gcd of its entries, keeping signs.
pub fn primitive(v: &[i64]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i64, |acc, &x| gcd_i64(acc, x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|&x| x / g).collect())
}

/// Clears denominators of a rational vector and reduces it to a primitive
/// integer vector. The scaling factor is always positive, so directions are
/// preserved.
pub fn primitive_from_rationals(v: &[BigRat]) -> Result<Vec<i64>> {
    let mut scale = BigInt::one();
    for x in v {
        scale = num_integer::lcm(scale, x.denom().clone());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&scale / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num_integer::gcd(g, x.clone());
    }
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    ints.iter()
        .map(|x| {
            let q = x / &g;
            i64::try_from(&q).map_err(|_| Error::bad_params("primitive entry overflows i64"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_identity() {
        let id = RatMatrix::identity(3);
        assert_eq!(mat_inverse(&id).unwrap(), id);
    }

    #[test]
    fn inverse_of_generator_matrix() {
        // The r=2, n=3 generator matrix; its inverse rows carry the
        // second-difference inequality coefficients.
        let b = RatMatrix::from_int_rows(&[vec![1, 2, 3], vec![0, 1, 2], vec![0, 0, 1]]);
        let a = mat_inverse(&b).unwrap();
        let expected =
            RatMatrix::from_int_rows(&[vec![1, -2, 1], vec![0, 1, -2], vec![0, 0, 1]]);
        assert_eq!(a, expected);
        assert_eq!(a.mul(&b), RatMatrix::identity(3));
    }

    #[test]
    fn inverse_scalar() {
        let m = RatMatrix::from_int_rows(&[vec![2]]);
        let inv = mat_inverse(&m).unwrap();
        assert_eq!(inv.at(0, 0), &BigRat::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn inverse_singular() {
        let m = RatMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(mat_inverse(&m), Err(Error::SingularMatrix));
    }

    #[test]
    fn det_examples() {
        assert_eq!(mat_det(&RatMatrix::identity(4)).unwrap(), rat(1));
        // Lower-triangular all-ones 4x4 has determinant 1.
        let tri = RatMatrix::from_int_rows(&[
            vec![1, 0, 0, 0],
            vec![1, 1, 0, 0],
            vec![1, 1, 1, 0],
            vec![1, 1, 1, 1],
        ]);
        assert_eq!(mat_det(&tri).unwrap(), rat(1));
        let swap = RatMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(mat_det(&swap).unwrap(), rat(-1));
    }

    #[test]
    fn inverse_involution_and_det_product() {
        let samples = [
            vec![vec![1, 2, 3], vec![0, 1, 2], vec![0, 0, 1]],
            vec![vec![2, 1], vec![1, 1]],
            vec![vec![3, 0, 0], vec![1, 5, 0], vec![2, 2, 7]],
        ];
        for rows in &samples {
            let m = RatMatrix::from_int_rows(rows);
            let inv = mat_inverse(&m).unwrap();
            assert_eq!(mat_inverse(&inv).unwrap(), m);
            let prod = mat_det(&m).unwrap() * mat_det(&inv).unwrap();
            assert_eq!(prod, rat(1));
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(binomial(3, 5).unwrap(), BigInt::zero());
        assert_eq!(binomial(0, 0).unwrap(), BigInt::one());
        assert_eq!(binomial(-1, 0), Err(Error::NegativeArgument));
    }

    #[test]
    fn binomial_telescoping_sum() {
        // sum_{i=0..j-1} C(r+i-1, r-1) = C(r+j-1, r) at r=3, j=4:
        // 1 + 3 + 6 + 10 = 20 = C(6, 3).
        let r = 3;
        let j = 4;
        let mut total = BigInt::zero();
        for i in 0..j {
            total += binomial(r + i - 1, r - 1).unwrap();
        }
        assert_eq!(total, BigInt::from(20));
        assert_eq!(total, binomial(r + j - 1, r).unwrap());
    }

    #[test]
    fn binomial_pascal_recurrence() {
        for n in 1..=30i64 {
            for k in 1..=n {
                let lhs = binomial(n, k).unwrap();
                let rhs = binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap();
                assert_eq!(lhs, rhs, "Pascal fails at ({n},{k})");
            }
        }
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&[0, 3]).unwrap(), vec![0, 1]);
        assert_eq!(primitive(&[-2, -4]).unwrap(), vec![-1, -2]);
        assert_eq!(primitive(&[6, -9, 3]).unwrap(), vec![2, -3, 1]);
        assert_eq!(primitive(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn primitive_from_rationals_clears_denominators() {
        let v = vec![
            BigRat::new(BigInt::from(1), BigInt::from(2)),
            BigRat::new(BigInt::from(-3), BigInt::from(4)),
        ];
        assert_eq!(primitive_from_rationals(&v).unwrap(), vec![2, -3]);
    }
}
