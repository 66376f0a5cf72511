//! Exact integer and rational matrix kernels.
//!
//! Everything here works over arbitrary-precision integers or rationals; no
//! floating point is involved. Matrices are small (at most a few dozen rows),
//! so plain Gaussian elimination is used without any modular tricks.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of arbitrary-precision values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T: Clone> Matrix<T> {
    /// Builds a matrix from a list of rows. All rows must have the same length.
    ///
    /// An empty row list yields a `0 x cols` matrix, which needs the column
    /// count from the caller; use [`Matrix::from_rows_with_cols`] for that.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: &[Vec<T>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + for<'a> std::ops::Mul<&'a T, Output = T>,
    for<'a> T: std::ops::AddAssign<&'a T>,
{
    /// Matrix product. Zero entries on the left are skipped, which keeps the
    /// product of signed permutation matrices at quadratic cost.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b;
                    out[(i, j)] += &prod;
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `v * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len(), "vector length mismatch");
        let mut out = vec![T::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in self.row(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] += &(a.clone() * b);
                }
            }
        }
        out
    }
}

impl RatMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        Matrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(p) = (pr..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(pr, p);
            let inv = m[(pr, c)].recip();
            for j in c..m.cols {
                let v = &m[(pr, j)] * &inv;
                m[(pr, j)] = v;
            }
            for r in 0..m.rows {
                if r == pr || m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone();
                for j in c..m.cols {
                    if m[(pr, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(pr, j)];
                    m[(r, j)] -= d;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = BigRational::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for r in c + 1..m.rows {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &piv;
                for j in c..m.cols {
                    let d = &f * &m[(c, j)];
                    m[(r, j)] -= d;
                }
            }
        }
        det
    }

    /// Inverse over the rationals, or `None` for a singular matrix.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = BigRational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(out)
    }
}

/// Result of row-style Hermite reduction: `u * a == h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteDecomposition {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

impl HermiteDecomposition {
    /// Pivot column of each of the first `rank` rows.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.rank)
            .map(|i| {
                (0..self.h.cols())
                    .find(|&j| !self.h[(i, j)].is_zero())
                    .expect("nonzero HNF row")
            })
            .collect()
    }

    /// Solves `x * h == v` for integer `x` if possible, i.e. decides whether
    /// `v` lies in the integer row span of the original matrix.
    pub fn row_span_coefficients(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.h.cols(), "vector length mismatch");
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank);
        for (i, c) in self.pivots().into_iter().enumerate() {
            if rest[..c].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[c].div_rem(&self.h[(i, c)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, x) in rest.iter_mut().enumerate().skip(c) {
                    *x -= &q * &self.h[(i, j)];
                }
            }
            coeffs.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.row_span_coefficients(v).is_some()
    }
}

fn combine_rows(m: &mut IntMatrix, i: usize, k: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
    // (row_i, row_k) <- (a*row_i + b*row_k, c*row_i + d*row_k)
    for j in 0..m.cols() {
        let x = m[(i, j)].clone();
        let y = m[(k, j)].clone();
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(i, j)] = a * &x + b * &y;
        m[(k, j)] = c * &x + d * &y;
    }
}

fn axpy_row(m: &mut IntMatrix, target: usize, factor: &BigInt, source: usize) {
    // row_target -= factor * row_source
    for j in 0..m.cols() {
        if m[(source, j)].is_zero() {
            continue;
        }
        let d = factor * &m[(source, j)];
        m[(target, j)] -= d;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = -std::mem::take(&mut m[(i, j)]);
        m[(i, j)] = v;
    }
}

/// Row-style Hermite normal form with positive pivots and entries above each
/// pivot reduced into `[0, pivot)`. Zero rows collect at the bottom.
pub fn hnf(a: &IntMatrix) -> HermiteDecomposition {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut pr = 0;
    for c in 0..h.cols() {
        if pr == h.rows() {
            break;
        }
        for r in pr + 1..h.rows() {
            if h[(r, c)].is_zero() {
                continue;
            }
            if h[(pr, c)].is_zero() {
                h.swap_rows(pr, r);
                u.swap_rows(pr, r);
                continue;
            }
            let x = h[(pr, c)].clone();
            let y = h[(r, c)].clone();
            let eg = x.extended_gcd(&y);
            let p = &x / &eg.gcd;
            let q = &y / &eg.gcd;
            // [[ex, ey], [-q, p]] has determinant ex*p + ey*q = 1
            let neg_q = -q;
            combine_rows(&mut h, pr, r, &eg.x, &eg.y, &neg_q, &p);
            combine_rows(&mut u, pr, r, &eg.x, &eg.y, &neg_q, &p);
        }
        if h[(pr, c)].is_zero() {
            continue;
        }
        if h[(pr, c)].is_negative() {
            negate_row(&mut h, pr);
            negate_row(&mut u, pr);
        }
        let pivot = h[(pr, c)].clone();
        for r in 0..pr {
            let q = h[(r, c)].div_floor(&pivot);
            if !q.is_zero() {
                axpy_row(&mut h, r, &q, pr);
                axpy_row(&mut u, r, &q, pr);
            }
        }
        pr += 1;
    }
    HermiteDecomposition { h, u, rank: pr }
}

/// Basis (as rows) of the left nullspace `{x : x * c == 0}` over the rationals.
///
/// The result always has `c.rows() - rank(c)` rows and `c.rows()` columns.
pub fn left_nullspace(c: &RatMatrix) -> RatMatrix {
    let t = c.transpose();
    let (r, pivots) = t.rref();
    let n = t.cols();
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let basis: Vec<Vec<BigRational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect();
    RatMatrix::from_rows_with_cols(&basis, n)
}

/// Least common multiple of the denominators of all given rationals.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector by `d` (a multiple of every denominator).
pub fn scale_to_integers(v: &[BigRational], d: &BigInt) -> Vec<BigInt> {
    v.iter()
        .map(|x| {
            let s = x * BigRational::from_integer(d.clone());
            debug_assert!(s.is_integer());
            s.to_integer()
        })
        .collect()
}

/// Decides whether `v` lies in the subgroup of `Q^k` generated over `Z` by
/// `gens`.
pub fn subgroup_membership(v: &[BigRational], gens: &[Vec<BigRational>]) -> bool {
    if gens.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    for g in gens {
        assert_eq!(g.len(), v.len(), "generator length mismatch");
    }
    let d = common_denominator(v.iter().chain(gens.iter().flatten()));
    let rows: Vec<Vec<BigInt>> = gens.iter().map(|g| scale_to_integers(g, &d)).collect();
    let dec = hnf(&IntMatrix::from_rows_with_cols(&rows, v.len()));
    dec.contains(&scale_to_integers(v, &d))
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn int_determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[(r, k)].is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}
