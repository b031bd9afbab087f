//! Dense square real matrices.
//!
//! Entries are stored row-major in a single `Vec<f64>`. Every constructor
//! checks the dimension (`n >= 2`) and that all entries are finite, and every
//! operation returns a new value, so a [`Matrix`] never changes after it is
//! built.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Smallest dimension accepted anywhere in the crate.
pub const MIN_DIM: usize = 2;

#[derive(Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

fn check_dim(n: usize) -> Result<()> {
    if n < MIN_DIM {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

fn check_finite(data: &[f64]) -> Result<()> {
    if data.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

impl Matrix {
    /// Builds an `n x n` matrix from row-major entries.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        if data.len() != n * n {
            return Err(Error::EntryCount {
                n,
                expected: n * n,
                actual: data.len(),
            });
        }
        check_finite(&data)?;
        Ok(Self { n, data })
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::EntryCount {
                    n,
                    expected: n * n,
                    actual: n * row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(n, data)
    }

    /// Fills an `n x n` matrix by calling `f(row, col)` in row-major order.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        check_dim(n)?;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::from_row_major(n, data)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n,
            data: vec![0.0; n * n],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { 0.0 })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Multiplies every entry by `factor`.
    pub fn scale(&self, factor: f64) -> Result<Self> {
        Self::from_row_major(self.n, self.data.iter().map(|x| x * factor).collect())
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Standard matrix product `self * rhs`.
    pub fn multiply(&self, rhs: &Matrix) -> Result<Self> {
        self.check_same_dim(rhs)?;
        let n = self.n;
        let mut out = vec![0.0; n * n];
        product_into(n, &self.data, &rhs.data, &mut out);
        Self::from_row_major(n, out)
    }

    /// The commutator `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Matrix) -> Result<Self> {
        self.check_same_dim(rhs)?;
        let n = self.n;
        let mut out = vec![0.0; 2 * n * n];
        commutator_into(n, &self.data, &rhs.data, &mut out);
        out.truncate(n * n);
        Self::from_row_major(n, out)
    }

    /// Squared Frobenius norm of the commutator, without materializing a
    /// checked [`Matrix`] for the intermediate result.
    pub fn commutator_sq_norm(&self, rhs: &Matrix, scratch: &mut Vec<f64>) -> Result<f64> {
        self.check_same_dim(rhs)?;
        let n = self.n;
        scratch.resize(2 * n * n, 0.0);
        commutator_into(n, &self.data, &rhs.data, scratch);
        Ok(sum_of_squares(&scratch[..n * n]))
    }

    /// `sqrt(sum_ij a_ij^2)`.
    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sq().sqrt()
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        sum_of_squares(&self.data)
    }

    /// Projects onto the unit Frobenius sphere.
    pub fn normalize_to_sphere(&self) -> Result<Self> {
        let norm = self.frobenius_norm();
        if norm == 0.0 {
            return Err(Error::ZeroMatrix);
        }
        Self::from_row_major(self.n, self.data.iter().map(|x| x / norm).collect())
    }

    fn check_same_dim(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

#[inline]
fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn product_into(n: usize, a: &[f64], b: &[f64], out: &mut [f64]) {
    out.fill(0.0);
    for i in 0..n {
        let out_row = &mut out[i * n..(i + 1) * n];
        for (k, &a_ik) in a[i * n..(i + 1) * n].iter().enumerate() {
            axpy(out_row, a_ik, &b[k * n..(k + 1) * n]);
        }
    }
}

// `out` holds 2n^2 scratch; the commutator ends up in out[..n*n].
// Both products are formed in full before subtracting, so swapping a and b
// negates the result exactly.
fn commutator_into(n: usize, a: &[f64], b: &[f64], out: &mut [f64]) {
    let (ab, ba) = out.split_at_mut(n * n);
    product_into(n, a, b, ab);
    product_into(n, b, a, ba);
    for (x, y) in ab.iter_mut().zip(ba.iter()) {
        *x -= y;
    }
}

fn sum_of_squares(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum()
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of bounds");
        &self.data[i * self.n + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.n).map(|i| self.row(i)))
            .finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>8.4}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
