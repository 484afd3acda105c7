use std::fmt;

use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Ring`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                op: "matrix construction",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        let data = data.into_iter().map(|x| ring.normalize(x)).collect();
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }

    /// Builds from row vectors. `cols` is needed to shape a matrix with zero rows.
    pub fn from_rows(ring: Ring, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    op: "matrix rows",
                    left: (rows.len(), cols),
                    right: (1, row.len()),
                });
            }
            data.extend_from_slice(row);
        }
        Matrix::new(ring, rows.len(), cols, data)
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        Self::scalar(ring, n, 1)
    }

    pub fn scalar(ring: Ring, n: usize, value: Scalar) -> Self {
        let mut m = Self::zeros(ring, n, n);
        let v = ring.normalize(value);
        for i in 0..n {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = self.ring.normalize(v);
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: Scalar) {
        let k = i * self.cols + j;
        self.data[k] = self.ring.add(self.data[k], v);
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn scale(&self, s: Scalar) -> Matrix {
        let r = self.ring;
        Matrix {
            data: self.data.iter().map(|&x| r.mul(x, s)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(-1)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "matrix addition")?;
        let r = self.ring;
        Ok(Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| r.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    fn check_same_shape(&self, other: &Matrix, op: &'static str) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        mat_mul(self, other)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols]
                .copy_from_slice(&block.data[i * block.cols..(i + 1) * block.cols]);
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        let r = self.ring;
        for i in 0..block.rows {
            for j in 0..block.cols {
                let k = (r0 + i) * self.cols + c0 + j;
                self.data[k] = r.add(self.data[k], block.data[i * block.cols + j]);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut b = Matrix::zeros(self.ring, rows, cols);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            b.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        b
    }

    /// Exact two-sided inverse, or [`Error::NotInvertible`].
    ///
    /// Column pivots are produced by Euclidean row reduction, so this is
    /// complete over `Z` (unimodular matrices) and over every `Z/m`.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let r = self.ring;
        let mut a = self.clone();
        let mut inv = Matrix::identity(r, n);
        let row_axpy = |m: &mut Matrix, dst: usize, src: usize, k: Scalar| {
            if k == 0 {
                return;
            }
            for j in 0..m.cols {
                let v = r.mul(k, m.data[src * m.cols + j]);
                m.data[dst * m.cols + j] = r.sub(m.data[dst * m.cols + j], v);
            }
        };
        let swap_rows = |m: &mut Matrix, i: usize, j: usize| {
            if i != j {
                for c in 0..m.cols {
                    m.data.swap(i * m.cols + c, j * m.cols + c);
                }
            }
        };
        for col in 0..n {
            // Euclid down the column until a single nonzero entry remains at `col`.
            loop {
                let nonzero: Vec<usize> = (col..n).filter(|&i| a.get(i, col) != 0).collect();
                let Some(&best) = nonzero
                    .iter()
                    .min_by_key(|&&i| a.get(i, col).unsigned_abs())
                else {
                    return Err(Error::NotInvertible);
                };
                swap_rows(&mut a, col, best);
                swap_rows(&mut inv, col, best);
                let p = a.get(col, col);
                let mut done = true;
                for i in col + 1..n {
                    let x = a.get(i, col);
                    if x == 0 {
                        continue;
                    }
                    let q = if r.is_integers() {
                        x.div_euclid(p)
                    } else {
                        x / p
                    };
                    row_axpy(&mut a, i, col, q);
                    row_axpy(&mut inv, i, col, q);
                    if a.get(i, col) != 0 {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            let p = a.get(col, col);
            let pinv = r.inverse(p).ok_or(Error::NotInvertible)?;
            for j in 0..n {
                a.data[col * n + j] = r.mul(a.data[col * n + j], pinv);
                inv.data[col * n + j] = r.mul(inv.data[col * n + j], pinv);
            }
            for i in 0..n {
                if i != col {
                    let x = a.get(i, col);
                    row_axpy(&mut a, i, col, x);
                    row_axpy(&mut inv, i, col, x);
                }
            }
        }
        Ok(inv)
    }
}

/// Exact matrix product `a * b`.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.ring.check_same(&b.ring)?;
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch {
            op: "matrix product",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let r = a.ring;
    let mut out = Matrix::zeros(r, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.data[i * a.cols + k];
            if x == 0 {
                continue;
            }
            let brow = &b.data[k * b.cols..(k + 1) * b.cols];
            let orow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (o, &y) in orow.iter_mut().zip(brow) {
                if y != 0 {
                    *o = r.add(*o, r.mul(x, y));
                }
            }
        }
    }
    Ok(out)
}

pub fn mat_trace(a: &Matrix) -> Result<Scalar> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    Ok((0..a.rows).fold(0, |acc, i| a.ring.add(acc, a.get(i, i))))
}

/// Kronecker product; entry `((i, k), (j, l))` sits at row `i * b.rows + k`,
/// column `j * b.cols + l`.
pub fn mat_kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.ring.check_same(&b.ring)?;
    let r = a.ring;
    let mut out = Matrix::zeros(r, a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x == 0 {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.set(i * b.rows + k, j * b.cols + l, r.mul(x, b.get(k, l)));
                }
            }
        }
    }
    Ok(out)
}
