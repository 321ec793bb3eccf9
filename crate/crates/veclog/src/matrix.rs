//! Small dense real matrices with the Kronecker product.
//!
//! Everything in this crate lives in dimension 2 (truth vectors) or in the
//! low products of 2 that arise from Kronecker factors, so a plain row-major
//! `Vec<f64>` is all the storage we need.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, Mul};

/// Dense row-major matrix of `f64`.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    /// All-zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        assert!(rows > 0 && cols > 0, "matrix shape must be nonzero");
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Build from row slices. Panics on ragged input.
    pub fn from_rows(rows: &[&[f64]]) -> Mat {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(cols > 0, "matrix needs at least one column");
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Column vector from entries.
    pub fn column(entries: &[f64]) -> Mat {
        assert!(!entries.is_empty());
        Mat {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> f64 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.data[r * self.cols + c] = value;
    }

    /// Flat row-major view of the entries.
    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c));
            }
        }
        out
    }

    /// Matrix product. Panics if the shapes are not conformable.
    pub fn matmul(&self, rhs: &Mat) -> Mat {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = 0.0;
                for k in 0..self.cols {
                    acc += self.at(r, k) * rhs.at(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Kronecker product `self ⊗ rhs`: the block matrix `[a_ij * rhs]`.
    pub fn kron(&self, rhs: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let scale = self.at(ar, ac);
                for br in 0..rhs.rows {
                    for bc in 0..rhs.cols {
                        out.set(ar * rhs.rows + br, ac * rhs.cols + bc, scale * rhs.at(br, bc));
                    }
                }
            }
        }
        out
    }

    /// Entrywise sum. Panics on shape mismatch.
    pub fn add(&self, rhs: &Mat) -> Mat {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "add shape mismatch"
        );
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += *b;
        }
        out
    }

    /// Largest absolute entrywise difference. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Entrywise equality within `tol`; shapes must match exactly.
    pub fn approx_eq(&self, other: &Mat, tol: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.max_abs_diff(other) <= tol
    }
}

/// Outer product `a bᵀ` of two column vectors.
pub fn outer(a: &Mat, b: &Mat) -> Mat {
    assert_eq!(a.cols(), 1, "outer expects column vectors");
    assert_eq!(b.cols(), 1, "outer expects column vectors");
    a.matmul(&b.transpose())
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;

    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl Mul for &Mat {
    type Output = Mat;

    fn mul(self, rhs: &Mat) -> Mat {
        self.matmul(rhs)
    }
}

impl Add for &Mat {
    type Output = Mat;

    fn add(self, rhs: &Mat) -> Mat {
        Mat::add(self, rhs)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:7.3} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
