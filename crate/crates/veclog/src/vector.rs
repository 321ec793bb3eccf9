//! Truth-value vectors and the matrices that act on them.
//!
//! Truth maps on two orthonormal column vectors, `s` (true) and `n` (false).
//! Mixing them with a weight `α ∈ [0,1]` gives the probabilistic set
//! `Π = { α·s + (1−α)·n }`, which every logical gate maps back into itself.
//! At dimension 2 with the canonical basis, an element of Π is fully
//! determined by its weight, so [`TruthVector`] stores the weight and
//! materializes the column on demand.

use crate::matrix::Mat;
use crate::EXACT_TOL;
use core::fmt;

/// The pair of orthonormal truth-value vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    s: Mat,
    n: Mat,
}

impl Basis {
    /// The canonical basis: `s = (1,0)ᵀ`, `n = (0,1)ᵀ`.
    pub fn canonical() -> Basis {
        Basis {
            s: Mat::column(&[1.0, 0.0]),
            n: Mat::column(&[0.0, 1.0]),
        }
    }

    pub fn dimension(&self) -> usize {
        2
    }

    /// The "true" vector.
    pub fn s(&self) -> &Mat {
        &self.s
    }

    /// The "false" vector.
    pub fn n(&self) -> &Mat {
        &self.n
    }

    /// `⟨s,s⟩ = ⟨n,n⟩ = 1` and `⟨s,n⟩ = 0`, each within `tol`.
    pub fn is_orthonormal(&self, tol: f64) -> bool {
        let dot = |a: &Mat, b: &Mat| a.transpose().matmul(b).at(0, 0);
        (dot(&self.s, &self.s) - 1.0).abs() <= tol
            && (dot(&self.n, &self.n) - 1.0).abs() <= tol
            && dot(&self.s, &self.n).abs() <= tol
    }
}

/// Canonical "true" column vector.
pub fn s_vec() -> Mat {
    Mat::column(&[1.0, 0.0])
}

/// Canonical "false" column vector.
pub fn n_vec() -> Mat {
    Mat::column(&[0.0, 1.0])
}

/// Errors from constructing truth vectors or logic matrices.
#[derive(Clone, Debug, PartialEq)]
pub enum VectorError {
    /// Weight outside `[0,1]`; clamping is forbidden by contract.
    WeightOutOfRange(f64),
    /// A column that is not an element of Π: negative coefficients or
    /// coefficients that do not sum to 1 within tolerance.
    NotInPi { coeff_sum: f64 },
    /// Wrong shape for the requested construction.
    BadShape { rows: usize, cols: usize },
    /// A matrix column that is not a probability vector, so the matrix
    /// cannot map Π into Π.
    NotPiClosed { column: usize },
}

impl fmt::Display for VectorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectorError::WeightOutOfRange(w) => {
                write!(f, "weight {w} is outside [0,1]")
            }
            VectorError::NotInPi { coeff_sum } => {
                write!(f, "vector is not in Pi (coefficient sum {coeff_sum})")
            }
            VectorError::BadShape { rows, cols } => {
                write!(f, "matrix of shape {rows}x{cols} not accepted here")
            }
            VectorError::NotPiClosed { column } => {
                write!(f, "column {column} is not a probability vector")
            }
        }
    }
}

impl core::error::Error for VectorError {}

/// Element of Π: `weight·s + (1−weight)·n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruthVector {
    weight: f64,
}

impl TruthVector {
    /// The vector `s` (classical true).
    pub const TRUE: TruthVector = TruthVector { weight: 1.0 };
    /// The vector `n` (classical false).
    pub const FALSE: TruthVector = TruthVector { weight: 0.0 };

    /// A probabilistic truth vector with the given weight on `s`.
    pub fn new(weight: f64) -> Result<TruthVector, VectorError> {
        if weight.is_finite() && (0.0..=1.0).contains(&weight) {
            Ok(TruthVector { weight })
        } else {
            Err(VectorError::WeightOutOfRange(weight))
        }
    }

    pub fn from_bool(value: bool) -> TruthVector {
        if value {
            TruthVector::TRUE
        } else {
            TruthVector::FALSE
        }
    }

    /// Coefficient of `s`; the coefficient of `n` is `1 − weight`.
    pub fn weight(self) -> f64 {
        self.weight
    }

    /// Materialize the backing column `weight·s + (1−weight)·n`.
    pub fn column(self) -> Mat {
        Mat::column(&[self.weight, 1.0 - self.weight])
    }

    /// Read a column back as an element of Π.
    ///
    /// The coefficients must be `≥ −tol` and sum to 1 within `tol`; drift
    /// inside the tolerance band is snapped back onto `[0,1]`.
    pub fn from_column(col: &Mat, tol: f64) -> Result<TruthVector, VectorError> {
        if col.rows() != 2 || col.cols() != 1 {
            return Err(VectorError::BadShape {
                rows: col.rows(),
                cols: col.cols(),
            });
        }
        let a = col.at(0, 0);
        let b = col.at(1, 0);
        let sum = a + b;
        if !sum.is_finite() || (sum - 1.0).abs() > tol || a < -tol || b < -tol {
            return Err(VectorError::NotInPi { coeff_sum: sum });
        }
        Ok(TruthVector {
            weight: a.clamp(0.0, 1.0),
        })
    }

    /// Weights equal within `tol`.
    pub fn approx_eq(self, other: TruthVector, tol: f64) -> bool {
        (self.weight - other.weight).abs() <= tol
    }
}

/// Scalar projection `sᵀu`: the probabilistic weight of truth.
pub fn scalar_project(u: TruthVector) -> f64 {
    u.weight()
}

/// Equality of truth vectors within `tol` (compares weights).
pub fn vec_eq(u: TruthVector, v: TruthVector, tol: f64) -> bool {
    debug_assert!(tol > 0.0, "tolerance must be positive");
    u.approx_eq(v, tol)
}

/// Number of operand vectors a logic matrix consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Monadic,
    Dyadic,
}

impl Arity {
    pub fn operands(self) -> usize {
        match self {
            Arity::Monadic => 1,
            Arity::Dyadic => 2,
        }
    }
}

/// Error from applying a logic matrix to the wrong number of operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArityMismatch {
    pub expected: usize,
    pub got: usize,
}

impl fmt::Display for ArityMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gate expects {} operand(s), got {}",
            self.expected, self.got
        )
    }
}

impl core::error::Error for ArityMismatch {}

/// A real matrix realizing a logical gate: `2×2` (monadic) or `2×4` (dyadic).
///
/// Construction checks that every column is a probability vector, which is
/// exactly the condition for the matrix to map Π (or Π⊗Π) into Π: the image
/// of a probabilistic input is a convex combination of the columns.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicMatrix {
    arity: Arity,
    entries: Mat,
}

impl LogicMatrix {
    pub fn monadic(entries: Mat) -> Result<LogicMatrix, VectorError> {
        LogicMatrix::checked(Arity::Monadic, entries, 2)
    }

    pub fn dyadic(entries: Mat) -> Result<LogicMatrix, VectorError> {
        LogicMatrix::checked(Arity::Dyadic, entries, 4)
    }

    fn checked(arity: Arity, entries: Mat, cols: usize) -> Result<LogicMatrix, VectorError> {
        if entries.rows() != 2 || entries.cols() != cols {
            return Err(VectorError::BadShape {
                rows: entries.rows(),
                cols: entries.cols(),
            });
        }
        for c in 0..cols {
            let a = entries.at(0, c);
            let b = entries.at(1, c);
            if a < -EXACT_TOL || b < -EXACT_TOL || (a + b - 1.0).abs() > EXACT_TOL {
                return Err(VectorError::NotPiClosed { column: c });
            }
        }
        Ok(LogicMatrix { arity, entries })
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn entries(&self) -> &Mat {
        &self.entries
    }

    /// `M·u` for a monadic matrix.
    pub fn apply1(&self, u: TruthVector) -> Result<TruthVector, ArityMismatch> {
        if self.arity != Arity::Monadic {
            return Err(ArityMismatch {
                expected: self.arity.operands(),
                got: 1,
            });
        }
        let out = self.entries.matmul(&u.column());
        Ok(TruthVector::from_column(&out, EXACT_TOL)
            .expect("Pi-closed matrix produced a vector outside Pi"))
    }

    /// `M·(u ⊗ v)` for a dyadic matrix.
    pub fn apply2(&self, u: TruthVector, v: TruthVector) -> Result<TruthVector, ArityMismatch> {
        if self.arity != Arity::Dyadic {
            return Err(ArityMismatch {
                expected: self.arity.operands(),
                got: 2,
            });
        }
        let out = self.entries.matmul(&u.column().kron(&v.column()));
        Ok(TruthVector::from_column(&out, EXACT_TOL)
            .expect("Pi-closed matrix produced a vector outside Pi"))
    }

    /// Apply to one or two operands, checking the count against the arity.
    pub fn apply(&self, args: &[TruthVector]) -> Result<TruthVector, ArityMismatch> {
        match (self.arity, args) {
            (Arity::Monadic, [u]) => self.apply1(*u),
            (Arity::Dyadic, [u, v]) => self.apply2(*u, *v),
            _ => Err(ArityMismatch {
                expected: self.arity.operands(),
                got: args.len(),
            }),
        }
    }
}
