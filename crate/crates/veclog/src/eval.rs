//! Formula evaluation: classical binary semantics, matrix-vector semantics,
//! and the exhaustive truth-table oracle.
//!
//! `eval_binary` is deliberately independent of the matrix machinery — it is
//! the ground truth that the vector route is checked against. `eval_vector`
//! recurses over the syntax tree applying the gate matrices, so a formula
//! evaluation really is a chain of matrix-vector products.

use crate::formula::{Formula, VariableSet};
use crate::gates::Gate;
use crate::vector::{scalar_project, TruthVector};
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Default cap on truth-table enumeration (2^20 rows).
pub const DEFAULT_VAR_CAP: usize = 20;

/// Map from variable name to a weight in `[0,1]`.
///
/// Binary assignments are the special case where every weight is 0 or 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assignment {
    weights: BTreeMap<String, f64>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    /// Insert a weight; rejects values outside `[0,1]`.
    pub fn set(&mut self, name: &str, weight: f64) -> Result<(), EvalError> {
        if !weight.is_finite() || !(0.0..=1.0).contains(&weight) {
            return Err(EvalError::WeightOutOfRange {
                variable: name.to_string(),
                weight,
            });
        }
        self.weights.insert(name.to_string(), weight);
        Ok(())
    }

    pub fn set_bool(&mut self, name: &str, value: bool) {
        self.weights
            .insert(name.to_string(), if value { 1.0 } else { 0.0 });
    }

    pub fn from_pairs<'a, I>(pairs: I) -> Result<Assignment, EvalError>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let mut a = Assignment::new();
        for (name, weight) in pairs {
            a.set(name, weight)?;
        }
        Ok(a)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.weights.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.weights.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// True iff every weight is exactly 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.weights.values().all(|w| *w == 0.0 || *w == 1.0)
    }
}

/// Errors from evaluation and truth-table enumeration.
#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    MissingVariable(String),
    NonBinaryWeight { variable: String, weight: f64 },
    WeightOutOfRange { variable: String, weight: f64 },
    TooManyVariables { count: usize, cap: usize },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::MissingVariable(name) => {
                write!(f, "assignment does not cover variable '{name}'")
            }
            EvalError::NonBinaryWeight { variable, weight } => {
                write!(
                    f,
                    "binary evaluation needs 0/1 weights, but '{variable}' = {weight}"
                )
            }
            EvalError::WeightOutOfRange { variable, weight } => {
                write!(f, "weight {weight} for '{variable}' is outside [0,1]")
            }
            EvalError::TooManyVariables { count, cap } => {
                write!(f, "formula has {count} variables, cap is {cap}")
            }
        }
    }
}

impl core::error::Error for EvalError {}

/// Classical two-valued evaluation. The assignment must be binary and total
/// over the formula's variables.
pub fn eval_binary(f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    match f {
        Formula::Const(b) => Ok(*b),
        Formula::Var(name) => {
            let w = a
                .get(name)
                .ok_or_else(|| EvalError::MissingVariable(name.clone()))?;
            if w == 1.0 {
                Ok(true)
            } else if w == 0.0 {
                Ok(false)
            } else {
                Err(EvalError::NonBinaryWeight {
                    variable: name.clone(),
                    weight: w,
                })
            }
        }
        Formula::Not(inner) => Ok(!eval_binary(inner, a)?),
        Formula::Binary(op, l, r) => Ok(op.eval(eval_binary(l, a)?, eval_binary(r, a)?)),
    }
}

/// Matrix-vector evaluation: structural recursion applying gate matrices.
/// The result is in Π for any assignment of weights in `[0,1]`.
pub fn eval_vector(f: &Formula, a: &Assignment) -> Result<TruthVector, EvalError> {
    match f {
        Formula::Const(b) => Ok(TruthVector::from_bool(*b)),
        Formula::Var(name) => {
            let w = a
                .get(name)
                .ok_or_else(|| EvalError::MissingVariable(name.clone()))?;
            Ok(TruthVector::new(w).expect("assignment enforces [0,1]"))
        }
        Formula::Not(inner) => {
            let u = eval_vector(inner, a)?;
            Ok(Gate::N.matrix().apply1(u).expect("arity checked"))
        }
        Formula::Binary(op, l, r) => {
            let u = eval_vector(l, a)?;
            let v = eval_vector(r, a)?;
            Ok(op.gate().matrix().apply2(u, v).expect("arity checked"))
        }
    }
}

/// Scalar projection of the vector evaluation: `sᵀ · eval_vector(f, a)`.
pub fn eval_scalar(f: &Formula, a: &Assignment) -> Result<f64, EvalError> {
    Ok(scalar_project(eval_vector(f, a)?))
}

/// Exhaustive binary valuation of a formula.
///
/// Rows are ordered with the all-true row first and descend
/// lexicographically, mirroring the usual truth-table layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    variables: VariableSet,
    outputs: Vec<bool>,
}

impl TruthTable {
    pub fn variables(&self) -> &VariableSet {
        &self.variables
    }

    /// Output bits, one per row, in display order (all-true row first).
    pub fn outputs(&self) -> &[bool] {
        &self.outputs
    }

    pub fn num_rows(&self) -> usize {
        self.outputs.len()
    }

    /// The input values of row `row`, aligned with `variables()`.
    pub fn row_inputs(&self, row: usize) -> Vec<bool> {
        let n = self.variables.len();
        (0..n).map(|i| (row >> (n - 1 - i)) & 1 == 0).collect()
    }

    pub fn is_all_true(&self) -> bool {
        self.outputs.iter().all(|b| *b)
    }

    pub fn is_all_false(&self) -> bool {
        self.outputs.iter().all(|b| !*b)
    }
}

// Index-resolved evaluator used for table enumeration; avoids rebuilding an
// Assignment map per row.
fn eval_bits(f: &Formula, index: &BTreeMap<&str, usize>, bits: &[bool]) -> bool {
    match f {
        Formula::Const(b) => *b,
        Formula::Var(name) => bits[index[name.as_str()]],
        Formula::Not(inner) => !eval_bits(inner, index, bits),
        Formula::Binary(op, l, r) => {
            op.eval(eval_bits(l, index, bits), eval_bits(r, index, bits))
        }
    }
}

fn enumerate(f: &Formula, variables: &VariableSet) -> Vec<bool> {
    let n = variables.len();
    let index: BTreeMap<&str, usize> = variables
        .iter()
        .enumerate()
        .map(|(i, name)| (name.as_str(), i))
        .collect();
    let mut bits = alloc::vec![false; n];
    (0..1usize << n)
        .map(|row| {
            for (i, bit) in bits.iter_mut().enumerate() {
                *bit = (row >> (n - 1 - i)) & 1 == 0;
            }
            eval_bits(f, &index, &bits)
        })
        .collect()
}

/// Truth table with the default variable cap.
pub fn truth_table(f: &Formula) -> Result<TruthTable, EvalError> {
    truth_table_capped(f, DEFAULT_VAR_CAP)
}

/// Truth table with an explicit variable cap.
pub fn truth_table_capped(f: &Formula, cap: usize) -> Result<TruthTable, EvalError> {
    let variables = f.variables();
    if variables.len() > cap {
        return Err(EvalError::TooManyVariables {
            count: variables.len(),
            cap,
        });
    }
    let outputs = enumerate(f, &variables);
    Ok(TruthTable { variables, outputs })
}

/// Inclusive weight grid from 0 to 1 with the given step.
pub fn grid_weights(step: f64) -> Vec<f64> {
    assert!(step > 0.0 && step <= 1.0, "grid step must be in (0, 1]");
    let ratio = 1.0 / step;
    let mut ticks = ratio as usize;
    if (ticks as f64) < ratio - 1e-9 {
        ticks += 1;
    }
    (0..=ticks).map(|k| (k as f64 * step).min(1.0)).collect()
}

/// Visit every assignment of `vars` to grid weights with the given step.
/// Stops early and returns false the first time `visit` does.
pub fn scan_grid(vars: &[String], step: f64, visit: &mut dyn FnMut(&Assignment) -> bool) -> bool {
    fn rec(
        vars: &[String],
        weights: &[f64],
        current: &mut Assignment,
        visit: &mut dyn FnMut(&Assignment) -> bool,
    ) -> bool {
        match vars.split_first() {
            None => visit(current),
            Some((name, rest)) => {
                for &w in weights {
                    current.set(name, w).expect("grid weights are in range");
                    if !rec(rest, weights, current, visit) {
                        return false;
                    }
                }
                true
            }
        }
    }
    let weights = grid_weights(step);
    rec(vars, &weights, &mut Assignment::new(), visit)
}

/// Semantic equivalence over the union of both variable sets; variables
/// absent from one side are vacuous there.
pub fn equivalent(f: &Formula, g: &Formula) -> Result<bool, EvalError> {
    equivalent_capped(f, g, DEFAULT_VAR_CAP)
}

pub fn equivalent_capped(f: &Formula, g: &Formula, cap: usize) -> Result<bool, EvalError> {
    // Xor(f, g) is a contradiction exactly when f and g agree everywhere,
    // and its variable set is the union we need.
    let difference = Formula::xor(f.clone(), g.clone());
    Ok(truth_table_capped(&difference, cap)?.is_all_false())
}

/// True iff every truth-table row evaluates to 1.
pub fn is_tautology(f: &Formula) -> Result<bool, EvalError> {
    is_tautology_capped(f, DEFAULT_VAR_CAP)
}

pub fn is_tautology_capped(f: &Formula, cap: usize) -> Result<bool, EvalError> {
    Ok(truth_table_capped(f, cap)?.is_all_true())
}
