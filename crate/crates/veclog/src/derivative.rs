//! Boolean derivatives of formulas: symbolic, numeric, cross, and successive.
//!
//! The partial derivative of `f` with respect to `x` is the exclusive-or of
//! the two cofactors, `Xor(f[x:=1], f[x:=0])` — the condition under which
//! flipping `x` flips `f`. The variable is eliminated by the substitution,
//! so the derivative is a formula over the remaining variables only.
//!
//! Numerically, the same operation is the XOR gate applied to the vector
//! evaluations of the cofactors, which stays meaningful for probabilistic
//! inputs: the XOR weight map is `φ(x,y) = x + y − 2xy`.

use crate::eval::{eval_vector, Assignment, EvalError};
use crate::formula::{BinOp, Formula};
use crate::gates::Gate;
use crate::vector::TruthVector;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// A symbolic partial derivative.
///
/// `formula` is the raw XOR of the two substituted copies; run
/// [`Derivative::folded`] for the constant-folded form. The differentiation
/// variable never occurs in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivative {
    pub input: Formula,
    pub variable: String,
    pub formula: Formula,
}

impl Derivative {
    /// Constant-folded form of the derivative.
    pub fn folded(&self) -> Formula {
        constant_fold(&self.formula)
    }
}

/// Partial derivative of `f` with respect to `var`.
///
/// When `var` does not occur in `f` the substitutions are identities and the
/// result is `Xor(f, f)` — the "silent function" derivative, which is false
/// at binary points but carries weight `2ε(1−ε)` for probabilistic inputs.
pub fn diff(f: &Formula, var: &str) -> Derivative {
    let on_true = f.substitute(var, &Formula::Const(true));
    let on_false = f.substitute(var, &Formula::Const(false));
    Derivative {
        input: f.clone(),
        variable: var.to_string(),
        formula: Formula::xor(on_true, on_false),
    }
}

/// Constant folding: ⊤/⊥ absorption and double negation. No other rewriting
/// is performed — oracle equivalence, not normal form, is the contract.
pub fn constant_fold(f: &Formula) -> Formula {
    match f {
        Formula::Const(_) | Formula::Var(_) => f.clone(),
        Formula::Not(inner) => match constant_fold(inner) {
            Formula::Const(b) => Formula::Const(!b),
            Formula::Not(inner2) => *inner2,
            folded => Formula::not(folded),
        },
        Formula::Binary(op, l, r) => {
            let l = constant_fold(l);
            let r = constant_fold(r);
            match (op, &l, &r) {
                (_, Formula::Const(a), Formula::Const(b)) => Formula::Const(op.eval(*a, *b)),
                (BinOp::And, Formula::Const(true), _) => r,
                (BinOp::And, _, Formula::Const(true)) => l,
                (BinOp::And, Formula::Const(false), _)
                | (BinOp::And, _, Formula::Const(false)) => Formula::Const(false),
                (BinOp::Or, Formula::Const(false), _) => r,
                (BinOp::Or, _, Formula::Const(false)) => l,
                (BinOp::Or, Formula::Const(true), _) | (BinOp::Or, _, Formula::Const(true)) => {
                    Formula::Const(true)
                }
                (BinOp::Xor, Formula::Const(false), _) => r,
                (BinOp::Xor, _, Formula::Const(false)) => l,
                (BinOp::Xor, Formula::Const(true), _) => constant_fold(&Formula::not(r)),
                (BinOp::Xor, _, Formula::Const(true)) => constant_fold(&Formula::not(l)),
                (BinOp::Impl, Formula::Const(true), _) => r,
                (BinOp::Impl, Formula::Const(false), _) => Formula::Const(true),
                (BinOp::Impl, _, Formula::Const(true)) => Formula::Const(true),
                (BinOp::Impl, _, Formula::Const(false)) => constant_fold(&Formula::not(l)),
                (BinOp::Equiv, Formula::Const(true), _) => r,
                (BinOp::Equiv, _, Formula::Const(true)) => l,
                (BinOp::Equiv, Formula::Const(false), _) => constant_fold(&Formula::not(r)),
                (BinOp::Equiv, _, Formula::Const(false)) => constant_fold(&Formula::not(l)),
                (BinOp::Nand, Formula::Const(false), _)
                | (BinOp::Nand, _, Formula::Const(false)) => Formula::Const(true),
                (BinOp::Nand, Formula::Const(true), _) => constant_fold(&Formula::not(r)),
                (BinOp::Nand, _, Formula::Const(true)) => constant_fold(&Formula::not(l)),
                (BinOp::Nor, Formula::Const(true), _) | (BinOp::Nor, _, Formula::Const(true)) => {
                    Formula::Const(false)
                }
                (BinOp::Nor, Formula::Const(false), _) => constant_fold(&Formula::not(r)),
                (BinOp::Nor, _, Formula::Const(false)) => constant_fold(&Formula::not(l)),
                _ => Formula::binary(*op, l, r),
            }
        }
    }
}

/// Numeric derivative: `X(f[var:=1] ⊗ f[var:=0])` with the cofactors
/// evaluated as vectors under `others`.
pub fn diff_numeric(
    f: &Formula,
    var: &str,
    others: &Assignment,
) -> Result<TruthVector, EvalError> {
    let mut on_true = others.clone();
    on_true.set_bool(var, true);
    let mut on_false = others.clone();
    on_false.set_bool(var, false);
    let u = eval_vector(f, &on_true)?;
    let v = eval_vector(f, &on_false)?;
    Ok(Gate::X.matrix().apply2(u, v).expect("arity checked"))
}

/// The XOR weight map `φ(x, y) = x + y − 2xy`.
pub fn xor_weight(x: f64, y: f64) -> f64 {
    x + y - 2.0 * x * y
}

/// Errors from cross differentiation.
#[derive(Clone, Debug, PartialEq)]
pub enum DerivativeError {
    DuplicateVariable(String),
    Eval(EvalError),
}

impl fmt::Display for DerivativeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivativeError::DuplicateVariable(name) => {
                write!(f, "cross derivative needs two distinct variables, got '{name}' twice")
            }
            DerivativeError::Eval(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for DerivativeError {}

impl From<EvalError> for DerivativeError {
    fn from(e: EvalError) -> Self {
        DerivativeError::Eval(e)
    }
}

/// A second-order mixed derivative. `first`/`second` record the order
/// actually applied (alphabetical, for a canonical rendered output); the
/// result is order-independent up to equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossDerivative {
    pub input: Formula,
    pub first: String,
    pub second: String,
    pub formula: Formula,
}

impl CrossDerivative {
    pub fn folded(&self) -> Formula {
        constant_fold(&self.formula)
    }
}

/// Mixed derivative `∂²f/∂[a,b]`, differentiating the alphabetically first
/// variable first.
pub fn cross_diff(f: &Formula, a: &str, b: &str) -> Result<CrossDerivative, DerivativeError> {
    if a == b {
        return Err(DerivativeError::DuplicateVariable(a.to_string()));
    }
    let (first, second) = if a <= b { (a, b) } else { (b, a) };
    let inner = diff(f, first);
    let outer = diff(&inner.formula, second);
    Ok(CrossDerivative {
        input: f.clone(),
        first: first.to_string(),
        second: second.to_string(),
        formula: outer.formula,
    })
}

/// Numeric mixed derivative: the XOR gate over the numeric derivatives of
/// the `b`-cofactors.
pub fn cross_diff_numeric(
    f: &Formula,
    a: &str,
    b: &str,
    others: &Assignment,
) -> Result<TruthVector, DerivativeError> {
    if a == b {
        return Err(DerivativeError::DuplicateVariable(a.to_string()));
    }
    let mut on_true = others.clone();
    on_true.set_bool(b, true);
    let mut on_false = others.clone();
    on_false.set_bool(b, false);
    let z1 = diff_numeric(f, a, &on_true)?;
    let z0 = diff_numeric(f, a, &on_false)?;
    Ok(Gate::X.matrix().apply2(z1, z0).expect("arity checked"))
}

/// Numeric second derivative with respect to the same variable.
///
/// The first derivative `z` no longer contains `var`, so the second pass is
/// the silent-function derivative `X(z ⊗ z)`: if `z` has weight `φ` the
/// result has weight `2φ(1−φ)`. This is intentionally not the symbolic
/// derivative applied twice — that collapses to a contradiction in the
/// binary domain, while the weight map keeps the probabilistic content.
pub fn second_diff_numeric(
    f: &Formula,
    var: &str,
    others: &Assignment,
) -> Result<TruthVector, EvalError> {
    let z = diff_numeric(f, var, others)?;
    Ok(Gate::X.matrix().apply2(z, z).expect("arity checked"))
}

/// Iterates of the successive-derivative weight map `ε′ = 2ε(1−ε)`.
///
/// Returns `steps + 1` values starting with `eps0`. The map fixes 0 and 1/2;
/// every other start is driven to the attractor 1/2.
pub fn derivative_orbit(eps0: f64, steps: usize) -> Vec<f64> {
    assert!(
        eps0.is_finite() && (0.0..=1.0).contains(&eps0),
        "orbit start must lie in [0,1]"
    );
    let mut orbit = Vec::with_capacity(steps + 1);
    let mut eps = eps0;
    orbit.push(eps);
    for _ in 0..steps {
        eps = 2.0 * eps * (1.0 - eps);
        orbit.push(eps);
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{equivalent, eval_scalar};
    use crate::parser::parse;

    fn assign(pairs: &[(&str, f64)]) -> Assignment {
        Assignment::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn conjunction_derivative_is_the_other_variable() {
        let d = diff(&parse("p & q").unwrap(), "p");
        assert!(equivalent(&d.formula, &parse("q").unwrap()).unwrap());
        assert!(!d.formula.variables().contains("p"));
    }

    #[test]
    fn implication_derivatives_are_asymmetric() {
        let f = parse("p -> q").unwrap();
        assert!(equivalent(&diff(&f, "p").formula, &parse("!q").unwrap()).unwrap());
        assert!(equivalent(&diff(&f, "q").formula, &parse("p").unwrap()).unwrap());
    }

    #[test]
    fn excluded_middle_derivative_is_false() {
        let d = diff(&parse("p | !p").unwrap(), "p");
        assert!(equivalent(&d.formula, &Formula::Const(false)).unwrap());
        assert_eq!(d.folded(), Formula::Const(false));
    }

    #[test]
    fn absent_variable_gives_silent_xor() {
        let f = parse("q").unwrap();
        let d = diff(&f, "p");
        assert_eq!(d.formula, Formula::xor(f.clone(), f));
    }

    #[test]
    fn equivalence_derivative_weight_has_half_minimum() {
        // ∂(p<->q)/∂p carries weight β² + (1−β)², minimal 1/2 at β = 1/2.
        let f = parse("p <-> q").unwrap();
        for k in 0..=10 {
            let beta = k as f64 / 10.0;
            let got = diff_numeric(&f, "p", &assign(&[("q", beta)])).unwrap();
            let expect = beta * beta + (1.0 - beta) * (1.0 - beta);
            assert!((got.weight() - expect).abs() <= 1e-12);
        }
        let mid = diff_numeric(&f, "p", &assign(&[("q", 0.5)])).unwrap();
        assert!((mid.weight() - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn constant_formula_has_null_derivative() {
        let d = diff_numeric(&Formula::Const(true), "p", &Assignment::new()).unwrap();
        assert_eq!(d, TruthVector::FALSE);
    }

    #[test]
    fn table_three_row_c_at_binary_point() {
        let d = diff_numeric(&parse("p & q").unwrap(), "p", &assign(&[("q", 1.0)])).unwrap();
        assert_eq!(d, TruthVector::TRUE);
    }

    #[test]
    fn cross_derivative_of_conjunction_is_true() {
        let c = cross_diff(&parse("p & q").unwrap(), "p", "q").unwrap();
        assert!(equivalent(&c.formula, &Formula::Const(true)).unwrap());
        let e = cross_diff(&parse("p <-> q").unwrap(), "q", "p").unwrap();
        assert!(equivalent(&e.formula, &Formula::Const(false)).unwrap());
        assert_eq!(e.first, "p");
    }

    #[test]
    fn cross_diff_rejects_duplicate_variable() {
        assert_eq!(
            cross_diff(&parse("p & q").unwrap(), "p", "p"),
            Err(DerivativeError::DuplicateVariable("p".to_string()))
        );
    }

    #[test]
    fn second_derivative_weight_map() {
        // First derivative of h = (p|q)->(!q&p) w.r.t. p has weight
        // 2β(1−β); at β = 0.9 that is 0.18, and the second derivative is
        // 2·0.18·0.82 = 0.2952. Cross-checked against X(z⊗z) directly.
        let h = parse("(p | q) -> (!q & p)").unwrap();
        let others = assign(&[("q", 0.9)]);
        let z = diff_numeric(&h, "p", &others).unwrap();
        assert!((z.weight() - 0.18).abs() <= 1e-12);
        let dd = second_diff_numeric(&h, "p", &others).unwrap();
        assert!((dd.weight() - 0.2952).abs() <= 1e-12);
        let direct = Gate::X.matrix().apply2(z, z).unwrap();
        assert!(dd.approx_eq(direct, 1e-12));
    }

    #[test]
    fn half_weight_is_a_fixed_point_of_the_second_derivative() {
        // d(p<->q)/dp at q = 1/2 weighs 1/2, and 2φ(1−φ) keeps it there.
        let f = parse("p <-> q").unwrap();
        let others = assign(&[("q", 0.5)]);
        assert!((diff_numeric(&f, "p", &others).unwrap().weight() - 0.5).abs() <= 1e-12);
        let dd = second_diff_numeric(&f, "p", &others).unwrap();
        assert!((dd.weight() - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn binary_first_derivative_makes_second_false() {
        let f = parse("p & q").unwrap();
        for b in [0.0, 1.0] {
            let dd = second_diff_numeric(&f, "p", &assign(&[("q", b)])).unwrap();
            assert_eq!(dd, TruthVector::FALSE);
        }
    }

    #[test]
    fn orbit_fixed_points_and_attractor() {
        assert!(derivative_orbit(0.0, 5).iter().all(|e| *e == 0.0));
        assert!(derivative_orbit(0.5, 5).iter().all(|e| *e == 0.5));
        let orbit = derivative_orbit(0.9, 20);
        assert_eq!(orbit.len(), 21);
        assert!((orbit.last().unwrap() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn folding_removes_substituted_constants() {
        let d = diff(&parse("(p & q) -> r").unwrap(), "p");
        let folded = d.folded();
        // Xor(q -> r, 1) folds to !(q -> r).
        assert_eq!(folded, parse("!(q -> r)").unwrap());
    }

    #[test]
    fn numeric_matches_symbolic_on_probabilistic_grid() {
        let f = parse("(p ^ q) -> (q !& r)").unwrap();
        for i in 0..=4 {
            for j in 0..=4 {
                let others = assign(&[("q", i as f64 / 4.0), ("r", j as f64 / 4.0)]);
                let numeric = diff_numeric(&f, "p", &others).unwrap();
                let symbolic = eval_scalar(&diff(&f, "p").formula, &others).unwrap();
                assert!((numeric.weight() - symbolic).abs() <= 1e-9);
            }
        }
    }
}
