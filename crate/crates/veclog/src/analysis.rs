//! Derivative-based analysis of classical tautologies and logical chains:
//! the decreasing tautology hierarchy, the pivot-derivative boundary cases,
//! argument-sensitivity reports, and probabilistic lower-bound scans.

use crate::derivative::diff;
use crate::eval::{equivalent, eval_scalar, Assignment, EvalError};
use crate::formula::Formula;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Variable cap for sensitivity reports (2^(n−1) corners per variable).
pub const SENSITIVITY_VAR_CAP: usize = 12;

/// The built-in tautology library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tautology {
    /// `p | !p`
    ExcludedMiddle,
    /// `(p & (p -> q)) -> q`
    ModusPonens,
    /// `((p -> q) & (q -> r)) -> (p -> r)`
    HypotheticalSyllogism,
    /// `(p & q) -> p`
    Subtautology,
}

impl Tautology {
    pub const ALL: [Tautology; 4] = [
        Tautology::ExcludedMiddle,
        Tautology::ModusPonens,
        Tautology::HypotheticalSyllogism,
        Tautology::Subtautology,
    ];

    pub fn abbrev(self) -> &'static str {
        match self {
            Tautology::ExcludedMiddle => "EM",
            Tautology::ModusPonens => "MP",
            Tautology::HypotheticalSyllogism => "HS",
            Tautology::Subtautology => "ST",
        }
    }

    pub fn from_abbrev(name: &str) -> Option<Tautology> {
        Tautology::ALL
            .into_iter()
            .find(|t| t.abbrev().eq_ignore_ascii_case(name))
    }

    /// The canonical formula over variables `p`, `q`, `r`.
    pub fn formula(self) -> Formula {
        match self {
            Tautology::ExcludedMiddle => excluded_middle("p"),
            Tautology::ModusPonens => modus_ponens("p", "q"),
            Tautology::HypotheticalSyllogism => hypothetical_syllogism("p", "q", "r"),
            Tautology::Subtautology => subtautology("q", "p"),
        }
    }
}

impl fmt::Display for Tautology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.abbrev())
    }
}

/// `u | !u`
pub fn excluded_middle(u: &str) -> Formula {
    Formula::or(Formula::var(u), Formula::not(Formula::var(u)))
}

/// `(u & (u -> v)) -> v`
pub fn modus_ponens(u: &str, v: &str) -> Formula {
    Formula::imp(
        Formula::and(Formula::var(u), Formula::imp(Formula::var(u), Formula::var(v))),
        Formula::var(v),
    )
}

/// `((u -> v) & (v -> w)) -> (u -> w)`
pub fn hypothetical_syllogism(u: &str, v: &str, w: &str) -> Formula {
    Formula::imp(
        Formula::and(
            Formula::imp(Formula::var(u), Formula::var(v)),
            Formula::imp(Formula::var(v), Formula::var(w)),
        ),
        Formula::imp(Formula::var(u), Formula::var(w)),
    )
}

/// `(w & u) -> w` — the subtautology extracted from the pivot derivative.
pub fn subtautology(u: &str, w: &str) -> Formula {
    Formula::imp(Formula::and(Formula::var(w), Formula::var(u)), Formula::var(w))
}

/// One step of the decreasing hierarchy: negated differentiation of `from`
/// with respect to `variable` lands on `expected`.
#[derive(Clone, Debug, PartialEq)]
pub struct HierarchyStep {
    pub from: Formula,
    pub variable: String,
    /// `!(∂from/∂variable)`, constant-folded.
    pub negated_derivative: Formula,
    pub expected: Formula,
    pub holds: bool,
}

/// The three verdicts of the transition diagram HS → MP → EM → ⊤.
#[derive(Clone, Debug, PartialEq)]
pub struct HierarchyReport {
    pub steps: [HierarchyStep; 3],
}

impl HierarchyReport {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

fn hierarchy_step(from: Formula, variable: &str, expected: Formula) -> HierarchyStep {
    let d = diff(&from, variable);
    let negated = crate::derivative::constant_fold(&Formula::not(d.formula));
    let holds = equivalent(&negated, &expected).unwrap_or(false);
    HierarchyStep {
        from,
        variable: variable.to_string(),
        negated_derivative: negated,
        expected,
        holds,
    }
}

/// Verify the three steps of the tautology hierarchy:
/// `!(∂HS/∂p) ≡ MP(q,r)`, `!(∂MP/∂p) ≡ EM(q)`, `!(∂EM/∂p) ≡ 1`.
pub fn hierarchy_check() -> HierarchyReport {
    HierarchyReport {
        steps: [
            hierarchy_step(hypothetical_syllogism("p", "q", "r"), "p", modus_ponens("q", "r")),
            hierarchy_step(modus_ponens("p", "q"), "p", excluded_middle("q")),
            hierarchy_step(excluded_middle("p"), "p", Formula::Const(true)),
        ],
    }
}

/// The hierarchy run as a chain: each step differentiates the previous
/// step's actual output rather than the library formula.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainedHierarchy {
    /// `[HS, !∂/∂p, !∂²/∂p∂q, !∂³/∂p∂q∂r]`, folded.
    pub stages: Vec<Formula>,
    pub holds: bool,
}

pub fn hierarchy_chain() -> ChainedHierarchy {
    let start = hypothetical_syllogism("p", "q", "r");
    let mut stages = alloc::vec![start.clone()];
    let mut current = start;
    for var in ["p", "q", "r"] {
        let negated =
            crate::derivative::constant_fold(&Formula::not(diff(&current, var).formula));
        stages.push(negated.clone());
        current = negated;
    }
    let holds = equivalent(&stages[1], &modus_ponens("q", "r")).unwrap_or(false)
        && equivalent(&stages[2], &excluded_middle("r")).unwrap_or(false)
        && equivalent(&stages[3], &Formula::Const(true)).unwrap_or(false);
    ChainedHierarchy { stages, holds }
}

/// Verdicts for the remaining hypothetical-syllogism derivatives: the third
/// variable, the pivot-derivative boundary cases, and the subtautology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsAuxiliaryReport {
    /// `∂HS/∂r ≡ !MP(!p, !q)`
    pub third_variable: bool,
    /// Pivot `F(u,w) = ∂HS/∂q` at `p := 1`: `F(1,w) ≡ !EM(r)`
    pub pivot_u_true: bool,
    /// `F(u,1) ≡ 0`
    pub pivot_w_true: bool,
    /// `F(0,w) ≡ 0`
    pub pivot_u_false: bool,
    /// `F(u,0) ≡ !EM(p)`
    pub pivot_w_false: bool,
    /// `∂ST/∂q ≡ !(p -> p)`
    pub st_first_variable: bool,
    /// `∂ST/∂p ≡ 0`
    pub st_second_variable: bool,
}

impl HsAuxiliaryReport {
    pub fn all_hold(&self) -> bool {
        self.third_variable
            && self.pivot_u_true
            && self.pivot_w_true
            && self.pivot_u_false
            && self.pivot_w_false
            && self.st_first_variable
            && self.st_second_variable
    }
}

pub fn hs_auxiliary_checks() -> HsAuxiliaryReport {
    let hs = hypothetical_syllogism("p", "q", "r");
    let eq = |a: &Formula, b: &Formula| equivalent(a, b).unwrap_or(false);

    let dhs_dr = diff(&hs, "r").formula;
    let mp_negated_args = Formula::imp(
        Formula::and(
            Formula::not(Formula::var("p")),
            Formula::imp(Formula::not(Formula::var("p")), Formula::not(Formula::var("q"))),
        ),
        Formula::not(Formula::var("q")),
    );
    let third_variable = eq(&dhs_dr, &Formula::not(mp_negated_args));

    // The pivot derivative F(u,w) over {p, r}.
    let pivot = diff(&hs, "q").formula;
    let at = |var: &str, value: bool| pivot.substitute(var, &Formula::Const(value));
    let pivot_u_true = eq(&at("p", true), &Formula::not(excluded_middle("r")));
    let pivot_w_true = eq(&at("r", true), &Formula::Const(false));
    let pivot_u_false = eq(&at("p", false), &Formula::Const(false));
    let pivot_w_false = eq(&at("r", false), &Formula::not(excluded_middle("p")));

    let st = subtautology("q", "p");
    let st_first_variable = eq(
        &diff(&st, "q").formula,
        &Formula::not(Formula::imp(Formula::var("p"), Formula::var("p"))),
    );
    let st_second_variable = eq(&diff(&st, "p").formula, &Formula::Const(false));

    HsAuxiliaryReport {
        third_variable,
        pivot_u_true,
        pivot_w_true,
        pivot_u_false,
        pivot_w_false,
        st_first_variable,
        st_second_variable,
    }
}

/// How a formula reacts to flips of one variable at binary corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sensitivity {
    /// Derivative is a tautology: every flip of the variable flips the formula.
    Sensitive,
    /// Derivative is a contradiction: the variable never matters.
    Insensitive,
    Mixed,
}

impl fmt::Display for Sensitivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sensitivity::Sensitive => "sensitive",
            Sensitivity::Insensitive => "insensitive",
            Sensitivity::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityEntry {
    pub variable: String,
    /// Constant-folded symbolic derivative.
    pub derivative: Formula,
    /// Extremes of the derivative's scalar projection over all binary
    /// assignments of the remaining variables.
    pub min_projection: f64,
    pub max_projection: f64,
    pub classification: Sensitivity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityReport {
    pub formula: Formula,
    pub entries: Vec<SensitivityEntry>,
    /// When exactly one variable is sensitive and all others are
    /// insensitive, the formula agrees with that literal (or its negation)
    /// at every binary point; this is the advisory collapse suggestion.
    pub collapse: Option<Formula>,
}

/// Per-variable derivative report for `f` (at most
/// [`SENSITIVITY_VAR_CAP`] variables).
pub fn sensitivity_report(f: &Formula) -> Result<SensitivityReport, EvalError> {
    let variables = f.variables();
    if variables.len() > SENSITIVITY_VAR_CAP {
        return Err(EvalError::TooManyVariables {
            count: variables.len(),
            cap: SENSITIVITY_VAR_CAP,
        });
    }
    let mut entries = Vec::new();
    for var in variables.iter() {
        let derivative = diff(f, var).folded();
        let rest: Vec<&String> = variables.iter().filter(|v| *v != var).collect();
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for corner in 0..1usize << rest.len() {
            let mut a = Assignment::new();
            for (i, name) in rest.iter().enumerate() {
                a.set_bool(name, (corner >> i) & 1 == 1);
            }
            let value = eval_scalar(&derivative, &a)?;
            min = min.min(value);
            max = max.max(value);
        }
        let classification = if min == 1.0 {
            Sensitivity::Sensitive
        } else if max == 0.0 {
            Sensitivity::Insensitive
        } else {
            Sensitivity::Mixed
        };
        entries.push(SensitivityEntry {
            variable: var.clone(),
            derivative,
            min_projection: min,
            max_projection: max,
            classification,
        });
    }

    let sensitive: Vec<&SensitivityEntry> = entries
        .iter()
        .filter(|e| e.classification == Sensitivity::Sensitive)
        .collect();
    let collapse = if sensitive.len() == 1
        && entries
            .iter()
            .all(|e| e.classification != Sensitivity::Mixed)
    {
        let name = &sensitive[0].variable;
        let positive = Formula::var(name);
        let negative = Formula::not(Formula::var(name));
        if equivalent(f, &positive).unwrap_or(false) {
            Some(positive)
        } else if equivalent(f, &negative).unwrap_or(false) {
            Some(negative)
        } else {
            None
        }
    } else {
        None
    };

    Ok(SensitivityReport {
        formula: f.clone(),
        entries,
        collapse,
    })
}

/// Minimum scalar projection of `f` over the probabilistic grid with the
/// given step on every variable.
pub fn grid_min_scalar(f: &Formula, step: f64) -> f64 {
    assert!(step > 0.0 && step <= 0.25, "grid step must be in (0, 0.25]");
    let mut min = f64::INFINITY;
    crate::eval::scan_grid(f.variables().names(), step, &mut |a| {
        let value = eval_scalar(f, a).expect("grid assignment is total");
        if value < min {
            min = value;
        }
        true
    });
    min
}

/// Minimum scalar projection of a library tautology on a probabilistic
/// grid. For EM, MP, and HS this stays at or above 3/4.
pub fn tautology_bound_scan(id: Tautology, step: f64) -> f64 {
    grid_min_scalar(&id.formula(), step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::is_tautology;
    use crate::parser::parse;

    #[test]
    fn library_formulas_are_tautologies() {
        for t in Tautology::ALL {
            assert!(is_tautology(&t.formula()).unwrap(), "{t} is not a tautology");
        }
    }

    #[test]
    fn hierarchy_steps_all_hold() {
        let report = hierarchy_check();
        assert!(report.all_hold());
        assert_eq!(report.steps[0].expected, modus_ponens("q", "r"));
    }

    #[test]
    fn chained_hierarchy_reaches_truth() {
        let chain = hierarchy_chain();
        assert!(chain.holds);
        assert_eq!(chain.stages.len(), 4);
    }

    #[test]
    fn mp_second_variable_gives_negated_em() {
        let d = diff(&modus_ponens("p", "q"), "q").formula;
        assert!(equivalent(&d, &Formula::not(excluded_middle("p"))).unwrap());
    }

    #[test]
    fn auxiliary_checks_all_hold() {
        let report = hs_auxiliary_checks();
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn em_equalities_hold_by_oracle_and_numerically() {
        let em = excluded_middle("p");
        let flipped = parse("!p | p").unwrap();
        let as_impl = parse("p -> p").unwrap();
        assert!(equivalent(&em, &flipped).unwrap());
        assert!(equivalent(&em, &as_impl).unwrap());
        for k in 0..=20 {
            let a = crate::eval::Assignment::from_pairs([("p", k as f64 / 20.0)]).unwrap();
            let reference = crate::eval::eval_scalar(&em, &a).unwrap();
            for other in [&flipped, &as_impl] {
                let got = crate::eval::eval_scalar(other, &a).unwrap();
                assert!((got - reference).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn worked_example_sensitivity() {
        let h = parse("(p | q) -> (!q & p)").unwrap();
        let report = sensitivity_report(&h).unwrap();
        assert_eq!(report.entries.len(), 2);

        let p = &report.entries[0];
        assert_eq!(p.variable, "p");
        assert_eq!(p.classification, Sensitivity::Insensitive);
        assert_eq!((p.min_projection, p.max_projection), (0.0, 0.0));

        let q = &report.entries[1];
        assert_eq!(q.variable, "q");
        assert_eq!(q.classification, Sensitivity::Sensitive);
        assert_eq!((q.min_projection, q.max_projection), (1.0, 1.0));

        assert_eq!(report.collapse, Some(parse("!q").unwrap()));
    }

    #[test]
    fn conjunction_variables_are_mixed() {
        let report = sensitivity_report(&parse("p & q").unwrap()).unwrap();
        for entry in &report.entries {
            assert_eq!(entry.classification, Sensitivity::Mixed);
            assert_eq!((entry.min_projection, entry.max_projection), (0.0, 1.0));
        }
        assert_eq!(report.collapse, None);
    }

    #[test]
    fn sensitivity_cap_is_enforced() {
        let mut f = Formula::var("a");
        for name in [
            "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m",
        ] {
            f = Formula::and(f, Formula::var(name));
        }
        assert!(matches!(
            sensitivity_report(&f),
            Err(EvalError::TooManyVariables { count: 13, cap: 12 })
        ));
    }

    #[test]
    fn em_bound_minimum_is_three_quarters() {
        let min = tautology_bound_scan(Tautology::ExcludedMiddle, 0.05);
        assert!((min - 0.75).abs() <= 1e-9);
    }

    #[test]
    fn mp_and_hs_bounds_stay_above_three_quarters() {
        for id in [Tautology::ModusPonens, Tautology::HypotheticalSyllogism] {
            let min = tautology_bound_scan(id, 0.05);
            assert!(min >= 0.75 - 1e-9, "{id}: {min}");
        }
    }
}
