//! Boolean antiderivatives: general integrals, detachment conditions, and
//! the particular-integral search.
//!
//! An integral of `f` with respect to a fresh variable `τ` is any formula
//! whose derivative with respect to `τ` is equivalent to `f`. Every formula
//! has four general integrals, `f→τ`, `!(f→τ)`, `f∧τ`, `!(f∧τ)`. Particular
//! integrals come from substituting templates `B(v,τ)` for the variable
//! occurrences of `f` so that differentiation detaches `f` back out; the
//! detachment conditions are a pre-filter, and every candidate is accepted
//! only after verification against the derivative oracle.

use crate::derivative::{constant_fold, diff, diff_numeric};
use crate::eval::{equivalent, eval_vector, scan_grid};
use crate::formula::Formula;
use crate::NUMERIC_TOL;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Default cap on the number of candidates examined by the search.
pub const DEFAULT_CANDIDATE_CAP: usize = 10_000;

/// Placeholder for the substituted variable inside a template body.
pub const TEMPLATE_VAR: &str = "v";
/// Placeholder for the integration variable inside a template body.
pub const TEMPLATE_TAU: &str = "t";

/// The four general-integral forms `H·L(Op ⊗ H′τ)` with `H, H′ ∈ {I, N}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralVersion {
    /// `L(Op ⊗ τ)`: the formula `f -> τ`.
    V1,
    /// `NL(Op ⊗ τ)`: the formula `!(f -> τ)`.
    V2,
    /// `NL(Op ⊗ Nτ) = C(Op ⊗ τ)`: the formula `f & τ`.
    V3,
    /// `L(Op ⊗ Nτ) = NC(Op ⊗ τ)`: the formula `!(f & τ)`.
    V4,
}

impl IntegralVersion {
    pub const ALL: [IntegralVersion; 4] = [
        IntegralVersion::V1,
        IntegralVersion::V2,
        IntegralVersion::V3,
        IntegralVersion::V4,
    ];

    pub fn number(self) -> u8 {
        match self {
            IntegralVersion::V1 => 1,
            IntegralVersion::V2 => 2,
            IntegralVersion::V3 => 3,
            IntegralVersion::V4 => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<IntegralVersion> {
        IntegralVersion::ALL.into_iter().find(|v| v.number() == n)
    }

    /// Whether the outer factor `H` is the negation matrix.
    pub fn outer_negated(self) -> bool {
        matches!(self, IntegralVersion::V2 | IntegralVersion::V3)
    }

    /// Whether the inner factor `H′` negates `τ`.
    pub fn tau_negated(self) -> bool {
        matches!(self, IntegralVersion::V3 | IntegralVersion::V4)
    }

    pub fn notation(self) -> &'static str {
        match self {
            IntegralVersion::V1 => "L(Op ⊗ τ)",
            IntegralVersion::V2 => "NL(Op ⊗ τ)",
            IntegralVersion::V3 => "C(Op ⊗ τ)",
            IntegralVersion::V4 => "NC(Op ⊗ τ)",
        }
    }
}

impl fmt::Display for IntegralVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "version {} [{}]", self.number(), self.notation())
    }
}

/// Errors from integral construction and the template machinery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralError {
    /// The integration variable already occurs in the formula.
    TauNotFresh(String),
    /// A template body mentions a variable other than `v` and `t`.
    TemplateVariables { template: String, variable: String },
    /// `check_detachment` got a formula whose position count does not match
    /// the number of templates supplied.
    PositionCount { expected: usize, got: usize },
    /// The template library is empty.
    EmptyLibrary,
}

impl fmt::Display for IntegralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralError::TauNotFresh(tau) => {
                write!(f, "integration variable '{tau}' already occurs in the formula")
            }
            IntegralError::TemplateVariables { template, variable } => {
                write!(
                    f,
                    "template '{template}' uses variable '{variable}'; only '{TEMPLATE_VAR}' and '{TEMPLATE_TAU}' are allowed"
                )
            }
            IntegralError::PositionCount { expected, got } => {
                write!(f, "expected {expected} template(s) for the formula's positions, got {got}")
            }
            IntegralError::EmptyLibrary => write!(f, "template library is empty"),
        }
    }
}

impl core::error::Error for IntegralError {}

/// The general integral of `f` with respect to the fresh variable `tau`.
pub fn general_integral(
    f: &Formula,
    tau: &str,
    version: IntegralVersion,
) -> Result<Formula, IntegralError> {
    if f.variables().contains(tau) {
        return Err(IntegralError::TauNotFresh(tau.to_string()));
    }
    let t = Formula::var(tau);
    Ok(match version {
        IntegralVersion::V1 => Formula::imp(f.clone(), t),
        IntegralVersion::V2 => Formula::not(Formula::imp(f.clone(), t)),
        IntegralVersion::V3 => Formula::and(f.clone(), t),
        IntegralVersion::V4 => Formula::not(Formula::and(f.clone(), t)),
    })
}

/// True iff `candidate` is an integral of `f` with respect to `tau`:
/// the derivative oracle must agree, and when both formulas have at most
/// four variables the check is repeated numerically on a 0.25-step
/// probabilistic grid within `1e-9`.
pub fn verify_integral(candidate: &Formula, f: &Formula, tau: &str) -> bool {
    let derivative = diff(candidate, tau).formula;
    if !equivalent(&derivative, f).unwrap_or(false) {
        return false;
    }
    let mut grid_vars: Vec<String> = candidate
        .variables()
        .iter()
        .filter(|name| name.as_str() != tau)
        .cloned()
        .collect();
    for name in f.variables().iter() {
        if !grid_vars.contains(name) {
            grid_vars.push(name.clone());
        }
    }
    if candidate.variables().len() > 4 || f.variables().len() > 4 {
        return true;
    }
    scan_grid(&grid_vars, 0.25, &mut |a| {
        let numeric = diff_numeric(candidate, tau, a).expect("grid assignment is total");
        let expected = eval_vector(f, a).expect("grid assignment is total");
        numeric.approx_eq(expected, NUMERIC_TOL)
    })
}

/// A substitution template: a formula over the placeholders `v` (the
/// substituted occurrence) and `t` (the integration variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionTemplate {
    name: String,
    body: Formula,
}

impl SubstitutionTemplate {
    pub fn new(name: &str, body: Formula) -> Result<SubstitutionTemplate, IntegralError> {
        for var in body.variables().iter() {
            if var != TEMPLATE_VAR && var != TEMPLATE_TAU {
                return Err(IntegralError::TemplateVariables {
                    template: name.to_string(),
                    variable: var.clone(),
                });
            }
        }
        Ok(SubstitutionTemplate {
            name: name.to_string(),
            body,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    /// Instantiate the template: `v` becomes `target`, `t` becomes the
    /// variable `tau`. The two placeholders are replaced simultaneously, so
    /// nothing inside `target` is ever rewritten.
    pub fn instantiate(&self, target: &Formula, tau: &str) -> Formula {
        fn walk(body: &Formula, target: &Formula, tau: &str) -> Formula {
            match body {
                Formula::Const(_) => body.clone(),
                Formula::Var(name) if name == TEMPLATE_VAR => target.clone(),
                Formula::Var(name) if name == TEMPLATE_TAU => Formula::var(tau),
                Formula::Var(_) => body.clone(),
                Formula::Not(inner) => Formula::not(walk(inner, target, tau)),
                Formula::Binary(op, l, r) => {
                    Formula::binary(*op, walk(l, target, tau), walk(r, target, tau))
                }
            }
        }
        walk(&self.body, target, tau)
    }

    /// The template with `t` fixed at a pole, folded; a formula over `v`.
    fn reduce_at(&self, pole: bool) -> Formula {
        constant_fold(&self.body.substitute(TEMPLATE_TAU, &Formula::Const(pole)))
    }
}

/// How a template attaches to a negated occurrence: replacing the whole
/// literal `!x ↦ B(!x, τ)`, or the variable inside it `!x ↦ !B(x, τ)`.
/// For a bare occurrence the two coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemplateMode {
    Literal,
    Variable,
}

impl fmt::Display for TemplateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TemplateMode::Literal => "literal",
            TemplateMode::Variable => "variable",
        })
    }
}

/// Which detachment condition a template assignment satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detachment {
    /// Templates reduce to their variable at `τ = 1` and drive the formula
    /// to false at `τ = 0`.
    C1,
    /// The mirror image: identity at `τ = 0`, false at `τ = 1`.
    C2,
    None,
}

impl fmt::Display for Detachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Detachment::C1 => "c1",
            Detachment::C2 => "c2",
            Detachment::None => "none",
        })
    }
}

fn is_literal(f: &Formula) -> bool {
    let mut cur = f;
    loop {
        match cur {
            Formula::Var(_) => return true,
            Formula::Not(inner) => cur = inner,
            _ => return false,
        }
    }
}

fn literal_negations(f: &Formula) -> (usize, &Formula) {
    let mut cur = f;
    let mut count = 0;
    while let Formula::Not(inner) = cur {
        count += 1;
        cur = inner;
    }
    (count, cur)
}

/// The substitution positions of `f`: its literal occurrences (a variable
/// together with any negations directly wrapping it), in left-to-right
/// traversal order.
pub fn literal_positions(f: &Formula) -> Vec<Formula> {
    fn collect(f: &Formula, out: &mut Vec<Formula>) {
        if is_literal(f) {
            out.push(f.clone());
            return;
        }
        match f {
            Formula::Const(_) | Formula::Var(_) => {}
            Formula::Not(inner) => collect(inner, out),
            Formula::Binary(_, l, r) => {
                collect(l, out);
                collect(r, out);
            }
        }
    }
    let mut out = Vec::new();
    collect(f, &mut out);
    out
}

fn apply_to_literal(
    literal: &Formula,
    template: &SubstitutionTemplate,
    mode: TemplateMode,
    tau_or_reduced: Option<&str>,
    pole: Option<bool>,
) -> Formula {
    // Either instantiate with a live tau variable, or with t fixed at a pole
    // (for the detachment checks).
    let attach = |target: &Formula| match (tau_or_reduced, pole) {
        (Some(tau), None) => template.instantiate(target, tau),
        (None, Some(p)) => constant_fold(&template.reduce_at(p).substitute(TEMPLATE_VAR, target)),
        _ => unreachable!("exactly one of tau/pole is set"),
    };
    match mode {
        TemplateMode::Literal => attach(literal),
        TemplateMode::Variable => {
            let (negations, core) = literal_negations(literal);
            let mut out = attach(core);
            for _ in 0..negations {
                out = Formula::not(out);
            }
            out
        }
    }
}

fn rebuild(
    f: &Formula,
    choices: &[(&SubstitutionTemplate, TemplateMode)],
    tau_or_reduced: Option<&str>,
    pole: Option<bool>,
    next: &mut usize,
) -> Formula {
    if is_literal(f) {
        let (template, mode) = choices[*next];
        *next += 1;
        return apply_to_literal(f, template, mode, tau_or_reduced, pole);
    }
    match f {
        Formula::Const(_) | Formula::Var(_) => f.clone(),
        Formula::Not(inner) => Formula::not(rebuild(inner, choices, tau_or_reduced, pole, next)),
        Formula::Binary(op, l, r) => {
            let left = rebuild(l, choices, tau_or_reduced, pole, next);
            let right = rebuild(r, choices, tau_or_reduced, pole, next);
            Formula::binary(*op, left, right)
        }
    }
}

/// Apply one template-and-mode choice per literal position of `f`, with a
/// live integration variable `tau`.
pub fn apply_choices(
    f: &Formula,
    choices: &[(&SubstitutionTemplate, TemplateMode)],
    tau: &str,
) -> Result<Formula, IntegralError> {
    let positions = literal_positions(f);
    if positions.len() != choices.len() {
        return Err(IntegralError::PositionCount {
            expected: positions.len(),
            got: choices.len(),
        });
    }
    let mut next = 0;
    Ok(rebuild(f, choices, Some(tau), None, &mut next))
}

/// Per-position detachment check for an arbitrary number of positions.
pub fn check_detachment_each(
    f: &Formula,
    choices: &[(&SubstitutionTemplate, TemplateMode)],
) -> Result<Detachment, IntegralError> {
    let positions = literal_positions(f);
    if positions.len() != choices.len() {
        return Err(IntegralError::PositionCount {
            expected: positions.len(),
            got: choices.len(),
        });
    }
    let template_var = Formula::var(TEMPLATE_VAR);
    let holds = |identity_pole: bool| -> bool {
        let identity_ok = choices.iter().all(|(template, _)| {
            equivalent(&template.reduce_at(identity_pole), &template_var).unwrap_or(false)
        });
        if !identity_ok {
            return false;
        }
        let mut next = 0;
        let collapsed = rebuild(f, choices, None, Some(!identity_pole), &mut next);
        equivalent(&collapsed, &Formula::Const(false)).unwrap_or(false)
    };
    if holds(true) {
        Ok(Detachment::C1)
    } else if holds(false) {
        Ok(Detachment::C2)
    } else {
        Ok(Detachment::None)
    }
}

/// The two-variable detachment check of the substitution theorem: `b` goes
/// to the first position of `f`, `b_prime` to the second. Both attachment
/// modes are tried for negated positions; the first condition found wins.
pub fn check_detachment(
    b: &SubstitutionTemplate,
    b_prime: &SubstitutionTemplate,
    f: &Formula,
) -> Result<Detachment, IntegralError> {
    let positions = literal_positions(f);
    if positions.len() != 2 {
        return Err(IntegralError::PositionCount {
            expected: 2,
            got: positions.len(),
        });
    }
    let modes = |literal: &Formula| -> &'static [TemplateMode] {
        if matches!(literal, Formula::Var(_)) {
            &[TemplateMode::Literal]
        } else {
            &[TemplateMode::Literal, TemplateMode::Variable]
        }
    };
    for m0 in modes(&positions[0]) {
        for m1 in modes(&positions[1]) {
            let found = check_detachment_each(f, &[(b, *m0), (b_prime, *m1)])?;
            if found != Detachment::None {
                return Ok(found);
            }
        }
    }
    Ok(Detachment::None)
}

/// One template-and-mode choice at one position, as reported in results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateChoice {
    pub position: usize,
    pub literal: Formula,
    pub template: String,
    pub mode: TemplateMode,
}

/// A verified particular integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParticularIntegral {
    pub original: Formula,
    pub tau: String,
    pub choices: Vec<TemplateChoice>,
    pub condition: Detachment,
    pub result: Formula,
}

/// The built-in template library. Spans all the worked substitution
/// examples, including the equivalence-based pair.
pub fn default_template_library() -> Vec<SubstitutionTemplate> {
    let v = || Formula::var(TEMPLATE_VAR);
    let t = || Formula::var(TEMPLATE_TAU);
    let build = |name: &str, body: Formula| {
        SubstitutionTemplate::new(name, body).expect("placeholders only")
    };
    alloc::vec![
        build("v & t", Formula::and(v(), t())),
        build("t & v", Formula::and(t(), v())),
        build("v | t", Formula::or(v(), t())),
        build("t -> v", Formula::imp(t(), v())),
        build("v -> t", Formula::imp(v(), t())),
        build("t <-> (t & v)", Formula::equiv(t(), Formula::and(t(), v()))),
        build("t & (t <-> v)", Formula::and(t(), Formula::equiv(t(), v()))),
    ]
}

/// Bounded exhaustive search for particular integrals.
///
/// Per-position assignments of `(template, mode)` are enumerated in a fixed
/// order (positions left to right, library order within a position, literal
/// attachment before variable attachment). Candidates passing the
/// detachment pre-filter are verified with [`verify_integral`]; at most
/// `max_results` verified integrals are returned, examining no more than
/// [`DEFAULT_CANDIDATE_CAP`] candidates.
pub fn particular_integral_search(
    f: &Formula,
    tau: &str,
    library: &[SubstitutionTemplate],
    max_results: usize,
) -> Result<Vec<ParticularIntegral>, IntegralError> {
    particular_integral_search_capped(f, tau, library, max_results, DEFAULT_CANDIDATE_CAP)
}

pub fn particular_integral_search_capped(
    f: &Formula,
    tau: &str,
    library: &[SubstitutionTemplate],
    max_results: usize,
    candidate_cap: usize,
) -> Result<Vec<ParticularIntegral>, IntegralError> {
    if f.variables().contains(tau) {
        return Err(IntegralError::TauNotFresh(tau.to_string()));
    }
    if library.is_empty() {
        return Err(IntegralError::EmptyLibrary);
    }
    let positions = literal_positions(f);
    let option_counts: Vec<usize> = positions
        .iter()
        .map(|literal| {
            if matches!(literal, Formula::Var(_)) {
                library.len()
            } else {
                library.len() * 2
            }
        })
        .collect();

    let mut results = Vec::new();
    let mut digits = alloc::vec![0usize; positions.len()];
    let mut examined = 0usize;
    'search: loop {
        if examined >= candidate_cap || results.len() >= max_results {
            break;
        }
        examined += 1;

        let choices: Vec<(&SubstitutionTemplate, TemplateMode)> = digits
            .iter()
            .zip(positions.iter())
            .map(|(&d, literal)| {
                if matches!(literal, Formula::Var(_)) {
                    (&library[d], TemplateMode::Literal)
                } else {
                    let mode = if d % 2 == 0 {
                        TemplateMode::Literal
                    } else {
                        TemplateMode::Variable
                    };
                    (&library[d / 2], mode)
                }
            })
            .collect();

        let condition = check_detachment_each(f, &choices)?;
        if condition != Detachment::None {
            let result = apply_choices(f, &choices, tau)?;
            if verify_integral(&result, f, tau) {
                results.push(ParticularIntegral {
                    original: f.clone(),
                    tau: tau.to_string(),
                    choices: choices
                        .iter()
                        .enumerate()
                        .map(|(i, (template, mode))| TemplateChoice {
                            position: i,
                            literal: positions[i].clone(),
                            template: template.name().to_string(),
                            mode: *mode,
                        })
                        .collect(),
                    condition,
                    result,
                });
            }
        }

        // odometer increment, rightmost position fastest
        if positions.is_empty() {
            break;
        }
        let mut i = positions.len();
        loop {
            if i == 0 {
                break 'search;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < option_counts[i] {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn general_integral_forms() {
        let f = parse("p | !p").unwrap();
        let y = general_integral(&f, "t", IntegralVersion::V1).unwrap();
        assert_eq!(y, parse("(p | !p) -> t").unwrap());
        assert!(verify_integral(&y, &f, "t"));

        let f = parse("p -> !q").unwrap();
        let y = general_integral(&f, "t", IntegralVersion::V1).unwrap();
        assert_eq!(y, parse("(p -> !q) -> t").unwrap());
        assert!(verify_integral(&y, &f, "t"));
    }

    #[test]
    fn every_version_is_an_integral() {
        let f = parse("(p ^ q) -> q").unwrap();
        for version in IntegralVersion::ALL {
            let y = general_integral(&f, "t", version).unwrap();
            assert!(verify_integral(&y, &f, "t"), "failed for {version}");
        }
        let v3 = general_integral(&f, "t", IntegralVersion::V3).unwrap();
        assert_eq!(v3, parse("((p ^ q) -> q) & t").unwrap());
    }

    #[test]
    fn tau_clash_is_rejected() {
        let f = parse("p & q").unwrap();
        assert_eq!(
            general_integral(&f, "q", IntegralVersion::V1),
            Err(IntegralError::TauNotFresh("q".to_string()))
        );
    }

    #[test]
    fn verify_rejects_non_integrals() {
        let candidate = parse("p & t").unwrap();
        assert!(!verify_integral(&candidate, &parse("p | q").unwrap(), "t"));
    }

    #[test]
    fn worked_particular_integral_verifies() {
        // (t & p) | (t & !p) integrates p | !p
        let candidate = parse("(t & p) | (t & !p)").unwrap();
        assert!(verify_integral(&candidate, &parse("p | !p").unwrap(), "t"));
        // but distributing the negation over the whole template does not
        let wrong = parse("(t & p) | !(t & p)").unwrap();
        assert!(!verify_integral(&wrong, &parse("p | !p").unwrap(), "t"));
    }

    #[test]
    fn literal_positions_group_negations() {
        let f = parse("(p | !p) -> !(q & r)").unwrap();
        let positions = literal_positions(&f);
        assert_eq!(
            positions,
            [
                parse("p").unwrap(),
                parse("!p").unwrap(),
                parse("q").unwrap(),
                parse("r").unwrap(),
            ]
        );
    }

    #[test]
    fn detachment_pair_examples() {
        let lib = default_template_library();
        let t_and_v = &lib[1];
        let v_or_t = &lib[2];

        // t & v on p | !p satisfies c1 via literal attachment
        let em = parse("p | !p").unwrap();
        assert_eq!(check_detachment(t_and_v, t_and_v, &em), Ok(Detachment::C1));

        // v | t on p -> !q satisfies c2 via variable attachment
        let f = parse("p -> !q").unwrap();
        assert_eq!(check_detachment(v_or_t, v_or_t, &f), Ok(Detachment::C2));

        // the identity template detaches nothing
        let id = SubstitutionTemplate::new("v", Formula::var(TEMPLATE_VAR)).unwrap();
        assert_eq!(check_detachment(&id, &id, &em), Ok(Detachment::None));
    }

    #[test]
    fn template_variable_validation() {
        let err = SubstitutionTemplate::new("bad", parse("v & q").unwrap()).unwrap_err();
        assert_eq!(
            err,
            IntegralError::TemplateVariables {
                template: "bad".to_string(),
                variable: "q".to_string()
            }
        );
    }

    #[test]
    fn search_recovers_worked_integrals() {
        let lib = default_template_library();

        let em = parse("p | !p").unwrap();
        let found = particular_integral_search(&em, "t", &lib, 50).unwrap();
        let wanted = parse("(t & p) | (t & !p)").unwrap();
        assert!(found.iter().any(|pi| pi.result == wanted));
        for pi in &found {
            assert!(verify_integral(&pi.result, &em, "t"));
        }

        let f = parse("p -> !q").unwrap();
        let found = particular_integral_search(&f, "t", &lib, 80).unwrap();
        let wanted = parse("(p | t) -> !(q | t)").unwrap();
        assert!(found.iter().any(|pi| pi.result == wanted));

        let f = parse("p -> q").unwrap();
        let found = particular_integral_search(&f, "t", &lib, 200).unwrap();
        let wanted = parse("(t -> p) -> (t & q)").unwrap();
        let wanted_alt = parse("(t <-> (t & p)) -> (t & (t <-> q))").unwrap();
        assert!(found.iter().any(|pi| pi.result == wanted));
        assert!(found.iter().any(|pi| pi.result == wanted_alt));
    }

    #[test]
    fn search_is_deterministic() {
        let lib = default_template_library();
        let f = parse("p -> q").unwrap();
        let a = particular_integral_search(&f, "t", &lib, 10).unwrap();
        let b = particular_integral_search(&f, "t", &lib, 10).unwrap();
        assert_eq!(a, b);
    }
}
