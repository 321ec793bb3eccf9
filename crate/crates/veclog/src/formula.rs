//! Propositional formulas: syntax tree, printing, and substitution.
//!
//! Concrete syntax (high → low precedence):
//!
//! ```text
//!   !f            negation
//!   f & g, f !& g conjunction, Sheffer stroke
//!   f | g, f !| g disjunction, Peirce arrow
//!   f ^ g         exclusive-or
//!   f -> g        implication (right-associative)
//!   f <-> g       equivalence
//! ```
//!
//! Constants are `1`/`true` and `0`/`false`; variables match
//! `[a-z][a-z0-9_]*`. Binary operators at the same level associate to the
//! left except `->`.

use crate::gates::Gate;
use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Binary connectives. NAND and NOR are first-class nodes because the
/// calculus treats the Sheffer and Peirce gates as operators in their own
/// right, with their own derivative-table rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Impl,
    Equiv,
    Xor,
    Nand,
    Nor,
}

impl BinOp {
    pub const ALL: [BinOp; 7] = [
        BinOp::And,
        BinOp::Or,
        BinOp::Impl,
        BinOp::Equiv,
        BinOp::Xor,
        BinOp::Nand,
        BinOp::Nor,
    ];

    /// The gate matrix realizing this connective.
    pub fn gate(self) -> Gate {
        match self {
            BinOp::And => Gate::C,
            BinOp::Or => Gate::D,
            BinOp::Impl => Gate::L,
            BinOp::Equiv => Gate::E,
            BinOp::Xor => Gate::X,
            BinOp::Nand => Gate::S,
            BinOp::Nor => Gate::P,
        }
    }

    pub fn infix_symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Impl => "->",
            BinOp::Equiv => "<->",
            BinOp::Xor => "^",
            BinOp::Nand => "!&",
            BinOp::Nor => "!|",
        }
    }

    /// Binding strength; negation binds tighter than every binary operator.
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::And | BinOp::Nand => 4,
            BinOp::Or | BinOp::Nor => 3,
            BinOp::Xor => 2,
            BinOp::Impl => 1,
            BinOp::Equiv => 0,
        }
    }

    pub fn is_right_assoc(self) -> bool {
        matches!(self, BinOp::Impl)
    }

    /// Classical two-valued semantics of the connective.
    pub fn eval(self, a: bool, b: bool) -> bool {
        match self {
            BinOp::And => a && b,
            BinOp::Or => a || b,
            BinOp::Impl => !a || b,
            BinOp::Equiv => a == b,
            BinOp::Xor => a != b,
            BinOp::Nand => !(a && b),
            BinOp::Nor => !(a || b),
        }
    }
}

/// A well-formed propositional formula over named variables and constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Var(String),
    Not(Box<Formula>),
    Binary(BinOp, Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Variable reference. Panics on names outside `[a-z][a-z0-9_]*`;
    /// parsed text can never trip this.
    pub fn var(name: &str) -> Formula {
        assert!(
            is_valid_identifier(name),
            "invalid variable name: {name:?}"
        );
        Formula::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn binary(op: BinOp, l: Formula, r: Formula) -> Formula {
        Formula::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::binary(BinOp::And, l, r)
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::binary(BinOp::Or, l, r)
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::binary(BinOp::Impl, l, r)
    }

    pub fn equiv(l: Formula, r: Formula) -> Formula {
        Formula::binary(BinOp::Equiv, l, r)
    }

    pub fn xor(l: Formula, r: Formula) -> Formula {
        Formula::binary(BinOp::Xor, l, r)
    }

    pub fn nand(l: Formula, r: Formula) -> Formula {
        Formula::binary(BinOp::Nand, l, r)
    }

    pub fn nor(l: Formula, r: Formula) -> Formula {
        Formula::binary(BinOp::Nor, l, r)
    }

    /// Replace every occurrence of `var` by a copy of `replacement`.
    /// There are no binders, so no capture is possible.
    pub fn substitute(&self, var: &str, replacement: &Formula) -> Formula {
        match self {
            Formula::Const(_) => self.clone(),
            Formula::Var(name) => {
                if name == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            Formula::Not(inner) => Formula::not(inner.substitute(var, replacement)),
            Formula::Binary(op, l, r) => Formula::binary(
                *op,
                l.substitute(var, replacement),
                r.substitute(var, replacement),
            ),
        }
    }

    /// Distinct variables in first-occurrence order.
    pub fn variables(&self) -> VariableSet {
        let mut set = VariableSet::default();
        self.collect_variables(&mut set);
        set
    }

    fn collect_variables(&self, set: &mut VariableSet) {
        match self {
            Formula::Const(_) => {}
            Formula::Var(name) => set.insert(name),
            Formula::Not(inner) => inner.collect_variables(set),
            Formula::Binary(_, l, r) => {
                l.collect_variables(set);
                r.collect_variables(set);
            }
        }
    }

    /// Infix rendering with minimal parentheses; `parse` of the result is
    /// structurally equal to `self`.
    pub fn render_infix(&self) -> String {
        self.to_string()
    }

    /// Prefix (Polish) rendering, one operator letter per gate:
    /// `N` for negation, then `C D L E X S P` per connective.
    pub fn render_polish(&self) -> String {
        let mut out = String::new();
        self.polish_into(&mut out);
        out
    }

    fn polish_into(&self, out: &mut String) {
        if !out.is_empty() {
            out.push(' ');
        }
        match self {
            Formula::Const(b) => out.push(if *b { '1' } else { '0' }),
            Formula::Var(name) => out.push_str(name),
            Formula::Not(inner) => {
                out.push(Gate::N.symbol());
                inner.polish_into(out);
            }
            Formula::Binary(op, l, r) => {
                out.push(op.gate().symbol());
                l.polish_into(out);
                r.polish_into(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Const(_) | Formula::Var(_) => 6,
            Formula::Not(_) => 5,
            Formula::Binary(op, _, _) => op.precedence(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Const(b) => f.write_str(if *b { "1" } else { "0" }),
            Formula::Var(name) => f.write_str(name),
            Formula::Not(inner) => {
                f.write_str("!")?;
                if inner.precedence() >= 5 {
                    write!(f, "{inner}")
                } else {
                    write!(f, "({inner})")
                }
            }
            Formula::Binary(op, l, r) => {
                let p = op.precedence();
                // A same-precedence child keeps its place without parens only
                // on the side matching the operator's associativity.
                let (lmin, rmin) = if op.is_right_assoc() {
                    (p + 1, p)
                } else {
                    (p, p + 1)
                };
                if l.precedence() >= lmin {
                    write!(f, "{l}")?;
                } else {
                    write!(f, "({l})")?;
                }
                write!(f, " {} ", op.infix_symbol())?;
                if r.precedence() >= rmin {
                    write!(f, "{r}")
                } else {
                    write!(f, "({r})")
                }
            }
        }
    }
}

/// True for names matching `[a-z][a-z0-9_]*`.
pub fn is_valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// Ordered, duplicate-free list of variable names (first-occurrence order).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    fn insert(&mut self, name: &str) {
        if !self.contains(name) {
            self.names.push(name.to_string());
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, String> {
        self.names.iter()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn into_vec(self) -> Vec<String> {
        self.names
    }
}

impl<'a> IntoIterator for &'a VariableSet {
    type Item = &'a String;
    type IntoIter = core::slice::Iter<'a, String>;

    fn into_iter(self) -> Self::IntoIter {
        self.names.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn variables_in_first_occurrence_order() {
        let f = parse("(p | q) -> (!q & p)").unwrap();
        assert_eq!(f.variables().names(), ["p", "q"]);
        assert!(Formula::Const(true).variables().is_empty());
    }

    #[test]
    fn substitute_replaces_every_occurrence() {
        let f = parse("p & q").unwrap();
        let g = f.substitute("p", &Formula::Const(true));
        assert_eq!(g, Formula::and(Formula::Const(true), Formula::var("q")));

        let em = parse("p | !p").unwrap();
        let template = parse("t & p").unwrap();
        let sub = em.substitute("p", &template);
        assert_eq!(sub, parse("(t & p) | !(t & p)").unwrap());
    }

    #[test]
    fn substitute_absent_variable_is_identity() {
        let f = parse("q").unwrap();
        assert_eq!(f.substitute("p", &Formula::var("r")), f);
    }

    #[test]
    fn infix_rendering_keeps_structure() {
        assert_eq!(parse("p -> q").unwrap().render_infix(), "p -> q");
        assert_eq!(parse("!(p & q)").unwrap().render_infix(), "!(p & q)");
        // Right-associative implication needs parens only on the left.
        assert_eq!(
            Formula::imp(Formula::imp(Formula::var("p"), Formula::var("q")), Formula::var("r"))
                .render_infix(),
            "(p -> q) -> r"
        );
        assert_eq!(
            Formula::imp(Formula::var("p"), Formula::imp(Formula::var("q"), Formula::var("r")))
                .render_infix(),
            "p -> q -> r"
        );
    }

    #[test]
    fn polish_rendering_uses_gate_letters() {
        assert_eq!(parse("p -> q").unwrap().render_polish(), "L p q");
        assert_eq!(parse("!(p & q)").unwrap().render_polish(), "N C p q");
        assert_eq!(parse("p !| 0").unwrap().render_polish(), "P p 0");
    }

    #[test]
    fn identifier_grammar() {
        assert!(is_valid_identifier("p"));
        assert!(is_valid_identifier("q0_x"));
        assert!(!is_valid_identifier("P"));
        assert!(!is_valid_identifier("0p"));
        assert!(!is_valid_identifier(""));
    }
}
