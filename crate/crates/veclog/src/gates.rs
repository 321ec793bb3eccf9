//! The eleven named gate matrices and the operator-level identities.
//!
//! Each gate is assembled from its outer-product formula over the canonical
//! basis (e.g. `N = n sᵀ + s nᵀ`), not from a hard-coded entry table, so the
//! construction itself is exercised by the tests that compare gates against
//! their truth tables.

use crate::matrix::{outer, Mat};
use crate::vector::{n_vec, s_vec, Arity, LogicMatrix};
use crate::EXACT_TOL;
use alloc::string::String;
use core::fmt;

/// Names of the gate matrices: `I, N, K, M` monadic; `C, D, L, S, P, E, X` dyadic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    /// Identity.
    I,
    /// Negation.
    N,
    /// Constant `s`.
    K,
    /// Constant `n`.
    M,
    /// Conjunction (AND).
    C,
    /// Disjunction (OR).
    D,
    /// Material implication.
    L,
    /// Sheffer stroke (NAND).
    S,
    /// Peirce arrow (NOR).
    P,
    /// Equivalence.
    E,
    /// Exclusive-or.
    X,
}

impl Gate {
    pub const ALL: [Gate; 11] = [
        Gate::I,
        Gate::N,
        Gate::K,
        Gate::M,
        Gate::C,
        Gate::D,
        Gate::L,
        Gate::S,
        Gate::P,
        Gate::E,
        Gate::X,
    ];

    pub const MONADIC: [Gate; 4] = [Gate::I, Gate::N, Gate::K, Gate::M];

    pub const DYADIC: [Gate; 7] = [
        Gate::C,
        Gate::D,
        Gate::L,
        Gate::S,
        Gate::P,
        Gate::E,
        Gate::X,
    ];

    pub fn arity(self) -> Arity {
        match self {
            Gate::I | Gate::N | Gate::K | Gate::M => Arity::Monadic,
            _ => Arity::Dyadic,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Gate::I => 'I',
            Gate::N => 'N',
            Gate::K => 'K',
            Gate::M => 'M',
            Gate::C => 'C',
            Gate::D => 'D',
            Gate::L => 'L',
            Gate::S => 'S',
            Gate::P => 'P',
            Gate::E => 'E',
            Gate::X => 'X',
        }
    }

    pub fn from_symbol(c: char) -> Option<Gate> {
        Gate::ALL.into_iter().find(|g| g.symbol() == c)
    }

    /// The matrix realization of this gate.
    pub fn matrix(self) -> LogicMatrix {
        build_gate(self)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Construct a gate matrix from its outer-product formula.
pub fn build_gate(gate: Gate) -> LogicMatrix {
    let s = s_vec();
    let n = n_vec();
    // Outputs listed for inputs s, n (monadic) or s⊗s, s⊗n, n⊗s, n⊗n (dyadic).
    let monadic = |on_s: &Mat, on_n: &Mat| {
        let m = &outer(on_s, &s) + &outer(on_n, &n);
        LogicMatrix::monadic(m).expect("gate formula is Pi-closed")
    };
    let dyadic = |outs: [&Mat; 4]| {
        let ss = s.kron(&s);
        let sn = s.kron(&n);
        let ns = n.kron(&s);
        let nn = n.kron(&n);
        let m = &(&(&outer(outs[0], &ss) + &outer(outs[1], &sn)) + &outer(outs[2], &ns))
            + &outer(outs[3], &nn);
        LogicMatrix::dyadic(m).expect("gate formula is Pi-closed")
    };
    match gate {
        Gate::I => monadic(&s, &n),
        Gate::N => monadic(&n, &s),
        Gate::K => monadic(&s, &s),
        Gate::M => monadic(&n, &n),
        Gate::C => dyadic([&s, &n, &n, &n]),
        Gate::D => dyadic([&s, &s, &s, &n]),
        Gate::L => dyadic([&s, &n, &s, &s]),
        Gate::S => dyadic([&n, &s, &s, &s]),
        Gate::P => dyadic([&n, &n, &n, &s]),
        Gate::E => dyadic([&s, &n, &n, &s]),
        Gate::X => dyadic([&n, &s, &s, &n]),
    }
}

/// The registered operator identities, checked as equalities between
/// materialized matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateIdentity {
    /// `C = ND(N ⊗ N)` — De Morgan at the operator level.
    ConjunctionDeMorgan,
    /// `L = D(N ⊗ I)` — implication from disjunction.
    ImplicationFromDisjunction,
    /// `S = NC`.
    ShefferFromConjunction,
    /// `P = ND`.
    PeirceFromDisjunction,
    /// `X = NE`.
    XorFromEquivalence,
    /// `N² = I`.
    NegationInvolution,
    /// `X = X(N ⊗ N)` — exclusive-or absorbs a negation pair.
    XorNegationPair,
    /// `L(I ⊗ L) = L(C ⊗ I)` — exportation.
    Exportation,
    /// `NL(I ⊗ D) = C(I ⊗ ND)`.
    NegatedImplicationAsConjunction,
}

impl GateIdentity {
    pub const ALL: [GateIdentity; 9] = [
        GateIdentity::ConjunctionDeMorgan,
        GateIdentity::ImplicationFromDisjunction,
        GateIdentity::ShefferFromConjunction,
        GateIdentity::PeirceFromDisjunction,
        GateIdentity::XorFromEquivalence,
        GateIdentity::NegationInvolution,
        GateIdentity::XorNegationPair,
        GateIdentity::Exportation,
        GateIdentity::NegatedImplicationAsConjunction,
    ];

    /// The identity in the paper's operator notation.
    pub fn notation(self) -> &'static str {
        match self {
            GateIdentity::ConjunctionDeMorgan => "C = ND(N ⊗ N)",
            GateIdentity::ImplicationFromDisjunction => "L = D(N ⊗ I)",
            GateIdentity::ShefferFromConjunction => "S = NC",
            GateIdentity::PeirceFromDisjunction => "P = ND",
            GateIdentity::XorFromEquivalence => "X = NE",
            GateIdentity::NegationInvolution => "N² = I",
            GateIdentity::XorNegationPair => "X = X(N ⊗ N)",
            GateIdentity::Exportation => "L(I ⊗ L) = L(C ⊗ I)",
            GateIdentity::NegatedImplicationAsConjunction => "NL(I ⊗ D) = C(I ⊗ ND)",
        }
    }

    /// Look an identity up by its notation. Whitespace is ignored and `x`
    /// is accepted for `⊗`, so `C=ND(NxN)` matches `C = ND(N ⊗ N)`.
    pub fn from_name(name: &str) -> Result<GateIdentity, UnknownIdentity> {
        let wanted = normalize(name);
        GateIdentity::ALL
            .into_iter()
            .find(|id| normalize(id.notation()) == wanted)
            .ok_or_else(|| UnknownIdentity(String::from(name)))
    }

    /// Materialize both sides of the identity.
    pub fn sides(self) -> (Mat, Mat) {
        let i = build_gate(Gate::I).entries().clone();
        let n = build_gate(Gate::N).entries().clone();
        let c = build_gate(Gate::C).entries().clone();
        let d = build_gate(Gate::D).entries().clone();
        let l = build_gate(Gate::L).entries().clone();
        let s = build_gate(Gate::S).entries().clone();
        let p = build_gate(Gate::P).entries().clone();
        let e = build_gate(Gate::E).entries().clone();
        let x = build_gate(Gate::X).entries().clone();
        match self {
            GateIdentity::ConjunctionDeMorgan => (c, &n * &(&d * &n.kron(&n))),
            GateIdentity::ImplicationFromDisjunction => (l, &d * &n.kron(&i)),
            GateIdentity::ShefferFromConjunction => (s, &n * &c),
            GateIdentity::PeirceFromDisjunction => (p, &n * &d),
            GateIdentity::XorFromEquivalence => (x, &n * &e),
            GateIdentity::NegationInvolution => (&n * &n, i),
            GateIdentity::XorNegationPair => (x.clone(), &x * &n.kron(&n)),
            GateIdentity::Exportation => (&l * &i.kron(&l), &l * &c.kron(&i)),
            GateIdentity::NegatedImplicationAsConjunction => {
                (&(&n * &l) * &i.kron(&d), &c * &i.kron(&(&n * &d)))
            }
        }
    }
}

impl fmt::Display for GateIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.notation())
    }
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == 'x' { '⊗' } else { c })
        .collect()
}

/// Error for [`GateIdentity::from_name`] on an unregistered identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownIdentity(pub String);

impl fmt::Display for UnknownIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown operator identity: {}", self.0)
    }
}

impl core::error::Error for UnknownIdentity {}

/// True iff both sides of the identity agree entrywise within `1e-12`.
pub fn check_identity(id: GateIdentity) -> bool {
    let (lhs, rhs) = id.sides();
    lhs.approx_eq(&rhs, EXACT_TOL)
}

/// Name-based variant of [`check_identity`]; errors on an unknown name.
pub fn check_identity_named(name: &str) -> Result<bool, UnknownIdentity> {
    GateIdentity::from_name(name).map(check_identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::TruthVector;

    fn tv(b: bool) -> TruthVector {
        TruthVector::from_bool(b)
    }

    #[test]
    fn negation_swaps_basis_vectors() {
        let n = build_gate(Gate::N);
        assert_eq!(n.apply1(tv(true)).unwrap(), tv(false));
        assert_eq!(n.apply1(tv(false)).unwrap(), tv(true));
    }

    #[test]
    fn constants_ignore_their_input() {
        let k = build_gate(Gate::K);
        let m = build_gate(Gate::M);
        for b in [true, false] {
            assert_eq!(k.apply1(tv(b)).unwrap(), tv(true));
            assert_eq!(m.apply1(tv(b)).unwrap(), tv(false));
        }
    }

    #[test]
    fn conjunction_truth_table() {
        let c = build_gate(Gate::C);
        assert_eq!(c.apply2(tv(true), tv(true)).unwrap(), tv(true));
        assert_eq!(c.apply2(tv(true), tv(false)).unwrap(), tv(false));
        assert_eq!(c.apply2(tv(false), tv(true)).unwrap(), tv(false));
        assert_eq!(c.apply2(tv(false), tv(false)).unwrap(), tv(false));
    }

    #[test]
    fn implication_truth_table() {
        let l = build_gate(Gate::L);
        assert_eq!(l.apply2(tv(true), tv(false)).unwrap(), tv(false));
        for (a, b) in [(true, true), (false, true), (false, false)] {
            assert_eq!(l.apply2(tv(a), tv(b)).unwrap(), tv(true));
        }
    }

    #[test]
    fn all_registered_identities_hold() {
        for id in GateIdentity::ALL {
            assert!(check_identity(id), "identity failed: {}", id.notation());
        }
    }

    #[test]
    fn identity_lookup_by_name() {
        assert_eq!(check_identity_named("C = ND(N ⊗ N)"), Ok(true));
        assert_eq!(check_identity_named("X=NE"), Ok(true));
        assert_eq!(check_identity_named("NL(IxD)=C(IxND)"), Ok(true));
        assert!(check_identity_named("C = D").is_err());
    }

    #[test]
    fn negation_factors_through_kron() {
        // N applied to each factor of s⊗s flips both: (N⊗N)(s⊗s) = n⊗n.
        let n = build_gate(Gate::N).entries().clone();
        let s = crate::vector::s_vec();
        let nn = crate::vector::n_vec();
        let lhs = n.kron(&n).matmul(&s.kron(&s));
        assert!(lhs.approx_eq(&nn.kron(&nn), 1e-12));
    }

    #[test]
    fn identity_and_conjunction_application_examples() {
        let i = build_gate(Gate::I);
        let c = build_gate(Gate::C);
        for w in [0.0, 0.3, 1.0] {
            let u = TruthVector::new(w).unwrap();
            assert!(i.apply1(u).unwrap().approx_eq(u, 1e-12));
        }
        let half = TruthVector::new(0.5).unwrap();
        let out = c.apply2(half, half).unwrap();
        assert!((out.weight() - 0.25).abs() <= 1e-12);
    }

    #[test]
    fn xor_with_true_negates() {
        // X(u ⊗ s) = Nu, so the weight-1/2 vector is its own image.
        let x = build_gate(Gate::X);
        let half = TruthVector::new(0.5).unwrap();
        let out = x.apply2(half, TruthVector::TRUE).unwrap();
        assert!(crate::vector::vec_eq(out, half, 1e-12));
    }

    #[test]
    fn de_morgan_holds_per_operation_on_grid() {
        // C(u⊗v) = ND(Nu⊗Nv) pointwise, not just as operators.
        let c = build_gate(Gate::C);
        let d = build_gate(Gate::D);
        let n = build_gate(Gate::N);
        for i in 0..=10 {
            for j in 0..=10 {
                let u = TruthVector::new(i as f64 / 10.0).unwrap();
                let v = TruthVector::new(j as f64 / 10.0).unwrap();
                let lhs = c.apply2(u, v).unwrap();
                let rhs = n
                    .apply1(d.apply2(n.apply1(u).unwrap(), n.apply1(v).unwrap()).unwrap())
                    .unwrap();
                assert!(lhs.approx_eq(rhs, 1e-12));
            }
        }
    }

    #[test]
    fn probabilistic_closure_on_grid() {
        // Lemma 2.1 on a 0.1-step grid for every dyadic gate.
        for gate in Gate::DYADIC {
            let m = build_gate(gate);
            for i in 0..=10 {
                for j in 0..=10 {
                    let u = TruthVector::new(i as f64 / 10.0).unwrap();
                    let v = TruthVector::new(j as f64 / 10.0).unwrap();
                    let out = m.apply2(u, v).unwrap();
                    assert!((0.0..=1.0).contains(&out.weight()));
                }
            }
        }
    }
}
