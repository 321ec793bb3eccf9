//! Property tests for the structural invariants: parse/render round-trips,
//! substitution laws, Π-closure, and agreement of the two evaluators.

mod common;

use proptest::prelude::*;
use veclog::derivative::{constant_fold, diff};
use veclog::eval::{equivalent, eval_binary, eval_vector, Assignment};
use veclog::formula::{BinOp, Formula};
use veclog::parser::parse;

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        3 => (0usize..4).prop_map(|i| Formula::var(["p", "q", "r", "w"][i])),
        1 => any::<bool>().prop_map(Formula::Const),
    ];
    leaf.prop_recursive(8, 96, 2, |inner| {
        prop_oneof![
            1 => inner.clone().prop_map(Formula::not),
            3 => (0usize..7, inner.clone(), inner)
                .prop_map(|(k, l, r)| Formula::binary(BinOp::ALL[k], l, r)),
        ]
    })
}

fn weights_strategy() -> impl Strategy<Value = [f64; 4]> {
    [0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0]
}

fn full_assignment(weights: &[f64; 4]) -> Assignment {
    common::assignment(&[
        ("p", weights[0]),
        ("q", weights[1]),
        ("r", weights[2]),
        ("w", weights[3]),
    ])
}

proptest! {
    #[test]
    fn infix_round_trip(f in formula_strategy()) {
        let rendered = f.render_infix();
        let reparsed = parse(&rendered).expect("rendered formula parses");
        prop_assert_eq!(reparsed, f);
    }

    #[test]
    fn substituting_a_variable_for_itself_is_identity(f in formula_strategy()) {
        prop_assert_eq!(f.substitute("p", &Formula::var("p")), f);
    }

    #[test]
    fn substitution_variable_bound(f in formula_strategy(), g in formula_strategy()) {
        let out = f.substitute("q", &g);
        for name in out.variables().iter() {
            let in_f_minus_q = name != "q" && f.variables().contains(name);
            prop_assert!(in_f_minus_q || g.variables().contains(name));
        }
    }

    #[test]
    fn vector_evaluation_stays_in_pi(f in formula_strategy(), ws in weights_strategy()) {
        let a = full_assignment(&ws);
        let v = eval_vector(&f, &a).unwrap();
        prop_assert!((0.0..=1.0).contains(&v.weight()));
    }

    #[test]
    fn binary_points_agree_with_classical_semantics(f in formula_strategy(), bits in any::<[bool; 4]>()) {
        let mut a = Assignment::new();
        for (name, bit) in ["p", "q", "r", "w"].iter().zip(bits.iter()) {
            a.set_bool(name, *bit);
        }
        let classical = eval_binary(&f, &a).unwrap();
        let vector = eval_vector(&f, &a).unwrap();
        prop_assert_eq!(vector.weight(), if classical { 1.0 } else { 0.0 });
    }

    #[test]
    fn constant_folding_preserves_equivalence(f in formula_strategy()) {
        prop_assert!(equivalent(&constant_fold(&f), &f).unwrap());
    }

    #[test]
    fn derivative_eliminates_the_variable(f in formula_strategy()) {
        let d = diff(&f, "p");
        prop_assert!(!d.formula.variables().contains("p"));
        prop_assert!(!d.folded().variables().contains("p"));
    }

    #[test]
    fn polish_rendering_is_one_token_per_node(f in formula_strategy()) {
        fn nodes(f: &Formula) -> usize {
            match f {
                Formula::Const(_) | Formula::Var(_) => 1,
                Formula::Not(inner) => 1 + nodes(inner),
                Formula::Binary(_, l, r) => 1 + nodes(l) + nodes(r),
            }
        }
        prop_assert_eq!(f.render_polish().split(' ').count(), nodes(&f));
    }
}
