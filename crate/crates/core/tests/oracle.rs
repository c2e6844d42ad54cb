mod common;

use kqbf::oracle::{eval_qbf, OracleConfig};
use kqbf::{Assignment, OracleError, QbfInstance, Quantifier, QuantifierBlock, Var};
use proptest::prelude::*;

fn value(q: &QbfInstance) -> bool {
    eval_qbf(q, &Assignment::new(), &OracleConfig::default()).unwrap()
}

fn requantify(q: &QbfInstance, f: impl Fn(usize, Quantifier) -> Quantifier) -> QbfInstance {
    let prefix = q
        .prefix()
        .iter()
        .enumerate()
        .map(|(i, b)| QuantifierBlock::new(f(i, b.quantifier), b.vars.clone()))
        .collect();
    QbfInstance::new(prefix, q.matrix().clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn all_existential_is_satisfiability(q in common::prenex_strategy(12, 30)) {
        let sat = requantify(&q, |_, _| Quantifier::Exists);
        let vars: Vec<Var> = (1..=q.num_vars()).map(Var::new).collect();
        let expected = (0..1u64 << vars.len())
            .any(|bits| q.matrix().is_satisfied_by(&Assignment::from_bits(&vars, bits)));
        prop_assert_eq!(value(&sat), expected);
    }

    #[test]
    fn all_universal_is_validity(q in common::prenex_strategy(10, 12)) {
        let taut = requantify(&q, |_, _| Quantifier::Forall);
        let vars: Vec<Var> = (1..=q.num_vars()).map(Var::new).collect();
        let expected = (0..1u64 << vars.len())
            .all(|bits| q.matrix().is_satisfied_by(&Assignment::from_bits(&vars, bits)));
        prop_assert_eq!(value(&taut), expected);
    }

    // Handing a block to the existential player can only help it.
    #[test]
    fn weakening_a_universal_block_is_monotone(q in common::prenex_strategy(10, 20), pick in any::<usize>()) {
        let blocks = q.prefix().len();
        prop_assume!(blocks > 0);
        let target = pick % blocks;
        let weaker = requantify(&q, |i, quant| if i == target { Quantifier::Exists } else { quant });
        let stronger = requantify(&q, |i, quant| if i == target { Quantifier::Forall } else { quant });
        prop_assert!(value(&stronger) <= value(&q));
        prop_assert!(value(&q) <= value(&weaker));
    }

    // Fixing the outermost block and evaluating the rest agrees with the
    // outermost quantifier over all fixings.
    #[test]
    fn partial_assignment_of_outer_block(q in common::prenex_strategy(8, 16)) {
        let outer = &q.prefix()[0];
        prop_assume!(outer.vars.len() <= 6);
        let results: Vec<bool> = (0..1u64 << outer.vars.len())
            .map(|bits| eval_qbf(&q, &Assignment::from_bits(&outer.vars, bits), &OracleConfig::default()).unwrap())
            .collect();
        let expected = match outer.quantifier {
            Quantifier::Forall => results.iter().all(|&b| b),
            Quantifier::Exists => results.iter().any(|&b| b),
        };
        prop_assert_eq!(value(&q), expected);
    }
}

#[test]
fn bound_is_enforced() {
    let q = common::forall_exists(0, 13, 12, 10, 3);
    assert_eq!(
        eval_qbf(&q, &Assignment::new(), &OracleConfig::default()),
        Err(OracleError::TooManyVariables {
            vars: 25,
            bound: 24
        })
    );
}
