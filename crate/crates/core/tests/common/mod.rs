#![allow(dead_code)]

use kqbf::generate::{random_forall_exists, rng_from_seed, ForallExistsSpec};
use kqbf::{Clause, CnfMatrix, Lit, QbfInstance, Quantifier, QuantifierBlock, Var};
use proptest::prelude::*;
use rand::Rng;

/// Random prenex instance over `1..=vars` with alternating blocks.
pub fn random_prenex(seed: u64, max_vars: u32, max_clauses: usize) -> QbfInstance {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(1..=max_vars);
    let mut order: Vec<Var> = (1..=n).map(Var::new).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let mut quantifier = if rng.random_bool(0.5) {
        Quantifier::Forall
    } else {
        Quantifier::Exists
    };
    let mut blocks = Vec::new();
    let mut rest = order.as_slice();
    while !rest.is_empty() {
        let take = rng.random_range(1..=rest.len());
        blocks.push(QuantifierBlock::new(quantifier, rest[..take].to_vec()));
        rest = &rest[take..];
        quantifier = quantifier.flip();
    }
    let m = rng.random_range(0..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let width = rng.random_range(1..=n.min(4));
            Clause::new(
                (0..width)
                    .map(|_| Lit::new(Var::new(rng.random_range(1..=n)), rng.random_bool(0.5))),
            )
        })
        .collect();
    QbfInstance::new(blocks, CnfMatrix::new(n, clauses).unwrap()).unwrap()
}

pub fn prenex_strategy(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = QbfInstance> {
    any::<u64>().prop_map(move |seed| random_prenex(seed, max_vars, max_clauses))
}

pub fn forall_exists(
    seed: u64,
    universal: usize,
    existential: usize,
    clauses: usize,
    arity: usize,
) -> QbfInstance {
    let spec = ForallExistsSpec {
        universal,
        existential,
        clauses,
        arity,
        distinct: false,
        require_existential: false,
    };
    random_forall_exists(&spec, &mut rng_from_seed(seed)).unwrap()
}

/// ∀∃ instances with up to `max_u` universal and `2..=max_e` existential
/// variables.
pub fn forall_exists_strategy(
    max_u: usize,
    max_e: usize,
    d: usize,
) -> impl Strategy<Value = QbfInstance> {
    (0..=max_u, 2..=max_e, 1usize..=24, any::<u64>())
        .prop_map(move |(u, e, m, seed)| forall_exists(seed, u, e, m, d.min(u + e)))
}
