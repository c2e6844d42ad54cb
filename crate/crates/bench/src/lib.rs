//! Seeded workloads shared by the benchmarks.

use kqbf::generate::{random_dnf, random_forall_exists, rng_from_seed, DnfSpec, ForallExistsSpec};
use kqbf::{DnfFormula, QbfInstance};

/// `count` ∀∃ instances with `universal` + `existential` variables and
/// `clauses` clauses of arity `d`, each touching an existential variable.
pub fn forall_exists_corpus(
    count: u64,
    universal: usize,
    existential: usize,
    clauses: usize,
    d: usize,
) -> Vec<QbfInstance> {
    let spec = ForallExistsSpec {
        universal,
        existential,
        clauses,
        arity: d,
        distinct: false,
        require_existential: true,
    };
    (0..count)
        .map(|seed| random_forall_exists(&spec, &mut rng_from_seed(seed)).expect("valid spec"))
        .collect()
}

pub fn dnf_corpus(count: u64, vars: usize, terms: usize) -> Vec<DnfFormula> {
    let spec = DnfSpec {
        vars,
        terms,
        width: 3.min(vars),
        distinct: false,
    };
    (0..count)
        .map(|seed| random_dnf(&spec, &mut rng_from_seed(seed)).expect("valid spec"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_have_requested_shape() {
        let qs = forall_exists_corpus(3, 4, 3, 10, 3);
        assert_eq!(qs.len(), 3);
        assert!(qs
            .iter()
            .all(|q| q.matrix().len() == 10 && q.matrix().max_arity() == 3));
        let ds = dnf_corpus(2, 5, 7);
        assert!(ds.iter().all(|d| d.len() == 7 && d.num_vars() == 5));
    }
}
