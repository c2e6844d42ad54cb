mod common;

use kqbf::oracle::{eval_qbf, OracleConfig};
use kqbf::solver::{depth_bound, required_family_size, solve, threshold, Resolution, SolverConfig};
use kqbf::{Assignment, Clause, CnfMatrix, QbfInstance, Var};
use proptest::prelude::*;

fn oracle(q: &QbfInstance) -> bool {
    eval_qbf(q, &Assignment::new(), &OracleConfig::unbounded()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn agrees_with_oracle_d3(q in common::forall_exists_strategy(8, 5, 3)) {
        let s = solve(&q, &SolverConfig::default()).unwrap();
        prop_assert_eq!(s.value, oracle(&q));
        prop_assert!(s.stats.trace_strictly_decreasing());
        prop_assert!((s.stats.max_depth as u128) <= depth_bound(s.k, s.d).max(1));
    }

    #[test]
    fn agrees_with_oracle_d4(q in common::forall_exists_strategy(8, 4, 4)) {
        let s = solve(&q, &SolverConfig::default()).unwrap();
        prop_assert_eq!(s.value, oracle(&q));
    }

    #[test]
    fn parallel_agrees_with_sequential(q in common::forall_exists_strategy(8, 5, 3)) {
        let seq = solve(&q, &SolverConfig::default()).unwrap();
        let par = solve(&q, &SolverConfig { parallel_branching: true, ..SolverConfig::default() }).unwrap();
        prop_assert_eq!(seq.value, par.value);
        prop_assert!(par.stats.trace_strictly_decreasing());
    }

    // The weight argument does not depend on X.
    #[test]
    fn weight_drops_under_any_threshold(q in common::forall_exists_strategy(8, 5, 3), x in 1.0f64..4.0) {
        let cfg = SolverConfig { threshold_override: Some(x), ..SolverConfig::default() };
        let s = solve(&q, &cfg).unwrap();
        prop_assert!(s.stats.trace_strictly_decreasing());
    }
}

/// For each core `±x_i`, `per_core` clauses `(core ∨ y_j)` over distinct
/// universal y; plus the purely existential clauses in `extra`.
fn many_disjoint(k: u32, per_core: u32, extra: &[&[i64]]) -> QbfInstance {
    let cores: Vec<i64> = (1..=k as i64).flat_map(|i| [i, -i]).collect();
    let u = cores.len() as u32 * per_core;
    let mut clauses = Vec::new();
    let mut y = 1u32;
    for &c in &cores {
        for _ in 0..per_core {
            let core = if c > 0 { c + u as i64 } else { c - u as i64 };
            clauses.push(Clause::from_dimacs(&[core, y as i64]));
            y += 1;
        }
    }
    for e in extra {
        clauses.push(Clause::from_dimacs(
            &e.iter()
                .map(|&l| if l > 0 { l + u as i64 } else { l - u as i64 })
                .collect::<Vec<_>>(),
        ));
    }
    let matrix = CnfMatrix::new(u + k, clauses).unwrap();
    QbfInstance::forall_exists(
        (1..=u).map(Var::new).collect(),
        (u + 1..=u + k).map(Var::new).collect(),
        matrix,
    )
    .unwrap()
}

// With ⌈X⌉ disjoint universal parts behind every core, the universal player
// can reduce each clause to its core: the instance is decided by the core
// projection without branching.
#[test]
fn core_projection_without_branching() {
    let x = threshold(3, 2).unwrap();
    let per_core = required_family_size(x) as u32;
    assert_eq!(per_core, 9);
    // cores x_i and ¬x_i both forced: false
    let q = many_disjoint(3, per_core, &[]);
    let s = solve(&q, &SolverConfig::default()).unwrap();
    assert_eq!(s.resolution, Resolution::Search);
    assert_eq!((s.stats.branches, s.stats.base_case_hits), (0, 1));
    assert!(!s.value);
}

#[test]
fn core_projection_small_oracle_check() {
    // per_core = 2 with X = 2: small enough for the oracle
    let cfg = SolverConfig {
        threshold_override: Some(2.0),
        ..SolverConfig::default()
    };
    for extra in [&[][..], &[&[1, 2, 3][..]][..], &[&[1][..], &[-1][..]][..]] {
        let q = many_disjoint(3, 2, extra);
        let s = solve(&q, &cfg).unwrap();
        assert_eq!(s.stats.branches, 0);
        assert_eq!(s.value, oracle(&q));
    }
}

#[test]
fn universal_clause_is_refuted_without_search() {
    let q = common::forall_exists(3, 4, 3, 1, 2);
    let q = QbfInstance::forall_exists(
        (1..=4).map(Var::new).collect(),
        (5..=7).map(Var::new).collect(),
        CnfMatrix::new(
            7,
            vec![
                Clause::from_dimacs(&[1, -2]),
                q.matrix().clauses()[0].clone(),
            ],
        )
        .unwrap(),
    )
    .unwrap();
    let s = solve(&q, &SolverConfig::default()).unwrap();
    assert!(!s.value);
    assert_eq!(s.resolution, Resolution::UniversalClause);
    assert_eq!(s.stats.branches, 0);
}
