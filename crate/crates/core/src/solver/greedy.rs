use std::collections::BTreeSet;

use crate::error::SolverError;
use crate::formula::{Clause, CnfMatrix, Var};

/// Size threshold `X(k, d) = 2^d · d · ln k`. Family sizes are compared
/// against its ceiling.
pub fn threshold(k: usize, d: usize) -> Result<f64, SolverError> {
    if k < 2 {
        return Err(SolverError::ThresholdK(k));
    }
    Ok(2f64.powi(d as i32) * d as f64 * (k as f64).ln())
}

/// Number of disjoint clauses a group must yield to count as large.
pub fn required_family_size(x: f64) -> usize {
    x.max(0.0).ceil() as usize
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisjointOrHitting {
    /// `⌈X⌉` pairwise variable-disjoint parts.
    Family(Vec<Clause>),
    /// Variables of a maximal disjoint family smaller than `⌈X⌉`; every part
    /// contains one of them. Sorted.
    HittingSet(Vec<Var>),
}

/// Scans `parts` in order and keeps each part that shares no variable with
/// the ones kept so far.
pub fn greedy_disjoint(parts: &[Clause], x: f64) -> Result<DisjointOrHitting, SolverError> {
    if parts.iter().all(Clause::is_empty) {
        return Err(SolverError::TrivialGroup);
    }
    let need = required_family_size(x);
    let mut family = Vec::new();
    let mut used: BTreeSet<Var> = BTreeSet::new();
    if need == 0 {
        return Ok(DisjointOrHitting::Family(family));
    }
    for part in parts {
        if part.vars().all(|v| !used.contains(&v)) {
            used.extend(part.vars());
            family.push(part.clone());
            if family.len() == need {
                return Ok(DisjointOrHitting::Family(family));
            }
        }
    }
    Ok(DisjointOrHitting::HittingSet(used.into_iter().collect()))
}

/// Largest number of variables [`sat_check_core`] will enumerate.
pub const MAX_CORE_VARS: usize = 40;

/// Satisfiability of a purely existential matrix by trying all `2^k`
/// assignments of its occurring variables.
pub fn sat_check_core(core_matrix: &CnfMatrix) -> Result<bool, SolverError> {
    let vars: Vec<Var> = core_matrix.occurring_vars().into_iter().collect();
    let k = vars.len();
    if k > MAX_CORE_VARS {
        return Err(SolverError::CoreTooLarge(k));
    }
    let bit = |v: Var| 1u64 << vars.binary_search(&v).expect("occurring variable");
    let masks: Vec<(u64, u64)> = core_matrix
        .clauses()
        .iter()
        .map(|c| {
            c.lits().iter().fold((0, 0), |(p, n), l| {
                if l.is_negated() {
                    (p, n | bit(l.var()))
                } else {
                    (p | bit(l.var()), n)
                }
            })
        })
        .collect();
    Ok((0..1u64 << k).any(|a| masks.iter().all(|&(p, n)| a & p != 0 || !a & n != 0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(ps: &[&[i64]]) -> Vec<Clause> {
        ps.iter().map(|p| Clause::from_dimacs(p)).collect()
    }

    fn vars(ids: &[u32]) -> Vec<Var> {
        ids.iter().map(|&i| Var::new(i)).collect()
    }

    #[test]
    fn threshold_values() {
        // 8·3·ln 2 and 16·4·ln 16, evaluated independently
        let x23 = threshold(2, 3).unwrap();
        assert!((x23 - 16.635532333438686).abs() < 1e-9);
        assert_eq!(required_family_size(x23), 17);
        let x164 = threshold(16, 4).unwrap();
        assert!((x164 - 177.445678223346).abs() < 1e-9);
        assert_eq!(required_family_size(x164), 178);
        assert_eq!(threshold(1, 3), Err(SolverError::ThresholdK(1)));
    }

    #[test]
    fn greedy_examples() {
        let s = parts(&[&[1, 2], &[2, 3], &[4]]);
        assert_eq!(
            greedy_disjoint(&s, 2.0).unwrap(),
            DisjointOrHitting::Family(parts(&[&[1, 2], &[4]]))
        );
        assert_eq!(
            greedy_disjoint(&parts(&[&[1, 2], &[2, 3]]), 2.0).unwrap(),
            DisjointOrHitting::HittingSet(vars(&[1, 2]))
        );
        assert_eq!(
            greedy_disjoint(&parts(&[&[1]]), 1.0).unwrap(),
            DisjointOrHitting::Family(parts(&[&[1]]))
        );
        assert_eq!(
            greedy_disjoint(&[Clause::empty()], 2.0),
            Err(SolverError::TrivialGroup)
        );
    }

    #[test]
    fn fractional_threshold_rounds_up() {
        let s = parts(&[&[1], &[2]]);
        assert!(
            matches!(greedy_disjoint(&s, 1.2).unwrap(), DisjointOrHitting::Family(f) if f.len() == 2)
        );
        assert!(matches!(
            greedy_disjoint(&s, 2.01).unwrap(),
            DisjointOrHitting::HittingSet(_)
        ));
    }

    #[test]
    fn core_sat() {
        let m = |cs: &[&[i64]]| CnfMatrix::new(2, parts(cs)).unwrap();
        assert!(!sat_check_core(&m(&[&[1], &[-1]])).unwrap());
        assert!(sat_check_core(&m(&[&[1, 2], &[-1, 2]])).unwrap());
        assert!(sat_check_core(&m(&[])).unwrap());
        assert!(!sat_check_core(&m(&[&[]])).unwrap());
    }
}
