use crate::encode::{base_clause, split_clause_to_arity, VarAllocator};
use crate::error::ReductionError;
use crate::formula::{Clause, DnfFormula, QuantifierBlock, Var};

use super::{pad_terms, ReductionOutput};

/// Smallest `r` with `r^(d-1) >= m`.
pub fn tuple_size(m: usize, d: usize) -> usize {
    let t = (d - 1) as u32;
    (0..).find(|&r: &usize| r.pow(t) >= m).expect("terminates")
}

/// `∀x ∃y φ(x, y)` in d-CNF with `O(m^(1/(d-1)))` existential variables.
///
/// Term `T_i` is addressed by `i` written in base `r` over `d-1` tuples of
/// `r` selector variables: for each literal `l` of `T_i` the clause
/// `l ∨ B_{d-1}(i, y¹..y^{d-1})` is emitted. One clause per tuple forces at
/// least one selector per tuple to be set, and is split down to arity d.
pub fn reduce_dnf_to_fe_dqbf(
    psi: &DnfFormula,
    d: usize,
) -> Result<ReductionOutput, ReductionError> {
    if d < 3 {
        return Err(ReductionError::ArityTooSmall(d));
    }
    let n = psi.num_vars();
    let r = tuple_size(psi.len(), d);
    let padded = pad_terms(psi, r.pow((d - 1) as u32));

    let mut alloc = VarAllocator::after(n);
    let mut roles = Vec::new();
    let tuples: Vec<Vec<Var>> = (1..d)
        .map(|j| {
            let tuple = alloc.fresh_n(r);
            for (idx, &v) in tuple.iter().enumerate() {
                roles.push((v, format!("y{j}_{idx}")));
            }
            tuple
        })
        .collect();

    let mut clauses = Vec::new();
    for (i, term) in padded.terms().iter().enumerate() {
        let selector = base_clause(i as u64, &tuples)?;
        for &lit in term.lits() {
            clauses.push(Clause::new(selector.lits().iter().copied().chain([lit])));
        }
    }
    let mut split_vars = Vec::new();
    for tuple in &tuples {
        let wide = Clause::new(tuple.iter().map(|v| v.positive()));
        let (chain, fresh) = split_clause_to_arity(&wide, d, &mut alloc)?;
        clauses.extend(chain);
        for &v in &fresh {
            roles.push((v, "split".to_string()));
        }
        split_vars.extend(fresh);
    }

    let existential: Vec<Var> = tuples.into_iter().flatten().chain(split_vars).collect();
    ReductionOutput::assemble(
        n,
        alloc.last(),
        vec![QuantifierBlock::exists(existential)],
        clauses,
        roles,
        vec![],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Term;

    #[test]
    fn tuple_sizes() {
        assert_eq!(tuple_size(0, 3), 0);
        assert_eq!(tuple_size(1, 3), 1);
        assert_eq!(tuple_size(9, 3), 3);
        assert_eq!(tuple_size(10, 3), 4);
        assert_eq!(tuple_size(16, 4), 3);
        assert_eq!(tuple_size(8, 4), 2);
    }

    #[test]
    fn single_term_construction() {
        // (x1 ∧ x2), d = 3: y¹_0 = 3, y²_0 = 4
        let psi = DnfFormula::new(2, vec![Term::from_dimacs(&[1, 2])]).unwrap();
        let out = reduce_dnf_to_fe_dqbf(&psi, 3).unwrap();
        assert_eq!(
            out.instance.matrix().clauses(),
            &[
                Clause::from_dimacs(&[1, -3, -4]),
                Clause::from_dimacs(&[2, -3, -4]),
                Clause::from_dimacs(&[3]),
                Clause::from_dimacs(&[4]),
            ]
        );
        assert_eq!(out.existential_count, 2);
        assert_eq!(out.alternations, 2);
        assert_eq!(out.provenance_text(), "3 y1_0 1\n4 y2_0 1\n");
    }

    #[test]
    fn rejects_small_arity() {
        let psi = DnfFormula::new(1, vec![Term::from_dimacs(&[1])]).unwrap();
        assert_eq!(
            reduce_dnf_to_fe_dqbf(&psi, 2),
            Err(ReductionError::ArityTooSmall(2))
        );
    }

    #[test]
    fn nine_terms_need_no_splitting() {
        let terms = (0..9).map(|i| Term::from_dimacs(&[(i % 3) + 1])).collect();
        let psi = DnfFormula::new(3, terms).unwrap();
        let out = reduce_dnf_to_fe_dqbf(&psi, 3).unwrap();
        assert_eq!(out.existential_count, 6);
        assert!(out.max_arity() <= 3);
    }
}
