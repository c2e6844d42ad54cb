//! Integer-to-clause encoders and the long-clause splitting trick.

use crate::error::EncodeError;
use crate::formula::{Clause, Lit, Var};

/// Hands out consecutive fresh variables.
#[derive(Debug, Clone)]
pub struct VarAllocator {
    next: u32,
}

impl VarAllocator {
    /// The first fresh variable will be `after + 1`.
    pub fn after(after: u32) -> Self {
        VarAllocator { next: after + 1 }
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var::new(self.next);
        self.next += 1;
        v
    }

    pub fn fresh_n(&mut self, n: usize) -> Vec<Var> {
        (0..n).map(|_| self.fresh()).collect()
    }

    /// Highest variable handed out so far (or the starting bound).
    pub fn last(&self) -> u32 {
        self.next - 1
    }
}

/// `B(i, vars)`: the clause falsified exactly by the assignment spelling `i`
/// in binary over `vars`, first variable = most significant bit.
///
/// A 0 bit gives the positive literal, a 1 bit the negative one, so the last
/// variable carries the parity of `i`.
pub fn binary_clause(i: u64, vars: &[Var]) -> Result<Clause, EncodeError> {
    let n = vars.len();
    let limit = 1u128 << n.min(127);
    if u128::from(i) >= limit {
        return Err(EncodeError::OutOfRange { value: i, limit });
    }
    Ok(Clause::new(vars.iter().enumerate().map(|(p, &v)| {
        let bit = n - 1 - p;
        let one = bit < 64 && (i >> bit) & 1 == 1;
        Lit::new(v, one)
    })))
}

/// `B_t(i, tuples)`: writes `i` in base `n` (n = tuple size, first tuple =
/// most significant digit) and takes, for each tuple, the negated variable
/// selected by its digit.
pub fn base_clause(i: u64, tuples: &[Vec<Var>]) -> Result<Clause, EncodeError> {
    let n = tuples.first().map_or(0, Vec::len);
    if tuples.iter().any(|t| t.len() != n) {
        return Err(EncodeError::UnequalTuples);
    }
    let limit = (n as u128)
        .checked_pow(tuples.len() as u32)
        .unwrap_or(u128::MAX);
    if u128::from(i) >= limit {
        return Err(EncodeError::OutOfRange { value: i, limit });
    }
    let mut lits = Vec::with_capacity(tuples.len());
    let mut rest = i;
    for tuple in tuples.iter().rev() {
        let digit = (rest % n as u64) as usize;
        rest /= n as u64;
        lits.push(tuple[digit].negative());
    }
    Ok(Clause::new(lits))
}

/// Replaces a clause of arity > `d` by an equisatisfiable chain of clauses of
/// arity at most `d`, linked by fresh variables:
/// `(l1 ∨ … ∨ l_{d-1} ∨ z) ∧ (¬z ∨ l_d ∨ … ∨ l_t)`, repeated on the tail.
///
/// Returns the chain and the fresh variables in creation order. A clause that
/// already fits is returned unchanged.
pub fn split_clause_to_arity(
    clause: &Clause,
    d: usize,
    fresh: &mut VarAllocator,
) -> Result<(Vec<Clause>, Vec<Var>), EncodeError> {
    if d < 3 {
        return Err(EncodeError::ArityTooSmall(d));
    }
    if clause.arity() <= d {
        return Ok((vec![clause.clone()], vec![]));
    }
    let mut out = Vec::new();
    let mut introduced = Vec::new();
    let mut rest: Vec<Lit> = clause.lits().to_vec();
    while rest.len() > d {
        let z = fresh.fresh();
        introduced.push(z);
        let tail = rest.split_off(d - 1);
        rest.push(z.positive());
        out.push(Clause::new(rest));
        rest = std::iter::once(z.negative()).chain(tail).collect();
    }
    out.push(Clause::new(rest));
    Ok((out, introduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Assignment;

    fn vars(range: std::ops::RangeInclusive<u32>) -> Vec<Var> {
        range.map(Var::new).collect()
    }

    /// Every assignment over `vs` that falsifies `c`, as big-endian integers.
    fn falsifiers(c: &Clause, vs: &[Var]) -> Vec<u64> {
        (0..1u64 << vs.len())
            .filter(|&b| !c.is_satisfied_by(&Assignment::from_bits(vs, b)))
            .collect()
    }

    #[test]
    fn binary_clause_examples() {
        assert_eq!(
            binary_clause(0, &vars(1..=1)).unwrap(),
            Clause::from_dimacs(&[1])
        );
        assert_eq!(
            binary_clause(5, &vars(1..=3)).unwrap(),
            Clause::from_dimacs(&[-1, 2, -3])
        );
        assert_eq!(
            binary_clause(3, &vars(1..=2)).unwrap(),
            Clause::from_dimacs(&[-1, -2])
        );
        assert_eq!(binary_clause(0, &[]).unwrap(), Clause::empty());
        assert!(binary_clause(4, &vars(1..=2)).is_err());
    }

    #[test]
    fn binary_clause_matches_recursive_definition() {
        // B(0, ()) = ∅; B(i, x1..xn) = B(i/2, x1..x_{n-1}) ∨ (xn if i even else ¬xn)
        fn reference(i: u64, vs: &[Var]) -> Vec<Lit> {
            match vs.split_last() {
                None => vec![],
                Some((&last, init)) => {
                    let mut c = reference(i / 2, init);
                    c.push(Lit::new(last, i % 2 == 1));
                    c
                }
            }
        }
        for n in 0..=6u32 {
            let vs = vars(1..=n);
            for i in 0..1u64 << n {
                assert_eq!(
                    binary_clause(i, &vs).unwrap(),
                    Clause::new(reference(i, &vs))
                );
            }
        }
    }

    #[test]
    fn binary_clause_unique_falsifier_small() {
        let vs = vars(1..=4);
        for i in 0..16 {
            assert_eq!(falsifiers(&binary_clause(i, &vs).unwrap(), &vs), vec![i]);
        }
    }

    #[test]
    fn base_clause_examples() {
        let t1 = vec![vars(1..=3)];
        assert_eq!(base_clause(2, &t1).unwrap(), Clause::from_dimacs(&[-3]));
        // tuples (x¹_0..x¹_2) = 1..3, (x²_0..x²_2) = 4..6; 5 = (1,2) in base 3
        let t2 = vec![vars(1..=3), vars(4..=6)];
        assert_eq!(base_clause(5, &t2).unwrap(), Clause::from_dimacs(&[-2, -6]));
        let t3 = vec![vars(1..=2), vars(3..=4)];
        assert_eq!(base_clause(0, &t3).unwrap(), Clause::from_dimacs(&[-1, -3]));
        assert!(base_clause(9, &t2).is_err());
        assert_eq!(
            base_clause(0, &[vars(1..=2), vars(3..=5)]),
            Err(EncodeError::UnequalTuples)
        );
    }

    /// Equisatisfiability oracle: for every assignment of the original
    /// variables, the clause holds iff some assignment of the fresh variables
    /// satisfies the whole chain.
    fn assert_equisatisfiable(original: &Clause, chain: &[Clause], fresh: &[Var]) {
        let orig_vars: Vec<Var> = original.vars().collect();
        for b in 0..1u64 << orig_vars.len() {
            let sigma = Assignment::from_bits(&orig_vars, b);
            let extendable = (0..1u64 << fresh.len()).any(|f| {
                let full = sigma.union(&Assignment::from_bits(fresh, f));
                chain.iter().all(|c| c.is_satisfied_by(&full))
            });
            assert_eq!(
                original.is_satisfied_by(&sigma),
                extendable,
                "assignment {b:b}"
            );
        }
    }

    #[test]
    fn split_leaves_short_clause_alone() {
        let c = Clause::from_dimacs(&[1, 2, 3]);
        let mut alloc = VarAllocator::after(3);
        let (chain, fresh) = split_clause_to_arity(&c, 4, &mut alloc).unwrap();
        assert_eq!(chain, vec![c]);
        assert!(fresh.is_empty());
    }

    #[test]
    fn split_five_into_four() {
        let c = Clause::from_dimacs(&[1, 2, 3, 4, 5]);
        let mut alloc = VarAllocator::after(5);
        let (chain, fresh) = split_clause_to_arity(&c, 4, &mut alloc).unwrap();
        assert_eq!(fresh, vec![Var::new(6)]);
        assert_eq!(
            chain,
            vec![
                Clause::from_dimacs(&[1, 2, 3, 6]),
                Clause::from_dimacs(&[-6, 4, 5])
            ]
        );
        assert_equisatisfiable(&c, &chain, &fresh);
    }

    #[test]
    fn split_seven_into_three_needs_four_links() {
        // 7 + 2f literal slots must fit in f+1 clauses of arity 3, so f >= 4
        let c = Clause::from_dimacs(&[1, 2, 3, 4, 5, 6, 7]);
        let mut alloc = VarAllocator::after(7);
        let (chain, fresh) = split_clause_to_arity(&c, 3, &mut alloc).unwrap();
        assert_eq!(fresh.len(), 4);
        assert!(chain.iter().all(|c| c.arity() <= 3));
        assert_equisatisfiable(&c, &chain, &fresh);
    }

    #[test]
    fn split_rejects_small_arity() {
        let mut alloc = VarAllocator::after(2);
        assert_eq!(
            split_clause_to_arity(&Clause::from_dimacs(&[1, 2]), 2, &mut alloc),
            Err(EncodeError::ArityTooSmall(2))
        );
    }
}
