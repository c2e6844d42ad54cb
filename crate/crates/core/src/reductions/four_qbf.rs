//! DNF → 4-CNF QBF with `O(log(n + m))` existential variables, by recursion
//! on the size of the DNF.
//!
//! One recursive step pads the DNF to `m = 4^l` terms and introduces
//!
//! * `∃ y`: `2l` variables naming a term in binary,
//! * `∀ z¹, z²`: `2^l` variables each; setting `z¹_{j1}` and `z²_{j2}` claims
//!   that y names term `2^l·j1 + j2`,
//! * `∃ w`: the existential player's escape when the claim is false.
//!
//! Each term literal `l` of `T_i` becomes `(l ∨ ¬z¹_{j1} ∨ ¬z²_{j2} ∨ w)`.
//! The check "the universal player claimed honestly, or w = 0" is the 2-DNF
//! `D' = ¬w ∨ ⋁ (z¹_j ∧ l) ∨ ⋁ (z²_j ∧ l')` with `l ∈ B(j, first half of y)`,
//! `l' ∈ B(j, second half of y)`, which is reduced recursively with
//! (y, z¹, z², w) in the role of x. Small DNFs are brute-forced into one
//! clause per falsifying assignment, split down to arity 4.

use crate::encode::{binary_clause, split_clause_to_arity, VarAllocator};
use crate::error::ReductionError;
use crate::formula::{Clause, DnfFormula, Lit, QuantifierBlock, Term, Var};

use super::{lambda_pair, pad_terms, ReductionOutput};

pub const DEFAULT_BASE_THRESHOLD: usize = 20;

/// Largest number of variables the brute-force base case enumerates.
pub const MAX_BASE_CASE_VARS: usize = 24;

const ARITY: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourQbfConfig {
    /// DNFs with `n + m` at most this go to the base case.
    pub base_threshold: usize,
    /// Apply the recursive step on the first `forced_levels` levels even when
    /// it does not shrink the DNF. For exercising the gadget on small inputs.
    pub forced_levels: usize,
}

impl Default for FourQbfConfig {
    fn default() -> Self {
        FourQbfConfig {
            base_threshold: DEFAULT_BASE_THRESHOLD,
            forced_levels: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelKind {
    Base {
        enumerated_vars: usize,
        falsifiers: usize,
    },
    Recursive {
        next_vars: usize,
        next_terms: usize,
    },
}

/// Size of the DNF handled at one recursion level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelRecord {
    pub level: usize,
    pub vars: usize,
    pub terms: usize,
    pub kind: LevelKind,
}

impl LevelRecord {
    pub fn size(&self) -> usize {
        self.vars + self.terms
    }
}

fn pow4_at_least(m: usize) -> (u32, usize) {
    let mut l = 0;
    while 4usize.pow(l) < m {
        l += 1;
    }
    (l, 4usize.pow(l))
}

/// `(n', m')` of the DNF the recursive step hands to the next level, for a
/// source with `m >= 1` terms.
pub fn recursive_step_size(m: usize) -> (usize, usize) {
    let (l, _) = pow4_at_least(m);
    let half = l as usize;
    let side = 1usize << half;
    (2 * half + 2 * side + 1, 2 * half * side + 1)
}

pub fn reduce_dnf_to_4qbf(
    psi: &DnfFormula,
    base_threshold: usize,
) -> Result<ReductionOutput, ReductionError> {
    reduce_dnf_to_4qbf_with(
        psi,
        &FourQbfConfig {
            base_threshold,
            forced_levels: 0,
        },
    )
}

pub fn reduce_dnf_to_4qbf_with(
    psi: &DnfFormula,
    config: &FourQbfConfig,
) -> Result<ReductionOutput, ReductionError> {
    if config.base_threshold < 4 {
        return Err(ReductionError::ThresholdTooSmall(config.base_threshold));
    }
    if psi.is_empty() {
        return Err(ReductionError::EmptyDnf);
    }
    let n = psi.num_vars();
    let mut builder = Builder {
        config: *config,
        alloc: VarAllocator::after(n),
        blocks: Vec::new(),
        clauses: Vec::new(),
        roles: Vec::new(),
        levels: Vec::new(),
    };
    let x: Vec<Var> = (1..=n).map(Var::new).collect();
    builder.build(psi, &x, 0)?;
    ReductionOutput::assemble(
        n,
        builder.alloc.last(),
        builder.blocks,
        builder.clauses,
        builder.roles,
        builder.levels,
    )
}

struct Builder {
    config: FourQbfConfig,
    alloc: VarAllocator,
    blocks: Vec<QuantifierBlock>,
    clauses: Vec<Clause>,
    roles: Vec<(Var, String)>,
    levels: Vec<LevelRecord>,
}

impl Builder {
    /// Emits clauses and inner blocks for `psi`, whose variable i is the
    /// already-bound `outer[i - 1]`.
    fn build(
        &mut self,
        psi: &DnfFormula,
        outer: &[Var],
        level: usize,
    ) -> Result<(), ReductionError> {
        let n = psi.num_vars() as usize;
        let m = psi.len();
        let (next_n, next_m) = recursive_step_size(m);
        let forced = level < self.config.forced_levels;
        let shrinks = next_n + next_m < n + m;
        if forced || (n + m > self.config.base_threshold && shrinks) {
            if !forced && !shrinks {
                return Err(ReductionError::NoProgress {
                    before: n + m,
                    after: next_n + next_m,
                });
            }
            self.levels.push(LevelRecord {
                level,
                vars: n,
                terms: m,
                kind: LevelKind::Recursive {
                    next_vars: next_n,
                    next_terms: next_m,
                },
            });
            let (check, roles) = self.recursive_step(psi, outer, level)?;
            debug_assert_eq!((check.num_vars() as usize, check.len()), (next_n, next_m));
            self.build(&check, &roles, level + 1)
        } else {
            self.base_case(psi, outer, level)
        }
    }

    fn base_case(
        &mut self,
        psi: &DnfFormula,
        outer: &[Var],
        level: usize,
    ) -> Result<(), ReductionError> {
        let relevant: Vec<Var> = psi.occurring_vars().into_iter().collect();
        if relevant.len() > MAX_BASE_CASE_VARS {
            return Err(ReductionError::BaseCaseTooLarge(relevant.len()));
        }
        let global = |v: Var| outer[v.index() as usize - 1];
        let bit =
            |v: Var| 1u64 << (relevant.len() - 1 - relevant.binary_search(&v).expect("occurs"));
        let masks: Vec<(u64, u64)> = psi
            .terms()
            .iter()
            .map(|t| {
                t.lits().iter().fold((0, 0), |(p, q), l| {
                    if l.is_negated() {
                        (p, q | bit(l.var()))
                    } else {
                        (p | bit(l.var()), q)
                    }
                })
            })
            .collect();

        let mut fresh_vars = Vec::new();
        let mut falsifiers = 0;
        for a in 0..1u64 << relevant.len() {
            if masks.iter().any(|&(p, q)| a & p == p && a & q == 0) {
                continue;
            }
            falsifiers += 1;
            // the clause whose literals are all false under this assignment
            let clause = Clause::new(
                relevant
                    .iter()
                    .map(|&v| Lit::new(global(v), a & bit(v) != 0)),
            );
            let (chain, fresh) = split_clause_to_arity(&clause, ARITY, &mut self.alloc)?;
            self.clauses.extend(chain);
            fresh_vars.extend(fresh);
        }
        for &v in &fresh_vars {
            self.roles.push((v, format!("L{level}.split")));
        }
        self.blocks.push(QuantifierBlock::exists(fresh_vars));
        self.levels.push(LevelRecord {
            level,
            vars: psi.num_vars() as usize,
            terms: psi.len(),
            kind: LevelKind::Base {
                enumerated_vars: relevant.len(),
                falsifiers,
            },
        });
        Ok(())
    }

    /// Emits the term gadgets for `psi` and returns the check DNF together
    /// with the global variables playing its x role.
    fn recursive_step(
        &mut self,
        psi: &DnfFormula,
        outer: &[Var],
        level: usize,
    ) -> Result<(DnfFormula, Vec<Var>), ReductionError> {
        let (l, m) = pow4_at_least(psi.len());
        let padded = pad_terms(psi, m);
        let half = l as usize;
        let side = 1usize << half;

        let y = self.alloc.fresh_n(2 * half);
        let z1 = self.alloc.fresh_n(side);
        let z2 = self.alloc.fresh_n(side);
        let w = self.alloc.fresh();
        for (i, &v) in y.iter().enumerate() {
            self.roles.push((v, format!("L{level}.y{i}")));
        }
        for (name, zs) in [("z1", &z1), ("z2", &z2)] {
            for (j, &v) in zs.iter().enumerate() {
                self.roles.push((v, format!("L{level}.{name}_{j}")));
            }
        }
        self.roles.push((w, format!("L{level}.w")));
        self.blocks.push(QuantifierBlock::exists(y.clone()));
        self.blocks.push(QuantifierBlock::forall(
            z1.iter().chain(&z2).copied().collect(),
        ));
        self.blocks.push(QuantifierBlock::exists(vec![w]));

        for (i, term) in padded.terms().iter().enumerate() {
            let pair = lambda_pair(i as u64, m as u64)?;
            let guard = [
                z1[pair.j1 as usize].negative(),
                z2[pair.j2 as usize].negative(),
                w.positive(),
            ];
            for &lit in term.lits() {
                let lit = Lit::new(outer[lit.var().index() as usize - 1], lit.is_negated());
                self.clauses
                    .push(Clause::new(guard.iter().copied().chain([lit])));
            }
        }

        // local numbering of the check DNF: y, z¹, z², w
        let local = |i: usize| Var::new(i as u32 + 1);
        let y_first: Vec<Var> = (0..half).map(local).collect();
        let y_second: Vec<Var> = (half..2 * half).map(local).collect();
        let z1_local = |j: usize| local(2 * half + j);
        let z2_local = |j: usize| local(2 * half + side + j);
        let w_local = local(2 * half + 2 * side);

        let mut terms = vec![Term::new([w_local.negative()])];
        for (ys, z) in [
            (&y_first, &z1_local as &dyn Fn(usize) -> Var),
            (&y_second, &z2_local),
        ] {
            for j in 0..side {
                for &lit in binary_clause(j as u64, ys)?.lits() {
                    terms.push(Term::new([z(j).positive(), lit]));
                }
            }
        }
        let num_vars = (2 * half + 2 * side + 1) as u32;
        let check = DnfFormula::new(num_vars, terms)?;
        let roles: Vec<Var> = y.into_iter().chain(z1).chain(z2).chain([w]).collect();
        Ok((check, roles))
    }
}
