//! Decision procedure for ∀∃-QBF in d-CNF, parameterized by the number k of
//! existential variables.
//!
//! Clauses are grouped by their existential core. If every group that has
//! universal literals contains `⌈X(k, d)⌉` clauses with pairwise disjoint
//! universal parts, the universal player can force every clause down to its
//! core, so the instance is decided by satisfiability of the core projection.
//! Otherwise some group's greedy family is small and its variables form a
//! hitting set `H`; the solver branches on all assignments of `H`. Each branch
//! shrinks every universal part of that group, so the weight (Σ over groups
//! of the largest universal part) drops on every level.

mod greedy;
mod groups;
mod stats;

use std::collections::BTreeSet;

use rayon::prelude::*;

pub use greedy::{
    greedy_disjoint, required_family_size, sat_check_core, threshold, DisjointOrHitting,
    MAX_CORE_VARS,
};
pub use groups::{core_projection, partition_groups, weight, ExistentialCore, Group, GroupTable};
pub use stats::{stats_csv_header, SolverStats, StatsRow};

use crate::error::SolverError;
use crate::formula::{Assignment, Clause, CnfMatrix, QbfInstance, Var};
use crate::oracle::{eval_qbf, OracleConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Replaces `X(k, d)` when set.
    pub threshold_override: Option<f64>,
    /// Instances with at most this many existential variables go straight to
    /// the oracle. At least 1.
    pub small_k_cutoff: usize,
    pub parallel_branching: bool,
    /// Arity bound d; inferred from the matrix when `None`.
    pub arity: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            threshold_override: None,
            small_k_cutoff: 2,
            parallel_branching: false,
            arity: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preprocessed {
    /// A non-tautological clause without existential literals: the universal
    /// player falsifies it.
    False {
        clause: Clause,
    },
    Simplified(QbfInstance),
}

/// Drops tautologies and looks for a clause made of universal literals only.
pub fn preprocess(instance: &QbfInstance) -> Result<Preprocessed, SolverError> {
    let (universal, existential) = instance
        .as_forall_exists()
        .ok_or(SolverError::NotForallExists)?;
    let ex: BTreeSet<Var> = existential.iter().copied().collect();
    let mut kept = Vec::with_capacity(instance.matrix().len());
    for clause in instance.matrix().clauses() {
        if clause.is_tautology() {
            continue;
        }
        if !clause.vars().any(|v| ex.contains(&v)) {
            return Ok(Preprocessed::False {
                clause: clause.clone(),
            });
        }
        kept.push(clause.clone());
    }
    let matrix = CnfMatrix::new(instance.num_vars(), kept).expect("subset of a valid matrix");
    Ok(Preprocessed::Simplified(
        QbfInstance::forall_exists(universal, existential, matrix).expect("same prefix"),
    ))
}

/// How the answer was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    UniversalClause,
    SmallK,
    Search,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub value: bool,
    pub resolution: Resolution,
    /// Number of existential variables.
    pub k: usize,
    /// Arity bound used.
    pub d: usize,
    /// Effective `X`, when the search ran.
    pub threshold: Option<f64>,
    pub stats: SolverStats,
}

/// `d · k^(d-1)`: an upper bound on the initial weight, hence on the depth.
pub fn depth_bound(k: usize, d: usize) -> u128 {
    (d as u128).saturating_mul((k as u128).saturating_pow(d.saturating_sub(1) as u32))
}

/// `log2` of the leaf bound `2^(d² · X · k^(d-1))`.
pub fn leaf_bound_log2(k: usize, d: usize, x: f64) -> f64 {
    (d * d) as f64 * x * (k as f64).powi(d as i32 - 1)
}

pub fn solve(instance: &QbfInstance, config: &SolverConfig) -> Result<Solution, SolverError> {
    if instance.as_forall_exists().is_none() {
        return Err(SolverError::NotForallExists);
    }
    let max_arity = instance.matrix().max_arity();
    let d = match config.arity {
        Some(d) if max_arity > d => {
            return Err(SolverError::ArityViolation {
                arity: max_arity,
                d,
            })
        }
        Some(d) => d,
        None => max_arity,
    }
    .max(1);

    let simplified = match preprocess(instance)? {
        Preprocessed::False { .. } => {
            let (_, ex) = instance.as_forall_exists().expect("checked above");
            return Ok(Solution {
                value: false,
                resolution: Resolution::UniversalClause,
                k: ex.len(),
                d,
                threshold: None,
                stats: SolverStats::leaf(0),
            });
        }
        Preprocessed::Simplified(s) => s,
    };
    let (_, existential) = simplified.as_forall_exists().expect("∀∃ shape preserved");
    let k = existential.len();

    if k <= config.small_k_cutoff.max(1) {
        let value = eval_qbf(&simplified, &Assignment::new(), &OracleConfig::unbounded())?;
        return Ok(Solution {
            value,
            resolution: Resolution::SmallK,
            k,
            d,
            threshold: None,
            stats: SolverStats::leaf(0),
        });
    }

    let x = match config.threshold_override {
        Some(x) => x,
        None => threshold(k, d)?,
    };
    let search = Search {
        existential: existential.into_iter().collect(),
        x,
        parallel: config.parallel_branching,
    };
    let outcome = search.run(simplified.matrix(), 0, None)?;
    Ok(Solution {
        value: outcome.value,
        resolution: Resolution::Search,
        k,
        d,
        threshold: Some(x),
        stats: SolverStats {
            leaves: outcome.leaves,
            max_depth: outcome.max_depth,
            branches: outcome.branches,
            weight_trace: outcome.trace,
            base_case_hits: outcome.base_case_hits,
        },
    })
}

struct Search {
    existential: BTreeSet<Var>,
    x: f64,
    parallel: bool,
}

struct Outcome {
    value: bool,
    leaves: u64,
    branches: u64,
    base_case_hits: u64,
    max_depth: usize,
    /// Weights along the deepest path below (and including) this node.
    trace: Vec<usize>,
}

impl Search {
    fn run(
        &self,
        matrix: &CnfMatrix,
        depth: usize,
        parent_weight: Option<usize>,
    ) -> Result<Outcome, SolverError> {
        if let Some(c) = matrix
            .clauses()
            .iter()
            .find(|c| !c.vars().any(|v| self.existential.contains(&v)))
        {
            return Err(SolverError::Invariant(format!(
                "clause {c} without existential literals at depth {depth}"
            )));
        }
        let table = partition_groups(matrix, &self.existential);
        let w = table.weight();
        if let Some(p) = parent_weight {
            if w >= p {
                return Err(SolverError::Invariant(format!(
                    "weight did not decrease: {p} -> {w} at depth {depth}"
                )));
            }
        }

        let mut failing = None;
        for (_, group) in table.iter() {
            if group.has_empty_part() {
                continue;
            }
            if let DisjointOrHitting::HittingSet(h) = greedy_disjoint(&group.parts, self.x)? {
                failing = Some((group, h));
                break;
            }
        }

        let Some((group, hitting)) = failing else {
            let value = sat_check_core(&core_projection(matrix, &self.existential))?;
            return Ok(Outcome {
                value,
                leaves: 1,
                branches: 0,
                base_case_hits: 1,
                max_depth: depth,
                trace: vec![w],
            });
        };

        if let Some(p) = group
            .parts
            .iter()
            .find(|p| !p.vars().any(|v| hitting.binary_search(&v).is_ok()))
        {
            return Err(SolverError::Invariant(format!(
                "{p} misses the hitting set"
            )));
        }
        if hitting.len() >= 64 {
            return Err(SolverError::Invariant(format!(
                "hitting set of {} variables is too large to enumerate",
                hitting.len()
            )));
        }

        let child = |bits: u64| {
            let sigma = Assignment::from_bits(&hitting, bits);
            self.run(&matrix.apply(&sigma), depth + 1, Some(w))
        };
        let count = 1u64 << hitting.len();
        let children: Vec<Outcome> = if self.parallel {
            (0..count)
                .into_par_iter()
                .map(child)
                .collect::<Result<_, _>>()?
        } else {
            let mut done = Vec::new();
            for bits in 0..count {
                let o = child(bits)?;
                let stop = !o.value;
                done.push(o);
                if stop {
                    break;
                }
            }
            done
        };

        let mut out = Outcome {
            value: children.iter().all(|o| o.value),
            leaves: 0,
            branches: children.len() as u64,
            base_case_hits: 0,
            max_depth: depth,
            trace: vec![w],
        };
        let mut deepest: Option<&Outcome> = None;
        for o in &children {
            out.leaves += o.leaves;
            out.branches += o.branches;
            out.base_case_hits += o.base_case_hits;
            if deepest.is_none_or(|d| o.max_depth > d.max_depth) {
                deepest = Some(o);
            }
        }
        if let Some(d) = deepest {
            out.max_depth = d.max_depth;
            out.trace.extend_from_slice(&d.trace);
        }
        Ok(out)
    }
}
