//! Instance generators that turn a DNF validity question into a QBF with few
//! existential variables.
//!
//! Both constructions keep the DNF's variables `x1..xn` as the first `n`
//! variables of the output and bind them in the outermost universal block,
//! so `∀x Q φ` is true exactly when the DNF is valid, and for every σ over x,
//! `ψ(σ) ⟺ Q φ(σ)`.

mod four_qbf;
mod two_block;

use std::collections::BTreeMap;
use std::fmt::Write as _;

pub use four_qbf::{
    recursive_step_size, reduce_dnf_to_4qbf, reduce_dnf_to_4qbf_with, FourQbfConfig, LevelKind,
    LevelRecord, DEFAULT_BASE_THRESHOLD, MAX_BASE_CASE_VARS,
};
pub use two_block::{reduce_dnf_to_fe_dqbf, tuple_size};

use crate::error::ReductionError;
use crate::formula::{
    normalize_prefix, Clause, CnfMatrix, DnfFormula, QbfInstance, Quantifier, QuantifierBlock, Var,
};

/// One introduced variable and the gadget it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub var: Var,
    pub role: String,
    /// Index of its block in the normalized prefix.
    pub block: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOutput {
    /// Closed QBF; the source variables are bound by the outermost ∀ block.
    pub instance: QbfInstance,
    /// Source variable i (1-based) ↦ `x_map[i - 1]`.
    pub x_map: Vec<Var>,
    pub existential_count: usize,
    /// Number of quantifier blocks in the prefix.
    pub alternations: usize,
    pub provenance: Vec<Provenance>,
    /// Recursion levels (empty for the two-block construction).
    pub levels: Vec<LevelRecord>,
}

impl ReductionOutput {
    pub(crate) fn assemble(
        n: u32,
        num_vars: u32,
        blocks: Vec<QuantifierBlock>,
        clauses: Vec<Clause>,
        roles: Vec<(Var, String)>,
        levels: Vec<LevelRecord>,
    ) -> Result<Self, ReductionError> {
        let x_map: Vec<Var> = (1..=n).map(Var::new).collect();
        let mut prefix = vec![QuantifierBlock::forall(x_map.clone())];
        prefix.extend(blocks);
        let prefix = normalize_prefix(prefix);
        let block_of: BTreeMap<Var, usize> = prefix
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.vars.iter().map(move |&v| (v, i)))
            .collect();
        let provenance = roles
            .into_iter()
            .map(|(var, role)| Provenance {
                var,
                role,
                block: block_of[&var],
            })
            .collect();
        let existential_count = prefix
            .iter()
            .filter(|b| b.quantifier == Quantifier::Exists)
            .map(|b| b.vars.len())
            .sum();
        let alternations = prefix.len();
        let instance = QbfInstance::new(prefix, CnfMatrix::new(num_vars, clauses)?)?;
        Ok(ReductionOutput {
            instance,
            x_map,
            existential_count,
            alternations,
            provenance,
            levels,
        })
    }

    /// Sidecar text: one `id role block` line per introduced variable.
    pub fn provenance_text(&self) -> String {
        let mut s = String::new();
        for p in &self.provenance {
            let _ = writeln!(s, "{} {} {}", p.var.index(), p.role, p.block);
        }
        s
    }

    pub fn max_arity(&self) -> usize {
        self.instance.matrix().max_arity()
    }
}

/// Repeats the last term until the formula has `target` terms. Formulas that
/// are already long enough, or have no term to repeat, come back unchanged.
pub fn pad_terms(psi: &DnfFormula, target: usize) -> DnfFormula {
    let mut terms = psi.terms().to_vec();
    if let Some(last) = terms.last().cloned() {
        terms.resize(target.max(terms.len()), last);
    }
    DnfFormula::new(psi.num_vars(), terms).expect("same variables")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaPair {
    pub j1: u64,
    pub j2: u64,
}

/// `i ↦ (⌊i/√m⌋, i mod √m)`.
pub fn lambda_pair(i: u64, m: u64) -> Result<LambdaPair, ReductionError> {
    let root = m.isqrt();
    if root * root != m {
        return Err(ReductionError::NotPerfectSquare(m));
    }
    if i >= m {
        return Err(ReductionError::IndexOutOfRange { index: i, len: m });
    }
    Ok(LambdaPair {
        j1: i / root,
        j2: i % root,
    })
}
