//! Ground truth by exhaustive game-tree evaluation.
//!
//! Nothing here is clever: the evaluator walks the quantifier prefix and
//! branches on every variable, cutting a branch only when its value is
//! already decided (an empty clause, no clauses left, or a variable that no
//! longer occurs). Variables inside one block may be visited in any order
//! since same-quantifier neighbours commute.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::OracleError;
use crate::formula::{Assignment, CnfMatrix, DnfFormula, QbfInstance, Quantifier, Var};

/// Bound on the number of variables the oracle will enumerate over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_vars: usize,
}

impl OracleConfig {
    pub const DEFAULT_MAX_VARS: usize = 24;

    pub fn unbounded() -> Self {
        OracleConfig {
            max_vars: usize::MAX,
        }
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_vars: Self::DEFAULT_MAX_VARS,
        }
    }
}

/// Quantifier and block position of every variable, indexed by variable.
struct Game {
    quantifier: Vec<Option<Quantifier>>,
    block: Vec<usize>,
}

impl Game {
    fn new(instance: &QbfInstance) -> Self {
        let n = instance.num_vars() as usize + 1;
        let mut quantifier = vec![None; n];
        let mut block = vec![usize::MAX; n];
        for (i, b) in instance.prefix().iter().enumerate() {
            for v in &b.vars {
                quantifier[v.index() as usize] = Some(b.quantifier);
                block[v.index() as usize] = i;
            }
        }
        Game { quantifier, block }
    }

    fn eval(&self, clauses: &[Vec<i64>]) -> bool {
        if clauses.is_empty() {
            return true;
        }
        if clauses.iter().any(Vec::is_empty) {
            return false;
        }
        let var_of = |l: i64| l.unsigned_abs() as usize;
        let outer = clauses
            .iter()
            .flatten()
            .map(|&l| self.block[var_of(l)])
            .min()
            .expect("non-empty clauses");
        // shortest clause holding a variable of the outermost live block
        let lit = clauses
            .iter()
            .filter_map(|c| {
                c.iter()
                    .find(|&&l| self.block[var_of(l)] == outer)
                    .map(|&l| (c.len(), l))
            })
            .min_by_key(|&(len, _)| len)
            .map(|(_, l)| l)
            .expect("outer block occurs");
        let var = var_of(lit);
        let q = self.quantifier[var].expect("bound variable");
        // try the value that satisfies the literal for ∃, falsifies it for ∀
        let first = (lit > 0) == (q == Quantifier::Exists);
        let a = self.eval(&assign(clauses, var, first));
        match q {
            Quantifier::Exists => a || self.eval(&assign(clauses, var, !first)),
            Quantifier::Forall => a && self.eval(&assign(clauses, var, !first)),
        }
    }
}

fn assign(clauses: &[Vec<i64>], var: usize, value: bool) -> Vec<Vec<i64>> {
    let sat = if value { var as i64 } else { -(var as i64) };
    clauses
        .iter()
        .filter(|c| !c.contains(&sat))
        .map(|c| c.iter().copied().filter(|&l| l != -sat).collect())
        .collect()
}

fn to_ints(matrix: &CnfMatrix) -> Vec<Vec<i64>> {
    matrix
        .clauses()
        .iter()
        .map(|c| c.lits().iter().map(|l| l.to_dimacs()).collect())
        .collect()
}

/// Checks that `partial` assigns whole outer blocks plus possibly part of the
/// first block that still has unassigned variables.
fn check_partial(instance: &QbfInstance, partial: &Assignment) -> Result<(), OracleError> {
    let quantified = instance.quantifier_of();
    if let Some((v, _)) = partial.iter().find(|(v, _)| !quantified.contains_key(v)) {
        return Err(OracleError::UnknownVariable(v.index()));
    }
    let mut open_block_seen = false;
    for block in instance.prefix() {
        if open_block_seen {
            if let Some(v) = block.vars.iter().find(|v| partial.contains(**v)) {
                return Err(OracleError::PrefixOrder(v.index()));
            }
        } else if block.vars.iter().any(|v| !partial.contains(*v)) {
            open_block_seen = true;
        }
    }
    Ok(())
}

/// Truth value of `instance` after fixing `partial` (which must respect the
/// prefix order).
pub fn eval_qbf(
    instance: &QbfInstance,
    partial: &Assignment,
    config: &OracleConfig,
) -> Result<bool, OracleError> {
    let vars = instance.bound_vars();
    if vars > config.max_vars {
        return Err(OracleError::TooManyVariables {
            vars,
            bound: config.max_vars,
        });
    }
    check_partial(instance, partial)?;
    let game = Game::new(instance);
    Ok(game.eval(&to_ints(&instance.matrix().apply(partial))))
}

/// True iff every total assignment satisfies some term.
pub fn is_dnf_valid(formula: &DnfFormula, config: &OracleConfig) -> Result<bool, OracleError> {
    let n = formula.num_vars() as usize;
    if n > config.max_vars || n > 63 {
        return Err(OracleError::TooManyVariables {
            vars: n,
            bound: config.max_vars.min(63),
        });
    }
    let masks = term_masks(formula);
    Ok((0..1u64 << n).all(|bits| eval_masks(&masks, bits)))
}

/// (positive, negative) variable masks per term, bit `n - var` for var
/// (so that x1 is the most significant bit).
fn term_masks(formula: &DnfFormula) -> Vec<(u64, u64)> {
    let n = formula.num_vars();
    formula
        .terms()
        .iter()
        .map(|t| {
            t.lits().iter().fold((0, 0), |(p, q), l| {
                let bit = 1u64 << (n - l.var().index());
                if l.is_negated() {
                    (p, q | bit)
                } else {
                    (p | bit, q)
                }
            })
        })
        .collect()
}

fn eval_masks(masks: &[(u64, u64)], bits: u64) -> bool {
    masks.iter().any(|&(p, q)| bits & p == p && bits & q == 0)
}

/// How the QBF side of an equivalence check is shaped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    /// `∀x ∃y φ`: exactly the x block followed by at most one ∃ block.
    ForallExists,
    /// Any prefix whose outermost block starts with x.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// σ as an integer, x1 = most significant bit.
    pub encoding: u64,
    pub assignment: Assignment,
    pub dnf_value: bool,
    pub qbf_value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub total_assignments: u64,
    /// First mismatches in σ order, at most [`EquivalenceReport::MAX_LISTED`].
    pub mismatches: Vec<Mismatch>,
    pub mismatch_count: u64,
    pub passed: bool,
}

impl EquivalenceReport {
    pub const MAX_LISTED: usize = 32;

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} assignments checked, {} mismatches\n",
            if self.passed { "PASSED" } else { "FAILED" },
            self.total_assignments,
            self.mismatch_count
        );
        for m in &self.mismatches {
            let _ = writeln!(
                s,
                "  sigma={} {} dnf={} qbf={}",
                m.encoding,
                m.assignment,
                u8::from(m.dnf_value),
                u8::from(m.qbf_value)
            );
        }
        if self.mismatch_count > self.mismatches.len() as u64 {
            let _ = writeln!(s, "  ... truncated");
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("sigma,dnf,qbf\n");
        for m in &self.mismatches {
            let _ = writeln!(
                s,
                "{},{},{}",
                m.encoding,
                u8::from(m.dnf_value),
                u8::from(m.qbf_value)
            );
        }
        s
    }
}

/// Compares `psi(σ)` against `Q φ(σ)` for every σ over the x variables,
/// where psi's variable i is mapped to position i of φ's outermost block.
pub fn check_equivalence(
    psi: &DnfFormula,
    phi: &QbfInstance,
    mode: EquivalenceMode,
    config: &OracleConfig,
) -> Result<EquivalenceReport, OracleError> {
    let n = psi.num_vars() as usize;
    if n > config.max_vars || n > 63 {
        return Err(OracleError::TooManyVariables {
            vars: n,
            bound: config.max_vars.min(63),
        });
    }
    let x_vars: Vec<Var> = if n == 0 {
        vec![]
    } else {
        let first = phi
            .prefix()
            .first()
            .filter(|b| b.quantifier == Quantifier::Forall)
            .ok_or_else(|| OracleError::Mapping("outermost block is not universal".into()))?;
        if first.vars.len() < n {
            return Err(OracleError::Mapping(format!(
                "outermost block binds {} variables, the DNF has {n}",
                first.vars.len()
            )));
        }
        first.vars[..n].to_vec()
    };
    if mode == EquivalenceMode::ForallExists {
        let shape_ok = match phi.prefix() {
            [] => n == 0,
            [a] => a.vars.len() == n || (n == 0 && a.quantifier == Quantifier::Exists),
            [a, b] => {
                a.quantifier == Quantifier::Forall
                    && a.vars.len() == n
                    && b.quantifier == Quantifier::Exists
            }
            _ => false,
        };
        if !shape_ok {
            return Err(OracleError::Mapping("QBF is not of the form ∀x ∃y".into()));
        }
    }

    let psi_vars: Vec<Var> = (1..=psi.num_vars()).map(Var::new).collect();
    let masks = term_masks(psi);
    let game = Game::new(phi);
    let results: Vec<Option<Mismatch>> = (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let dnf_value = eval_masks(&masks, bits);
            let sigma = Assignment::from_bits(&x_vars, bits);
            let qbf_value = game.eval(&to_ints(&phi.matrix().apply(&sigma)));
            (dnf_value != qbf_value).then(|| Mismatch {
                encoding: bits,
                assignment: Assignment::from_bits(&psi_vars, bits),
                dnf_value,
                qbf_value,
            })
        })
        .collect();
    let all: Vec<Mismatch> = results.into_iter().flatten().collect();
    let mismatch_count = all.len() as u64;
    Ok(EquivalenceReport {
        total_assignments: 1u64 << n,
        mismatches: all
            .into_iter()
            .take(EquivalenceReport::MAX_LISTED)
            .collect(),
        mismatch_count,
        passed: mismatch_count == 0,
    })
}
