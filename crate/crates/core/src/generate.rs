//! Seeded random instances.
//!
//! Every generator draws from ChaCha8 seeded with `seed_from_u64`, so a seed
//! names the same corpus on every platform. Each clause or term picks
//! `width` distinct variables uniformly and an independent uniform sign for
//! each.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenerateError;
use crate::formula::{Clause, CnfMatrix, DnfFormula, Lit, QbfInstance, Term, Var};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DnfSpec {
    pub vars: usize,
    pub terms: usize,
    pub width: usize,
    /// Reject repeated terms.
    pub distinct: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForallExistsSpec {
    /// Universal variables are `1..=universal`.
    pub universal: usize,
    /// Existential variables follow the universal ones.
    pub existential: usize,
    pub clauses: usize,
    pub arity: usize,
    pub distinct: bool,
    /// Redraw clauses that have no existential literal.
    pub require_existential: bool,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn random_lits<R: Rng + ?Sized>(rng: &mut R, vars: usize, width: usize) -> Vec<Lit> {
    sample(rng, vars, width)
        .into_iter()
        .map(|i| Lit::new(Var::new(i as u32 + 1), rng.random_bool(0.5)))
        .collect()
}

/// Draws `count` items with `draw`, skipping repeats when `distinct`.
fn collect<T, R, F>(rng: &mut R, count: usize, distinct: bool, mut draw: F) -> Vec<T>
where
    T: Clone + Eq + std::hash::Hash,
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> T,
{
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let item = draw(rng);
        if !distinct || seen.insert(item.clone()) {
            out.push(item);
        }
    }
    out
}

pub fn random_dnf<R: Rng + ?Sized>(
    spec: &DnfSpec,
    rng: &mut R,
) -> Result<DnfFormula, GenerateError> {
    if spec.width > spec.vars {
        return Err(GenerateError::WidthTooLarge {
            width: spec.width,
            vars: spec.vars,
        });
    }
    if spec.distinct {
        let available = binomial(spec.vars, spec.width) << spec.width;
        if spec.terms as u128 > available {
            return Err(GenerateError::NotEnoughDistinct {
                kind: "terms",
                requested: spec.terms,
                available,
            });
        }
    }
    let terms = collect(rng, spec.terms, spec.distinct, |rng| {
        Term::new(random_lits(rng, spec.vars, spec.width))
    });
    Ok(DnfFormula::new(spec.vars as u32, terms)?)
}

pub fn random_forall_exists<R: Rng + ?Sized>(
    spec: &ForallExistsSpec,
    rng: &mut R,
) -> Result<QbfInstance, GenerateError> {
    let total = spec.universal + spec.existential;
    if spec.arity > total {
        return Err(GenerateError::WidthTooLarge {
            width: spec.arity,
            vars: total,
        });
    }
    if spec.require_existential && spec.existential == 0 {
        return Err(GenerateError::NoExistentialVars);
    }
    if spec.distinct {
        let mut available = binomial(total, spec.arity);
        if spec.require_existential {
            available -= binomial(spec.universal, spec.arity);
        }
        available <<= spec.arity;
        if spec.clauses as u128 > available {
            return Err(GenerateError::NotEnoughDistinct {
                kind: "clauses",
                requested: spec.clauses,
                available,
            });
        }
    }
    let universal = spec.universal as u32;
    let clauses = collect(rng, spec.clauses, spec.distinct, |rng| loop {
        let clause = Clause::new(random_lits(rng, total, spec.arity));
        if !spec.require_existential || clause.vars().any(|v| v.index() > universal) {
            break clause;
        }
    });
    let u: Vec<Var> = (1..=universal).map(Var::new).collect();
    let e: Vec<Var> = (universal + 1..=total as u32).map(Var::new).collect();
    Ok(QbfInstance::forall_exists(
        u,
        e,
        CnfMatrix::new(total as u32, clauses)?,
    )?)
}
