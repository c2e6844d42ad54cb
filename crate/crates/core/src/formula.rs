//! Propositional building blocks: variables, literals, clauses and terms,
//! CNF/DNF formulas, prenex QBF instances and partial assignments.
//!
//! Clauses and terms are stored as sorted, deduplicated literal vectors. A
//! clause may transiently contain both polarities of a variable (a tautology);
//! the solver's preprocessing removes those. The empty clause is the constant
//! False and the empty term is the constant True.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::FormulaError;

/// A propositional variable, 1-based as in QDIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// # Panics
    /// Panics if `index` is zero.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "variable indices are 1-based");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Lit {
        Lit::new(self, false)
    }

    pub fn negative(self) -> Lit {
        Lit::new(self, true)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A possibly negated variable. Ordered by variable, positive before negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    var: Var,
    negated: bool,
}

impl Lit {
    pub fn new(var: Var, negated: bool) -> Self {
        Lit { var, negated }
    }

    /// Builds a literal from a signed DIMACS integer.
    ///
    /// # Panics
    /// Panics on zero.
    pub fn from_dimacs(value: i64) -> Self {
        assert!(value != 0, "0 is a DIMACS terminator, not a literal");
        let var =
            Var::new(u32::try_from(value.unsigned_abs()).expect("variable index overflows u32"));
        Lit::new(var, value < 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var.0);
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    /// Truth value of the literal when its variable is set to `value`.
    pub fn eval(self, value: bool) -> bool {
        value != self.negated
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit::new(self.var, !self.negated)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬{}", self.var)
        } else {
            write!(f, "{}", self.var)
        }
    }
}

fn normalize(mut lits: Vec<Lit>) -> Vec<Lit> {
    lits.sort_unstable();
    lits.dedup();
    lits
}

fn has_complementary_pair(lits: &[Lit]) -> bool {
    // sorted: complementary literals are adjacent
    lits.windows(2).any(|w| w[0].var == w[1].var)
}

/// A disjunction of literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Self {
        Clause {
            lits: normalize(lits.into_iter().collect()),
        }
    }

    /// The empty clause, i.e. constant False.
    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn from_dimacs(values: &[i64]) -> Self {
        Clause::new(values.iter().map(|&v| Lit::from_dimacs(v)))
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn arity(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        has_complementary_pair(&self.lits)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var)
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    /// Truth value under a total assignment of the clause's variables.
    /// Unassigned variables count as False-making (the literal is not satisfied).
    pub fn is_satisfied_by(&self, sigma: &Assignment) -> bool {
        self.lits
            .iter()
            .any(|l| sigma.get(l.var).is_some_and(|v| l.eval(v)))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.lits, " ∨ ", "⊥")
    }
}

/// A conjunction of literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Term {
    lits: Vec<Lit>,
}

impl Term {
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Self {
        Term {
            lits: normalize(lits.into_iter().collect()),
        }
    }

    /// The empty term, i.e. constant True.
    pub fn empty() -> Self {
        Term::default()
    }

    pub fn from_dimacs(values: &[i64]) -> Self {
        Term::new(values.iter().map(|&v| Lit::from_dimacs(v)))
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn arity(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// A term containing x ∧ ¬x can never be true.
    pub fn is_contradictory(&self) -> bool {
        has_complementary_pair(&self.lits)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var)
    }

    /// True iff every literal is satisfied; unassigned variables falsify.
    pub fn is_satisfied_by(&self, sigma: &Assignment) -> bool {
        self.lits
            .iter()
            .all(|l| sigma.get(l.var).is_some_and(|v| l.eval(v)))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.lits, " ∧ ", "⊤")
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, lits: &[Lit], sep: &str, empty: &str) -> fmt::Result {
    if lits.is_empty() {
        return write!(f, "{empty}");
    }
    write!(f, "(")?;
    for (i, l) in lits.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        write!(f, "{l}")?;
    }
    write!(f, ")")
}

/// A conjunction of clauses over variables `1..=num_vars`. Duplicate clauses
/// are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CnfMatrix {
    clauses: Vec<Clause>,
    num_vars: u32,
}

impl CnfMatrix {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        check_range(num_vars, clauses.iter().flat_map(|c| c.vars()))?;
        Ok(CnfMatrix { clauses, num_vars })
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.clauses.iter().map(Clause::arity).max().unwrap_or(0)
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// ψ(σ): satisfied clauses disappear, falsified literals are dropped.
    pub fn apply(&self, sigma: &Assignment) -> CnfMatrix {
        let clauses = self
            .clauses
            .iter()
            .filter_map(|c| {
                let mut kept = Vec::with_capacity(c.arity());
                for &l in c.lits() {
                    match sigma.get(l.var) {
                        Some(v) if l.eval(v) => return None,
                        Some(_) => {}
                        None => kept.push(l),
                    }
                }
                Some(Clause { lits: kept })
            })
            .collect();
        CnfMatrix {
            clauses,
            num_vars: self.num_vars,
        }
    }

    /// Truth value under an assignment of every occurring variable.
    pub fn is_satisfied_by(&self, sigma: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(sigma))
    }

    pub fn occurring_vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    pub fn into_clauses(self) -> Vec<Clause> {
        self.clauses
    }
}

impl fmt::Display for CnfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A disjunction of terms over `1..=num_vars`; the position of a term is its
/// index `T_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DnfFormula {
    terms: Vec<Term>,
    num_vars: u32,
}

impl DnfFormula {
    pub fn new(num_vars: u32, terms: Vec<Term>) -> Result<Self, FormulaError> {
        check_range(num_vars, terms.iter().flat_map(|t| t.vars()))?;
        Ok(DnfFormula { terms, num_vars })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.terms.iter().map(Term::arity).max().unwrap_or(0)
    }

    /// Dual of [`CnfMatrix::apply`]: a falsified literal kills its term, a
    /// satisfied literal is dropped from it. An emptied term means True.
    pub fn apply(&self, sigma: &Assignment) -> DnfFormula {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let mut kept = Vec::with_capacity(t.arity());
                for &l in t.lits() {
                    match sigma.get(l.var) {
                        Some(v) if l.eval(v) => {}
                        Some(_) => return None,
                        None => kept.push(l),
                    }
                }
                Some(Term { lits: kept })
            })
            .collect();
        DnfFormula {
            terms,
            num_vars: self.num_vars,
        }
    }

    pub fn is_satisfied_by(&self, sigma: &Assignment) -> bool {
        self.terms.iter().any(|t| t.is_satisfied_by(sigma))
    }

    pub fn occurring_vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|t| t.vars()).collect()
    }

    /// `¬φ` by De Morgan: one term of negated literals per clause.
    pub fn negation_of(cnf: &CnfMatrix) -> DnfFormula {
        DnfFormula {
            terms: cnf
                .clauses()
                .iter()
                .map(|c| Term::new(c.lits().iter().map(|&l| !l)))
                .collect(),
            num_vars: cnf.num_vars(),
        }
    }
}

impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "⊥");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn check_range(num_vars: u32, vars: impl Iterator<Item = Var>) -> Result<(), FormulaError> {
    for v in vars {
        if v.index() > num_vars {
            return Err(FormulaError::VarOutOfRange {
                var: v.index(),
                num_vars,
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn flip(self) -> Self {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Forall => write!(f, "∀"),
            Quantifier::Exists => write!(f, "∃"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantifierBlock {
    pub quantifier: Quantifier,
    pub vars: Vec<Var>,
}

impl QuantifierBlock {
    pub fn new(quantifier: Quantifier, vars: Vec<Var>) -> Self {
        QuantifierBlock { quantifier, vars }
    }

    pub fn forall(vars: Vec<Var>) -> Self {
        Self::new(Quantifier::Forall, vars)
    }

    pub fn exists(vars: Vec<Var>) -> Self {
        Self::new(Quantifier::Exists, vars)
    }
}

/// Drops empty blocks and merges neighbours with the same quantifier.
pub fn normalize_prefix(blocks: Vec<QuantifierBlock>) -> Vec<QuantifierBlock> {
    let mut out: Vec<QuantifierBlock> = Vec::with_capacity(blocks.len());
    for block in blocks.into_iter().filter(|b| !b.vars.is_empty()) {
        match out.last_mut() {
            Some(last) if last.quantifier == block.quantifier => last.vars.extend(block.vars),
            _ => out.push(block),
        }
    }
    out
}

/// A closed prenex QBF: every matrix variable is bound by exactly one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbfInstance {
    prefix: Vec<QuantifierBlock>,
    matrix: CnfMatrix,
}

impl QbfInstance {
    /// Builds an instance, normalizing the prefix. Fails if a prefix variable
    /// repeats or exceeds `num_vars`, or if a matrix variable is unbound.
    pub fn new(prefix: Vec<QuantifierBlock>, matrix: CnfMatrix) -> Result<Self, FormulaError> {
        let prefix = normalize_prefix(prefix);
        let mut bound = BTreeSet::new();
        for v in prefix.iter().flat_map(|b| &b.vars) {
            if v.index() > matrix.num_vars() {
                return Err(FormulaError::VarOutOfRange {
                    var: v.index(),
                    num_vars: matrix.num_vars(),
                });
            }
            if !bound.insert(*v) {
                return Err(FormulaError::DuplicatePrefixVar(v.index()));
            }
        }
        if let Some(free) = matrix
            .occurring_vars()
            .into_iter()
            .find(|v| !bound.contains(v))
        {
            return Err(FormulaError::FreeVariable(free.index()));
        }
        Ok(QbfInstance { prefix, matrix })
    }

    /// `∀ universal ∃ existential. matrix`
    pub fn forall_exists(
        universal: Vec<Var>,
        existential: Vec<Var>,
        matrix: CnfMatrix,
    ) -> Result<Self, FormulaError> {
        Self::new(
            vec![
                QuantifierBlock::forall(universal),
                QuantifierBlock::exists(existential),
            ],
            matrix,
        )
    }

    pub fn prefix(&self) -> &[QuantifierBlock] {
        &self.prefix
    }

    pub fn matrix(&self) -> &CnfMatrix {
        &self.matrix
    }

    pub fn num_vars(&self) -> u32 {
        self.matrix.num_vars()
    }

    pub fn bound_vars(&self) -> usize {
        self.prefix.iter().map(|b| b.vars.len()).sum()
    }

    /// Quantifier of every bound variable.
    pub fn quantifier_of(&self) -> BTreeMap<Var, Quantifier> {
        self.prefix
            .iter()
            .flat_map(|b| b.vars.iter().map(move |&v| (v, b.quantifier)))
            .collect()
    }

    pub fn vars_with(&self, quantifier: Quantifier) -> Vec<Var> {
        self.prefix
            .iter()
            .filter(|b| b.quantifier == quantifier)
            .flat_map(|b| b.vars.iter().copied())
            .collect()
    }

    /// Splits a ∀∃ instance (at most one block of each, universal first)
    /// into (universal, existential) variable lists.
    pub fn as_forall_exists(&self) -> Option<(Vec<Var>, Vec<Var>)> {
        match self.prefix.as_slice() {
            [] => Some((vec![], vec![])),
            [b] if b.quantifier == Quantifier::Forall => Some((b.vars.clone(), vec![])),
            [b] => Some((vec![], b.vars.clone())),
            [a, b] if a.quantifier == Quantifier::Forall => Some((a.vars.clone(), b.vars.clone())),
            _ => None,
        }
    }

    pub fn into_parts(self) -> (Vec<QuantifierBlock>, CnfMatrix) {
        (self.prefix, self.matrix)
    }
}

impl fmt::Display for QbfInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.prefix {
            write!(f, "{}", b.quantifier)?;
            for v in &b.vars {
                write!(f, "{v} ")?;
            }
        }
        write!(f, "{}", self.matrix)
    }
}

/// A partial map from variables to truth values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    values: BTreeMap<Var, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns `vars` from the bits of `bits`, first variable = most
    /// significant bit.
    pub fn from_bits(vars: &[Var], bits: u64) -> Self {
        let n = vars.len();
        let values = vars
            .iter()
            .enumerate()
            .map(|(p, &v)| (v, (bits >> (n - 1 - p)) & 1 == 1))
            .collect();
        Assignment { values }
    }

    /// Inverse of [`Assignment::from_bits`]; unassigned variables read as 0.
    pub fn to_bits(&self, vars: &[Var]) -> u64 {
        vars.iter().fold(0u64, |acc, &v| {
            (acc << 1) | u64::from(self.get(v).unwrap_or(false))
        })
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values.insert(var, value);
    }

    pub fn with(mut self, var: Var, value: bool) -> Self {
        self.set(var, value);
        self
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.values.get(&var).copied()
    }

    pub fn contains(&self, var: Var) -> bool {
        self.values.contains_key(&var)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }

    /// Union of two assignments; `other` wins on overlap.
    pub fn union(&self, other: &Assignment) -> Assignment {
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|(&v, &b)| (v, b)));
        Assignment { values }
    }
}

impl FromIterator<(Var, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, bool)>>(iter: I) -> Self {
        Assignment {
            values: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, b)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}:{}", u8::from(b))?;
        }
        write!(f, "}}")
    }
}
