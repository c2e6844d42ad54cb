use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::formula::{Clause, CnfMatrix, Lit, Var};

/// The existential literals of a clause. Ordered lexicographically by literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExistentialCore(Vec<Lit>);

impl ExistentialCore {
    pub fn of(clause: &Clause, existential: &BTreeSet<Var>) -> Self {
        ExistentialCore(
            clause
                .lits()
                .iter()
                .copied()
                .filter(|l| existential.contains(&l.var()))
                .collect(),
        )
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_clause(&self) -> Clause {
        Clause::new(self.0.iter().copied())
    }
}

/// All clauses sharing one core, and their universal remainders.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Group {
    /// Indices into the matrix the table was built from.
    pub clauses: Vec<usize>,
    /// Distinct universal parts, in first-occurrence order.
    pub parts: Vec<Clause>,
}

impl Group {
    /// Some clause of the group is purely existential.
    pub fn has_empty_part(&self) -> bool {
        self.parts.iter().any(Clause::is_empty)
    }

    /// The parts are exactly `{∅}`.
    pub fn is_purely_existential(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].is_empty()
    }

    /// Largest universal part, the group's contribution to the weight.
    pub fn width(&self) -> usize {
        self.parts.iter().map(Clause::arity).max().unwrap_or(0)
    }
}

/// Partition of a matrix by existential core.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupTable {
    groups: BTreeMap<ExistentialCore, Group>,
}

impl GroupTable {
    pub fn iter(&self) -> impl Iterator<Item = (&ExistentialCore, &Group)> {
        self.groups.iter()
    }

    pub fn get(&self, core: &ExistentialCore) -> Option<&Group> {
        self.groups.get(core)
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Σ over cores of the largest universal part.
    pub fn weight(&self) -> usize {
        self.groups.values().map(Group::width).sum()
    }
}

pub fn partition_groups(matrix: &CnfMatrix, existential: &BTreeSet<Var>) -> GroupTable {
    let mut groups: BTreeMap<ExistentialCore, Group> = BTreeMap::new();
    let mut seen: HashSet<(ExistentialCore, Clause)> = HashSet::new();
    for (i, clause) in matrix.clauses().iter().enumerate() {
        let core = ExistentialCore::of(clause, existential);
        let part = Clause::new(
            clause
                .lits()
                .iter()
                .copied()
                .filter(|l| !existential.contains(&l.var())),
        );
        let group = groups.entry(core.clone()).or_default();
        group.clauses.push(i);
        if seen.insert((core, part.clone())) {
            group.parts.push(part);
        }
    }
    GroupTable { groups }
}

/// ψ|x: every clause cut down to its core, duplicates removed (first
/// occurrence kept).
pub fn core_projection(matrix: &CnfMatrix, existential: &BTreeSet<Var>) -> CnfMatrix {
    let mut seen = HashSet::new();
    let clauses = matrix
        .clauses()
        .iter()
        .map(|c| ExistentialCore::of(c, existential).to_clause())
        .filter(|c| seen.insert(c.clone()))
        .collect();
    CnfMatrix::new(matrix.num_vars(), clauses).expect("projection keeps variables in range")
}

pub fn weight(matrix: &CnfMatrix, existential: &BTreeSet<Var>) -> usize {
    partition_groups(matrix, existential).weight()
}
