//! Quantified Boolean formulas with few existential variables.
//!
//! * [`solver`] decides `∀y ∃x φ` for d-CNF `φ` by branching on small hitting
//!   sets, with running time driven by the number of existential variables.
//! * [`reductions`] turns a DNF validity question into a QBF whose number of
//!   existential variables is logarithmic (four blocks) or `m^(1/(d-1))`
//!   (two blocks) in the DNF size.
//! * [`oracle`] is the brute-force ground truth both are tested against.

pub mod encode;
pub mod error;
pub mod format;
pub mod formula;
pub mod generate;
pub mod oracle;
pub mod reductions;
pub mod solver;

pub use error::{
    EncodeError, FormulaError, GenerateError, OracleError, ParseError, ReductionError, SolverError,
};
pub use formula::{
    Assignment, Clause, CnfMatrix, DnfFormula, Lit, QbfInstance, Quantifier, QuantifierBlock, Term,
    Var,
};
pub use oracle::{
    check_equivalence, eval_qbf, is_dnf_valid, EquivalenceMode, EquivalenceReport, OracleConfig,
};
pub use reductions::{reduce_dnf_to_4qbf, reduce_dnf_to_fe_dqbf, ReductionOutput};
pub use solver::{solve, Solution, SolverConfig, SolverStats};
