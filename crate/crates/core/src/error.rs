use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("variable {var} out of range (num_vars = {num_vars})")]
    VarOutOfRange { var: u32, num_vars: u32 },
    #[error("variable {0} appears twice in the quantifier prefix")]
    DuplicatePrefixVar(u32),
    #[error("variable {0} occurs in the matrix but is not quantified")]
    FreeVariable(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("integer {value} cannot be encoded: must be below {limit}")]
    OutOfRange { value: u64, limit: u128 },
    #[error("tuples have unequal sizes")]
    UnequalTuples,
    #[error("clause splitting needs arity d >= 3, got {0}")]
    ArityTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing 'p {0}' header")]
    MissingHeader(&'static str),
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: invalid token '{token}'")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: variable {var} out of range (declared {num_vars})")]
    VarOutOfRange {
        line: usize,
        var: u64,
        num_vars: u32,
    },
    #[error("line {line}: line not terminated by 0")]
    Unterminated { line: usize },
    #[error("line {line}: quantifier line after the first clause")]
    PrefixAfterClauses { line: usize },
    #[error("line {line}: variable {var} quantified twice")]
    DuplicatePrefixVar { line: usize, var: u32 },
    #[error("header declares {expected} {kind}, found {found}")]
    CountMismatch {
        kind: &'static str,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{vars} variables exceed the brute-force bound of {bound}")]
    TooManyVariables { vars: usize, bound: usize },
    #[error(
        "partial assignment sets {0}, which is preceded by an unassigned variable of another block"
    )]
    PrefixOrder(u32),
    #[error("partial assignment mentions unquantified variable {0}")]
    UnknownVariable(u32),
    #[error("variable mapping incomplete: {0}")]
    Mapping(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("prefix is not of the form ∀y ∃x")]
    NotForallExists,
    #[error("clause of arity {arity} exceeds d = {d}")]
    ArityViolation { arity: usize, d: usize },
    #[error("greedy search called on a group whose universal parts are only the empty clause")]
    TrivialGroup,
    #[error("threshold X(k, d) needs k >= 2, got k = {0}")]
    ThresholdK(usize),
    #[error("exhaustive core check over {0} existential variables refused")]
    CoreTooLarge(usize),
    #[error("solver invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("arity d must be at least 3, got {0}")]
    ArityTooSmall(usize),
    #[error("base threshold must be at least 4, got {0}")]
    ThresholdTooSmall(usize),
    #[error("{0} is not a perfect square")]
    NotPerfectSquare(u64),
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: u64, len: u64 },
    #[error("the source DNF has no terms")]
    EmptyDnf,
    #[error("recursive step does not shrink the DNF: n+m = {before}, n'+m' = {after}")]
    NoProgress { before: usize, after: usize },
    #[error("brute-force base case over {0} variables refused")]
    BaseCaseTooLarge(usize),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("width {width} exceeds the {vars} available variables")]
    WidthTooLarge { width: usize, vars: usize },
    #[error("{requested} distinct {kind} requested but only {available} exist")]
    NotEnoughDistinct {
        kind: &'static str,
        requested: usize,
        available: u128,
    },
    #[error("no existential variables to place in every clause")]
    NoExistentialVars,
    #[error(transparent)]
    Formula(#[from] FormulaError),
}
