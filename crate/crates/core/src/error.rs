use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("pattern repeats the entry {0}")]
    DuplicatePatternEntry(i64),
    #[error("pattern has {size} entries, more than the configured guard of {guard}")]
    PatternTooLarge { size: usize, guard: usize },
    #[error("affine permutations need n >= 2, got n = {0}")]
    SizeTooSmall(usize),
    #[error("base window has {got} entries but n = {expected}")]
    WindowLength { expected: usize, got: usize },
    #[error("base window sums to {got}, expected {expected}")]
    WindowSum { expected: i64, got: i64 },
    #[error("base window entries {0} and {1} have the same residue mod n")]
    ResidueClash(i64, i64),
    #[error("base window is not sorted increasingly")]
    UnsortedWindow,
    #[error("{what}: expected size {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("strand assignment {0:?} does not respect the pattern's inversions")]
    InvalidStrandAssignment(Vec<usize>),
    #[error("polyhedron has a nontrivial lineality space")]
    NotPointed,
    #[error("grading weight {0} is not positive")]
    NonPositiveWeight(i64),
    #[error("variable x{0} is unbounded over the requested region")]
    Unbounded(usize),
    #[error("denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("constant term {0} of the reduced denominator is not a unit")]
    NonUnitConstant(String),
    #[error("{0:?} is not a valid bias: partial sums must hit distinct nonzero residues")]
    InvalidBias(Vec<i64>),
    #[error("need at least {needed} coefficients, got {got}")]
    NotEnoughCoefficients { needed: usize, got: usize },
    #[error("fit verification failed at coefficient {index}: data has {expected}, fitted series has {fitted}")]
    FitVerification {
        index: usize,
        expected: String,
        fitted: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
}
