use std::fmt;

use thiserror::Error;

/// A failed law together with the element ids that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn new(law: &'static str, witness: impl Into<Vec<usize>>) -> Self {
        Self {
            law,
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.law)?;
        if !self.witness.is_empty() {
            write!(f, " at")?;
            for w in &self.witness {
                write!(f, " {w}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of an exhaustive axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Valid,
    Invalid(Violation),
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationReport::Valid)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            ValidationReport::Valid => None,
            ValidationReport::Invalid(v) => Some(v),
        }
    }

    pub fn into_result(self) -> Result<(), Violation> {
        match self {
            ValidationReport::Valid => Ok(()),
            ValidationReport::Invalid(v) => Err(v),
        }
    }
}

impl From<Result<(), Violation>> for ValidationReport {
    fn from(r: Result<(), Violation>) -> Self {
        match r {
            Ok(()) => ValidationReport::Valid,
            Err(v) => ValidationReport::Invalid(v),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationReport::Valid => write!(f, "ok"),
            ValidationReport::Invalid(v) => write!(f, "violated {v}"),
        }
    }
}

/// Returns early from a checker with `Err(Violation)` when `cond` fails.
macro_rules! ensure_law {
    ($cond:expr, $law:expr, $($w:expr),* $(,)?) => {
        if !$cond {
            return Err($crate::error::Violation::new($law, vec![$($w),*]));
        }
    };
}
pub(crate) use ensure_law;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("{value} is not a unit mod {modulus}")]
    NotAUnit { value: i64, modulus: u64 },
    #[error("carrier of size {size} exceeds the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Violation),
    #[error("not a group: {0}")]
    NotAGroup(Violation),
    #[error("not a biquandle: {0}")]
    NotABiquandle(Violation),
    #[error("not a multiple conjugation biquandle: {0}")]
    NotAnMcb(Violation),
    #[error("not a G-family: {0}")]
    NotAGFamily(Violation),
    #[error("primitive condition violated: {0}")]
    NotPrimitive(Violation),
    #[error("elements {0} and {1} lie in different blocks")]
    BlockMismatch(usize, usize),
    #[error("triangle axiom violated: {0}")]
    TriangleAxiomViolated(Violation),
    #[error("closure violated: {0}")]
    ClosureViolated(Violation),
    #[error("map is not central: {0}")]
    NotCentral(Violation),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(Violation),
    #[error("not a right action: {0}")]
    NotAnAction(Violation),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(Violation),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semi-arc {id}: {problem}")]
    DanglingSemiArc { id: usize, problem: String },
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("semi-arc {0} has no color")]
    IncompleteAssignment(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
