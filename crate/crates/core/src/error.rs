use thiserror::Error;

/// Errors raised by the library. Mathematical rejections and resource
/// exhaustion are kept apart so callers can tell "no" from "gave up".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("diagram T_{{{p},{q},{r}}} is not of finite type")]
    NonFiniteType { p: usize, q: usize, r: usize },
    #[error("Cartan matrix is singular (affine type)")]
    SingularCartan,
    #[error("malformed format: {0}")]
    MalformedFormat(String),
    #[error("format {0:?} is not Dynkin")]
    NonDynkinFormat([usize; 4]),
    #[error("format {0:?} has f0 > 1, which is not supported here")]
    UnsupportedF0([usize; 4]),
    #[error("unsupported format {0:?} for explicit charts")]
    UnsupportedFormat([usize; 4]),
    #[error("weight {0:?} is not dominant")]
    NonDominantWeight(Vec<i64>),
    #[error("partition has more than {0} rows")]
    TooManyRows(usize),
    #[error("unknown node label `{0}`")]
    UnknownNode(String),
    #[error("node {0} is not minuscule for this diagram")]
    NotMinuscule(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("polynomials live in different rings ({0} vs {1} variables)")]
    VariableMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("degree budget exceeded ({0} unknowns)")]
    DegreeBudgetExceeded(usize),
    #[error("resource budget exceeded: {0}")]
    ResourceBudgetExceeded(String),
    #[error("complex is not minimal (a differential has a unit entry)")]
    NonMinimalComplex,
    #[error("complex is not a resolution of a perfect ideal: {0}")]
    NotPerfect(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors that signal an exhausted budget rather than a
    /// mathematical answer.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::DegreeBudgetExceeded(_) | Error::ResourceBudgetExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
