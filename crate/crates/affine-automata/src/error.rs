use thiserror::Error;

/// Well-formedness check outcome. A failing report lists every violation
/// found rather than stopping at the first one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn ok() -> Self {
        Self::default()
    }

    pub fn push(&mut self, problem: impl Into<String>) {
        self.problems.push(problem.into());
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.problems.extend(other.problems);
    }

    pub fn is_ok(&self) -> bool {
        self.problems.is_empty()
    }

    pub fn into_result(self) -> Result<(), Error> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Invalid(self))
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            for (i, p) in self.problems.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{p}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("affine vector entries sum to {got}, expected 1")]
    NotAffine { got: String },

    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),

    #[error("unknown state '{0}'")]
    UnknownState(String),

    #[error("index {index} out of bounds for dimension {dim}")]
    IndexOutOfBounds { index: usize, dim: usize },

    #[error("not a valid rational literal: '{0}'")]
    BadRational(String),

    #[error("machine is not well-formed:\n{0}")]
    Invalid(ValidationReport),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("restart machine never halts on this input (accept + reject probability is 0)")]
    Nonterminating,

    #[error("{0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
