use thiserror::Error;

/// Failures of exact signal operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The defining integral of the operation does not converge for these parameters.
    #[error("divergent: {0}")]
    Divergent(String),
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation exists mathematically but this representation cannot express it.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A mixture operation failed on one of its terms.
    #[error("term {index}: {source}")]
    Term {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("law `{law}`: no applicable input found after {attempts} attempts")]
    GenerationExhausted { law: String, attempts: usize },
}

impl Error {
    pub(crate) fn divergent(msg: impl Into<String>) -> Self {
        Error::Divergent(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn in_term(index: usize, source: Error) -> Self {
        Error::Term {
            index,
            source: Box::new(source),
        }
    }

    /// Strips `Term` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Term { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
