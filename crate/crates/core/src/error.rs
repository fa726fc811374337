use thiserror::Error;

/// Coarse classification used for process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Domain,
    Invariant,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("characteristic 2 needs an explicit override for {0}")]
    CharacteristicTwo(&'static str),
    #[error("{0}")]
    Domain(String),
    #[error("function is not in Fil^{0}")]
    NotInFil(usize),
    #[error("not codim-2 generic; use the conjecture harness")]
    NotCodim2Generic,
    #[error("not good generators: circuit {circuit:?} has relation {relation:?}")]
    NotGoodGenerators { circuit: Vec<usize>, relation: Vec<String> },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// A JSON syntax or schema error, with serde's position suffix moved
    /// into the structured fields.
    pub fn json(e: serde_json::Error) -> Error {
        let msg = e.to_string();
        let msg = match msg.rfind(" at line ") {
            Some(i) => msg[..i].to_string(),
            None => msg,
        };
        Error::Parse { line: e.line(), column: e.column(), msg }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Usage(_) | Error::Parse { .. } | Error::LimitExceeded(_) | Error::CharacteristicTwo(_) => {
                ErrorKind::Usage
            }
            Error::Domain(_) | Error::NotInFil(_) | Error::NotCodim2Generic | Error::NotGoodGenerators { .. } => {
                ErrorKind::Domain
            }
            Error::Invariant(_) => ErrorKind::Invariant,
        }
    }

    /// Process exit code: 1 usage, 2 domain, 3 invariant.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            ErrorKind::Usage => 1,
            ErrorKind::Domain => 2,
            ErrorKind::Invariant => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
