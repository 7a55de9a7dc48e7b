use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("operands live in different variable contexts")]
    ContextMismatch,

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{0} is not reduced (its Jacobian ideal has a codimension one component)")]
    NotReduced(String),

    #[error("h(0) != 0: {0} does not define a divisor germ at the origin")]
    NotAtOrigin(String),

    #[error("not certified free: {0}")]
    NotFree(String),

    #[error("element is not homogeneous for the declared grading: {0}")]
    NotHomogeneous(String),

    #[error("monomial order is not admissible: {0}")]
    InadmissibleOrder(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("internal consistency violation: {0}")]
    Internal(String),
}

impl Error {
    /// Exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) => 3,
            Error::Internal(_) => 1,
            _ => 2,
        }
    }
}
