use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("malformed input: {0}")]
    Input(String),

    /// A precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// `|G|` is not invertible in the ground field.
    #[error("group order {order} is not invertible in characteristic {characteristic}")]
    GroupOrderNotInvertible { order: usize, characteristic: u64 },

    /// A construction that should always succeed on valid inputs did not.
    #[error("structural failure: {0}")]
    Structural(String),

    /// The ground field lacks the roots of unity a construction needs.
    #[error("field {field} lacks primitive roots of unity of order {order}")]
    MissingRootsOfUnity { field: String, order: usize },

    /// An enumeration hit its budget before becoming exhaustive.
    #[error("budget of {budget} exceeded: {what}")]
    BudgetExceeded { budget: u64, what: String },
}

pub type Result<T> = std::result::Result<T, Error>;
