use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol `{name}`{}", .pos.map(|p| format!(" at column {p}")).unwrap_or_default())]
    UnknownSymbol { name: String, pos: Option<usize> },

    #[error("division by an expression that is identically zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),
}
