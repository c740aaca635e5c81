use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("frame is dependent: det(a) = {det}")]
    FrameDependent { det: String },
    #[error("metric is singular")]
    SingularMetric,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("inconsistent eta: {0}")]
    InconsistentEta(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error(transparent)]
    Symbolic(#[from] symcore::Error),
}
