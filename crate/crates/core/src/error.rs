use thiserror::Error;

use crate::symbol::{AxiomId, ConceptName};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("axiom label `{0}` is already used by a different axiom")]
    DuplicateLabel(AxiomId),
    #[error("rule {rule} is not applicable to this state")]
    NotApplicable { rule: u8 },
    #[error("premises do not instantiate rule {rule} with the given conclusions")]
    MalformedInstance { rule: u8 },
    #[error("variable `{0}` is neither a normalized-item variable nor an original axiom")]
    UnknownVariable(AxiomId),
    #[error("`{0}` is not entailed, so there is nothing to repair")]
    GoalNotEntailed(String),
    #[error("concept name `{0}` is not interpreted")]
    UnknownName(String),
    #[error("{what} is {got}, above the configured bound of {bound}")]
    BoundExceeded {
        what: &'static str,
        got: usize,
        bound: usize,
    },
    #[error("malformed formula: {0}")]
    Formula(String),
    #[error("goal left-hand side must be a concept name, got `{0}`")]
    BadGoal(ConceptName),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
