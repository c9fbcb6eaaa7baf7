use thiserror::Error;

use crate::mesh::MeshError;
use crate::quadrature::QuadError;

/// An argument outside the domain of a function.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{reason} (got {value})")]
pub struct DomainError {
    pub reason: &'static str,
    pub value: f64,
}

impl DomainError {
    pub fn new(reason: &'static str, value: f64) -> Self {
        DomainError { reason, value }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Domain(#[from] DomainError),

    #[error(transparent)]
    Quadrature(#[from] QuadError),

    #[error(transparent)]
    Mesh(#[from] MeshError),

    #[error("degenerate body: motion measure I0 is {0}")]
    DegenerateBody(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
