//! Crate-wide error type for the computation layers above raw linear
//! algebra. The low-level modules keep their own focused errors
//! ([`crate::abelian::AbelianError`], [`crate::zcw::ZcwError`]); everything
//! that mixes complexes, coefficient systems, and cohomology reports through
//! this enum.

use crate::abelian::AbelianError;
use crate::zcw::ZcwError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EqError {
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Zcw(#[from] ZcwError),
    #[error("invalid coefficient system: {}", violations.join("; "))]
    InvalidSystem { violations: Vec<String> },
    #[error("matrix is not an involution: {0}")]
    NotInvolution(String),
    #[error("unknown space: {0}")]
    UnknownSpace(String),
    #[error("{0}")]
    Message(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
