//! File formats, the bundled semigroup corpus and verification reports on top
//! of [`kvlab_core`].

pub mod corpus;
pub mod io;
pub mod report;

use std::path::PathBuf;

pub use corpus::{CorpusEntry, CorpusNotes};
pub use report::{run_verification, run_verification_sweep, Instance, VerificationReport, Z0Choice};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no corpus entry named {0:?}")]
    UnknownCorpusEntry(String),
    #[error("{what} index {index} out of range ({count} available)")]
    IndexOutOfRange { what: &'static str, index: usize, count: usize },
    #[error("semigroup {0} has an empty center, no z0 is available")]
    EmptyCenter(String),
    #[error(transparent)]
    Core(#[from] kvlab_core::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
