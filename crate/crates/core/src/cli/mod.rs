//! Batch front end: instance documents in, deterministic reports out.

pub mod document;
pub mod jobs;
pub mod report;

use std::path::Path;

pub use document::{parse, Input, Loaded};
pub use jobs::{job_name, run, Command, Job};
pub use report::{emit, Format, Outcome, Report};

use crate::error::{Error, Result};

pub fn load(path: &Path) -> Result<Input> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse(&src).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}
