//! Spec files, suite dispatch and report emission for `cmverify`.

pub mod corpus;
pub mod report;
pub mod run;
pub mod specfile;

pub use report::{CheckEntry, ReportDocument, Solutions};
pub use run::{load_spec, run, spec_hash, Options, RunError, Suite};
pub use specfile::{parse_spec, SpecError, SpecFile};
