//! Manifest-driven runner: parse a manifest, execute its tasks in order and
//! render a deterministic report.

pub mod manifest;
pub mod report;
pub mod run;

pub use manifest::{parse_manifest, print_manifest, Diagnostic, Manifest};
pub use report::{exit_code, render, Report, Status};
pub use run::{run_tasks, RunOptions};
